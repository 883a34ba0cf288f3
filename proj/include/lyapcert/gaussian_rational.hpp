#pragma once

#include <string>
#include <utility>

#include "lyapcert/rational.hpp"

namespace lyapcert {

/// Complex number re + im*i with exact rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real) : re(std::move(real)) {}  // NOLINT(implicit)
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  GaussianRational conjugate() const { return {re, -im}; }
  /// re^2 + im^2
  Rational norm() const { return re * re + im * im; }

  GaussianRational& operator+=(const GaussianRational& rhs) {
    re += rhs.re;
    im += rhs.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& rhs) {
    re -= rhs.re;
    im -= rhs.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& rhs) {
    Rational real = re * rhs.re - im * rhs.im;
    im = re * rhs.im + im * rhs.re;
    re = std::move(real);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational l, const GaussianRational& r) { return l += r; }
  friend GaussianRational operator-(GaussianRational l, const GaussianRational& r) { return l -= r; }
  friend GaussianRational operator*(GaussianRational l, const GaussianRational& r) { return l *= r; }
  GaussianRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  std::string to_string() const {
    if (im.is_zero()) return re.to_string();
    return re.to_string() + (im.sign() < 0 ? " - " : " + ") + im.abs().to_string() + "*i";
  }
};

}  // namespace lyapcert
