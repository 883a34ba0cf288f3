#pragma once

#include <array>
#include <string>

#include "lyapcert/polynomial.hpp"
#include "lyapcert/vector_field.hpp"

namespace lyapcert {

/// num / den with den != 0. Not reduced; equality is cross-multiplication.
class RationalFunction {
 public:
  /// Throws std::invalid_argument when `den` is the zero polynomial.
  RationalFunction(Polynomial num, Polynomial den = Polynomial(1));

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_polynomial() const { return den_ == Polynomial(1); }
  bool is_zero() const { return num_.is_zero(); }

  /// Throws std::domain_error when the denominator vanishes at the point.
  Rational evaluate(const Rational& x, const Rational& y) const;
  /// Returns 0 where the denominator vanishes (W(0,0) = 0 convention).
  double evaluate(double x, double y) const;

  friend RationalFunction operator+(const RationalFunction& lhs, const RationalFunction& rhs);
  friend RationalFunction operator-(const RationalFunction& lhs, const RationalFunction& rhs);
  friend bool operator==(const RationalFunction& lhs, const RationalFunction& rhs) {
    return lhs.num_ * rhs.den_ == rhs.num_ * lhs.den_;
  }

  /// "(num) / (den)", or just the numerator text when den == 1.
  std::string to_string() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Quotient rule with the shared denominator den^2:
/// dW/dx = (num_x den - num den_x) / den^2, likewise for y.
std::array<RationalFunction, 2> gradient(const RationalFunction& w);

/// <grad W, field> with denominator den^2.
RationalFunction lie_derivative(const RationalFunction& w, const VectorField& field);

}  // namespace lyapcert
