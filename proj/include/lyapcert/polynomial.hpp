#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lyapcert/rational.hpp"

namespace lyapcert {

/// Exponent pair of the monomial x^x_exp * y^y_exp.
struct Monomial {
  unsigned x_exp = 0;
  unsigned y_exp = 0;

  unsigned degree() const { return x_exp + y_exp; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse bivariate polynomial in x, y with exact rational coefficients.
///
/// Canonical form: no stored coefficient is zero, so structural equality of
/// the term maps is polynomial equality. The zero polynomial has no degree;
/// degree() returns an empty optional for it rather than a sentinel integer.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(implicit)
  template <std::integral T>
  Polynomial(T constant) : Polynomial(Rational(constant)) {}  // NOLINT(implicit)

  static Polynomial x();
  static Polynomial y();
  static Polynomial term(const Rational& coefficient, unsigned x_exp, unsigned y_exp);
  /// Drops zero coefficients.
  static Polynomial from_terms(Terms terms);

  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::optional<unsigned> degree() const;
  /// Lowest total degree among stored terms.
  std::optional<unsigned> lowest_degree() const;
  /// True for the zero polynomial as well.
  bool is_homogeneous() const;
  Rational coefficient(unsigned x_exp, unsigned y_exp) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& scalar);
  Polynomial operator-() const;
  Polynomial pow(unsigned exponent) const;

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(Polynomial lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Polynomial operator*(const Rational& lhs, Polynomial rhs) { return rhs *= lhs; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Exact evaluation over any commutative ring built from Rationals
  /// (Rational, GaussianRational).
  template <class Ring>
  Ring evaluate(const Ring& x_value, const Ring& y_value) const;

  double evaluate(double x_value, double y_value) const;

  /// Text format: `c*x^i*y^j` terms joined by + / -, graded by descending
  /// total degree, then descending x exponent. Zero prints as "0".
  std::string to_string() const;

 private:
  Terms terms_;
};

/// Reference product: plain double loop over both term maps.
Polynomial multiply_serial(const Polynomial& lhs, const Polynomial& rhs);
/// OpenMP product: per-thread partial maps over slices of `lhs`, merged in
/// a fixed order. Bit-identical to multiply_serial.
Polynomial multiply_parallel(const Polynomial& lhs, const Polynomial& rhs);

/// (dp/dx, dp/dy)
std::array<Polynomial, 2> gradient(const Polynomial& p);

/// Splits p into homogeneous parts keyed by total degree. Zero maps to {}.
std::map<unsigned, Polynomial> homogeneous_parts(const Polynomial& p);

/// Substitutes x = 1, y = t and returns coefficients of t^0..t^d.
std::vector<Rational> dehomogenize(const Polynomial& p);

template <class Ring>
Ring Polynomial::evaluate(const Ring& x_value, const Ring& y_value) const {
  if (terms_.empty()) return Ring(Rational(0));
  unsigned max_x = 0;
  unsigned max_y = 0;
  for (const auto& [m, c] : terms_) {
    max_x = std::max(max_x, m.x_exp);
    max_y = std::max(max_y, m.y_exp);
  }
  std::vector<Ring> x_pow(max_x + 1, Ring(Rational(1)));
  std::vector<Ring> y_pow(max_y + 1, Ring(Rational(1)));
  for (unsigned i = 1; i <= max_x; ++i) x_pow[i] = x_pow[i - 1] * x_value;
  for (unsigned j = 1; j <= max_y; ++j) y_pow[j] = y_pow[j - 1] * y_value;
  Ring sum(Rational(0));
  for (const auto& [m, c] : terms_) {
    sum += Ring(c) * x_pow[m.x_exp] * y_pow[m.y_exp];
  }
  return sum;
}

}  // namespace lyapcert
