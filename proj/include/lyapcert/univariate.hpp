#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lyapcert/rational.hpp"

namespace lyapcert {

/// Dense univariate polynomial, coefficients low to high, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient vector.
class UnivariatePolynomial {
 public:
  UnivariatePolynomial() = default;
  explicit UnivariatePolynomial(std::vector<Rational> coeffs);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<unsigned> degree() const;
  /// Zero for the zero polynomial.
  Rational leading() const;

  Rational evaluate(const Rational& t) const;
  int sign_at(const Rational& t) const { return evaluate(t).sign(); }
  /// Sign as t -> +inf (positive) or t -> -inf (negative).
  int sign_at_infinity(bool positive) const;

  UnivariatePolynomial derivative() const;
  /// Divides by the positive rational that makes the coefficients coprime
  /// integers. Signs are preserved.
  UnivariatePolynomial primitive() const;
  UnivariatePolynomial monic() const;

  friend UnivariatePolynomial operator+(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  friend UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b);
  UnivariatePolynomial operator-() const;
  friend bool operator==(const UnivariatePolynomial&, const UnivariatePolynomial&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division; throws std::domain_error when `divisor` is zero.
std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& dividend,
                                                             const UnivariatePolynomial& divisor);
/// Monic gcd; gcd(0, 0) = 0.
UnivariatePolynomial gcd(const UnivariatePolynomial& a, const UnivariatePolynomial& b);

/// Yun square-free decomposition: q = lc * prod_i factors[i]^(i+1), every
/// factor monic, square-free, pairwise coprime. Empty for constants.
std::vector<UnivariatePolynomial> squarefree_decomposition(const UnivariatePolynomial& q);

}  // namespace lyapcert
