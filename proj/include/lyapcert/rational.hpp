#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>

namespace lyapcert {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every operation canonicalizes its
/// result, so two Rationals compare equal iff their numerator/denominator
/// pairs are identical.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)

  template <std::unsigned_integral T>
  Rational(T value) : value_(static_cast<unsigned long>(value)) {}  // NOLINT

  /// Throws std::domain_error when `den` is zero.
  Rational(long num, long den);

  explicit Rational(mpq_class value);

  /// Parses "p" or "p/q" with an optional leading sign. Throws
  /// std::invalid_argument on malformed text or a zero denominator.
  static Rational parse(std::string_view text);

  const mpq_class& get() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  Rational abs() const;
  /// Throws std::domain_error on zero.
  Rational inverse() const;
  Rational pow(unsigned exponent) const;
  /// Largest integer <= this.
  Rational floor() const;
  /// Smallest integer >= this.
  Rational ceil() const;

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  double to_double() const { return value_.get_d(); }
  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

/// The rational of smallest denominator in [lo, hi], and among those the
/// one of smallest absolute value (the Stern-Brocot simplest element).
/// Throws std::invalid_argument when lo > hi.
Rational simplest_in(const Rational& lo, const Rational& hi);

}  // namespace lyapcert
