#include "lyapcert/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace lyapcert {

namespace {

bool is_decimal_integer(std::string_view text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_decimal_integer(num_text)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  std::string num(num_text);
  if (num[0] == '+') num.erase(0, 1);
  mpz_class numerator(num, 10);
  mpz_class denominator(1);
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!is_decimal_integer(den_text) || den_text[0] == '-' || den_text[0] == '+') {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    denominator = mpz_class(std::string(den_text), 10);
    if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  }
  return Rational(mpq_class(numerator, denominator));
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(mpq_class(1) / value_);
}

Rational Rational::pow(unsigned exponent) const {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

}  // namespace lyapcert

namespace lyapcert {

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

Rational simplest_in(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_in: empty interval");
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_in(-hi, -lo);
  // 0 < lo <= hi from here on.
  const Rational n = lo.floor();
  if (n == lo || lo.ceil() <= hi) return lo.ceil();
  // Both ends lie in (n, n + 1): continue on the reciprocals of the fractional parts.
  return n + simplest_in((hi - n).inverse(), (lo - n).inverse()).inverse();
}

}  // namespace lyapcert
