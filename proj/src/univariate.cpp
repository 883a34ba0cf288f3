#include "lyapcert/univariate.hpp"

#include <stdexcept>

namespace lyapcert {

UnivariatePolynomial::UnivariatePolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

void UnivariatePolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::optional<unsigned> UnivariatePolynomial::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return static_cast<unsigned>(coeffs_.size() - 1);
}

Rational UnivariatePolynomial::leading() const {
  return coeffs_.empty() ? Rational(0) : coeffs_.back();
}

Rational UnivariatePolynomial::evaluate(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

int UnivariatePolynomial::sign_at_infinity(bool positive) const {
  if (coeffs_.empty()) return 0;
  const int s = coeffs_.back().sign();
  if (positive || coeffs_.size() % 2 == 1) return s;
  return -s;
}

UnivariatePolynomial UnivariatePolynomial::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * Rational(i));
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::primitive() const {
  if (coeffs_.empty()) return {};
  mpz_class num_gcd(0);
  mpz_class den_lcm(1);
  for (const auto& c : coeffs_) {
    if (c.is_zero()) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get().get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get().get_den_mpz_t());
  }
  const Rational scale(mpq_class(den_lcm, num_gcd));
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c * scale);
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::monic() const {
  if (coeffs_.empty()) return {};
  const Rational inv = coeffs_.back().inverse();
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c * inv);
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator+(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial operator-(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  return a + (-b);
}

UnivariatePolynomial operator*(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UnivariatePolynomial(std::move(out));
}

UnivariatePolynomial UnivariatePolynomial::operator-() const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(-c);
  return UnivariatePolynomial(std::move(out));
}

std::string UnivariatePolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const auto& c = coeffs_[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    out += c.abs().to_string();
    if (i > 0) out += i == 1 ? "*t" : "*t^" + std::to_string(i);
  }
  return out;
}

std::pair<UnivariatePolynomial, UnivariatePolynomial> divmod(const UnivariatePolynomial& dividend,
                                                             const UnivariatePolynomial& divisor) {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = dividend.coeffs();
  const auto& d = divisor.coeffs();
  if (rem.size() < d.size()) return {UnivariatePolynomial(), dividend};
  std::vector<Rational> quot(rem.size() - d.size() + 1);
  const Rational lead_inv = d.back().inverse();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = rem[k + d.size() - 1] * lead_inv;
    quot[k] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] -= q * d[j];
  }
  rem.resize(d.size() - 1);
  return {UnivariatePolynomial(std::move(quot)), UnivariatePolynomial(std::move(rem))};
}

UnivariatePolynomial gcd(const UnivariatePolynomial& a, const UnivariatePolynomial& b) {
  UnivariatePolynomial u = a;
  UnivariatePolynomial v = b;
  while (!v.is_zero()) {
    auto r = divmod(u, v).second.primitive();
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

std::vector<UnivariatePolynomial> squarefree_decomposition(const UnivariatePolynomial& q) {
  if (!q.degree() || *q.degree() == 0) return {};
  const UnivariatePolynomial f = q.monic();
  const UnivariatePolynomial df = f.derivative();
  UnivariatePolynomial a = gcd(f, df);
  UnivariatePolynomial b = divmod(f, a).first;
  UnivariatePolynomial c = divmod(df, a).first;
  UnivariatePolynomial d = c - b.derivative();
  std::vector<UnivariatePolynomial> factors;
  while (b.degree() && *b.degree() > 0) {
    UnivariatePolynomial factor = gcd(b, d);
    b = divmod(b, factor).first;
    c = divmod(d, factor).first;
    d = c - b.derivative();
    factors.push_back(std::move(factor));
  }
  // factors[i] is 1 when no root has multiplicity exactly i + 1.
  return factors;
}

}  // namespace lyapcert
