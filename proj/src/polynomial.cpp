#include "lyapcert/polynomial.hpp"

#include <omp.h>

#include <cmath>
#include <iterator>
#include <utility>

namespace lyapcert {

namespace {

void accumulate(Polynomial::Terms& into, const Monomial& m, const Rational& c) {
  auto [it, inserted] = into.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void drop_zeros(Polynomial::Terms& terms) {
  std::erase_if(terms, [](const auto& entry) { return entry.second.is_zero(); });
}

// Below this many coefficient products the thread fan-out costs more than it
// saves.
constexpr std::size_t kParallelProductThreshold = 4096;

}  // namespace

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{0, 0}, constant);
}

Polynomial Polynomial::x() { return term(Rational(1), 1, 0); }
Polynomial Polynomial::y() { return term(Rational(1), 0, 1); }

Polynomial Polynomial::term(const Rational& coefficient, unsigned x_exp, unsigned y_exp) {
  Polynomial p;
  if (!coefficient.is_zero()) p.terms_.emplace(Monomial{x_exp, y_exp}, coefficient);
  return p;
}

Polynomial Polynomial::from_terms(Terms terms) {
  drop_zeros(terms);
  Polynomial p;
  p.terms_ = std::move(terms);
  return p;
}

std::optional<unsigned> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<unsigned> Polynomial::lowest_degree() const {
  if (terms_.empty()) return std::nullopt;
  unsigned d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
  return d;
}

bool Polynomial::is_homogeneous() const { return degree() == lowest_degree(); }

Rational Polynomial::coefficient(unsigned x_exp, unsigned y_exp) const {
  const auto it = terms_.find(Monomial{x_exp, y_exp});
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [m, c] : rhs.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(Rational(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.term_count() * rhs.term_count() >= kParallelProductThreshold) {
    return multiply_parallel(lhs, rhs);
  }
  return multiply_serial(lhs, rhs);
}

Polynomial multiply_serial(const Polynomial& lhs, const Polynomial& rhs) {
  Polynomial::Terms out;
  for (const auto& [ml, cl] : lhs.terms()) {
    for (const auto& [mr, cr] : rhs.terms()) {
      accumulate(out, Monomial{ml.x_exp + mr.x_exp, ml.y_exp + mr.y_exp}, cl * cr);
    }
  }
  return Polynomial::from_terms(std::move(out));
}

Polynomial multiply_parallel(const Polynomial& lhs, const Polynomial& rhs) {
  const std::vector<std::pair<Monomial, Rational>> left(lhs.terms().begin(), lhs.terms().end());
  const std::vector<std::pair<Monomial, Rational>> right(rhs.terms().begin(), rhs.terms().end());
  const auto n = static_cast<long>(left.size());

  const int threads = omp_get_max_threads();
  std::vector<Polynomial::Terms> partial(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) {
      const auto& [ml, cl] = left[static_cast<std::size_t>(i)];
      for (const auto& [mr, cr] : right) {
        accumulate(local, Monomial{ml.x_exp + mr.x_exp, ml.y_exp + mr.y_exp}, cl * cr);
      }
    }
  }

  Polynomial::Terms out;
  for (auto& local : partial) {
    for (auto& [m, c] : local) accumulate(out, m, c);
  }
  return Polynomial::from_terms(std::move(out));
}

double Polynomial::evaluate(double x_value, double y_value) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.to_double();
    for (unsigned i = 0; i < m.x_exp; ++i) term *= x_value;
    for (unsigned j = 0; j < m.y_exp; ++j) term *= y_value;
    sum += term;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() > b.first.degree();
    return a.first.x_exp > b.first.x_exp;
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    out += c.abs().to_string();
    if (m.x_exp > 0) out += m.x_exp == 1 ? "*x" : "*x^" + std::to_string(m.x_exp);
    if (m.y_exp > 0) out += m.y_exp == 1 ? "*y" : "*y^" + std::to_string(m.y_exp);
  }
  return out;
}

std::array<Polynomial, 2> gradient(const Polynomial& p) {
  Polynomial::Terms dx;
  Polynomial::Terms dy;
  for (const auto& [m, c] : p.terms()) {
    if (m.x_exp > 0) dx.emplace(Monomial{m.x_exp - 1, m.y_exp}, c * Rational(m.x_exp));
    if (m.y_exp > 0) dy.emplace(Monomial{m.x_exp, m.y_exp - 1}, c * Rational(m.y_exp));
  }
  return {Polynomial::from_terms(std::move(dx)), Polynomial::from_terms(std::move(dy))};
}

std::map<unsigned, Polynomial> homogeneous_parts(const Polynomial& p) {
  std::map<unsigned, Polynomial::Terms> grouped;
  for (const auto& [m, c] : p.terms()) grouped[m.degree()].emplace(m, c);
  std::map<unsigned, Polynomial> out;
  for (auto& [d, terms] : grouped) out.emplace(d, Polynomial::from_terms(std::move(terms)));
  return out;
}

std::vector<Rational> dehomogenize(const Polynomial& p) {
  std::vector<Rational> coeffs;
  for (const auto& [m, c] : p.terms()) {
    if (coeffs.size() <= m.y_exp) coeffs.resize(m.y_exp + 1);
    coeffs[m.y_exp] += c;
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  return coeffs;
}

}  // namespace lyapcert
