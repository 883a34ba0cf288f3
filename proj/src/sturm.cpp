#include "lyapcert/sturm.hpp"

#include <stdexcept>

namespace lyapcert {

namespace {

unsigned count_variations(const std::vector<int>& signs) {
  unsigned variations = 0;
  int previous = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++variations;
    previous = s;
  }
  return variations;
}

UnivariatePolynomial squarefree_part(const UnivariatePolynomial& q) {
  const auto g = gcd(q, q.derivative());
  return divmod(q, g).first.primitive();
}

Rational cauchy_bound(const UnivariatePolynomial& q) {
  const auto& c = q.coeffs();
  Rational bound(0);
  const Rational lead = c.back().abs();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const Rational ratio = c[i].abs() / lead;
    if (ratio > bound) bound = ratio;
  }
  return bound + Rational(2);
}

class RootIsolator {
 public:
  explicit RootIsolator(const UnivariatePolynomial& squarefree) : chain_(sturm_chain(squarefree)) {}

  unsigned roots_in(const Rational& lo, const Rational& hi) const {
    return sign_variations(chain_, lo) - sign_variations(chain_, hi);
  }

  void isolate(const Rational& lo, const Rational& hi, unsigned count, std::vector<RootInterval>& out) const {
    if (count == 0) return;
    if (count == 1) {
      out.push_back({lo, hi});
      return;
    }
    const Rational mid = (lo + hi) / Rational(2);
    const unsigned left = roots_in(lo, mid);
    isolate(lo, mid, left, out);
    isolate(mid, hi, count - left, out);
  }

  /// Shrinks `interval` from the left until its lower end exceeds `floor`.
  void raise_lower_end(RootInterval& interval, const Rational& floor) const {
    while (interval.lo <= floor) {
      const Rational mid = (interval.lo + interval.hi) / Rational(2);
      if (roots_in(interval.lo, mid) > 0) {
        interval.hi = mid;
      } else {
        interval.lo = mid;
      }
    }
  }

 private:
  std::vector<UnivariatePolynomial> chain_;
};

}  // namespace

std::vector<UnivariatePolynomial> sturm_chain(const UnivariatePolynomial& q) {
  if (q.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
  std::vector<UnivariatePolynomial> chain{q};
  auto d = q.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(std::move(d));
  while (true) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back((-r).primitive());
  }
  return chain;
}

unsigned sign_variations(const std::vector<UnivariatePolynomial>& chain, const Rational& t) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(p.sign_at(t));
  return count_variations(signs);
}

unsigned sign_variations_at_infinity(const std::vector<UnivariatePolynomial>& chain, bool positive) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(p.sign_at_infinity(positive));
  return count_variations(signs);
}

SturmReport sturm_report(const UnivariatePolynomial& q) {
  SturmReport report;
  report.chain = sturm_chain(q);
  report.real_root_count =
      sign_variations_at_infinity(report.chain, false) - sign_variations_at_infinity(report.chain, true);
  return report;
}

SturmReport sturm_report(const UnivariatePolynomial& q, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("Sturm interval requires lo < hi");
  SturmReport report;
  report.chain = sturm_chain(q);
  report.real_root_count = sign_variations(report.chain, lo) - sign_variations(report.chain, hi);
  report.interval = std::make_pair(lo, hi);
  return report;
}

bool recheck_sturm_report(const SturmReport& report) {
  const auto& chain = report.chain;
  if (chain.empty() || chain.front().is_zero()) return false;
  if (chain.size() == 1) {
    if (!chain[0].derivative().is_zero()) return false;
  } else {
    if (chain[1] != chain[0].derivative()) return false;
    for (std::size_t i = 2; i < chain.size(); ++i) {
      if (chain[i].is_zero()) return false;
      const auto expected = -divmod(chain[i - 2], chain[i - 1]).second;
      if (expected.is_zero() || expected.primitive() != chain[i].primitive()) return false;
      // primitive() only normalizes magnitude; both sides must agree in sign.
      if (expected.leading().sign() != chain[i].leading().sign()) return false;
    }
    if (!divmod(chain[chain.size() - 2], chain.back()).second.is_zero()) return false;
  }
  unsigned count = 0;
  if (report.interval) {
    const auto& [lo, hi] = *report.interval;
    if (!(lo < hi)) return false;
    count = sign_variations(chain, lo) - sign_variations(chain, hi);
  } else {
    count = sign_variations_at_infinity(chain, false) - sign_variations_at_infinity(chain, true);
  }
  return count == report.real_root_count;
}

PositivityDecision sturm_positivity(const UnivariatePolynomial& q, PositivityMode mode) {
  PositivityDecision decision;
  if (q.is_zero()) {
    if (mode == PositivityMode::positive) {
      throw std::invalid_argument("positivity query on the zero polynomial");
    }
    decision.holds = true;
    return decision;
  }
  decision.query = sturm_report(q);
  if (mode == PositivityMode::positive) {
    decision.holds = decision.query.real_root_count == 0 && q.leading().sign() > 0;
    return decision;
  }
  UnivariatePolynomial odd(std::vector<Rational>{Rational(1)});
  const auto factors = squarefree_decomposition(q);
  for (std::size_t i = 0; i < factors.size(); i += 2) odd = odd * factors[i];
  decision.odd_part = sturm_report(odd);
  decision.holds = decision.odd_part->real_root_count == 0 && q.leading().sign() > 0;
  return decision;
}

std::vector<RootInterval> isolate_real_roots(const UnivariatePolynomial& q) {
  if (q.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
  std::vector<RootInterval> out;
  if (*q.degree() == 0) return out;
  const auto s = squarefree_part(q);
  const RootIsolator isolator(s);
  const Rational bound = cauchy_bound(s);
  isolator.isolate(-bound, bound, isolator.roots_in(-bound, bound), out);
  for (std::size_t i = 0; i + 1 < out.size(); ++i) isolator.raise_lower_end(out[i + 1], out[i].hi);
  return out;
}

std::vector<Rational> sign_sample_points(const UnivariatePolynomial& q) {
  const auto roots = isolate_real_roots(q);
  if (roots.empty()) return {Rational(0)};
  // Points are fed back into exact computations, so keep their height low:
  // for each root gap take the simplest rational over the span of the
  // neighbouring isolating intervals, accepted only if exactly the right
  // number of roots lies below it. The fallback stays between the intervals.
  const auto chain = sturm_chain(q);
  const unsigned at_minus_inf = sign_variations_at_infinity(chain, false);
  const auto below = [&](const Rational& t) { return at_minus_inf - sign_variations(chain, t); };
  const auto pick = [&](const Rational& candidate, const Rational& fallback, std::size_t want) {
    return q.sign_at(candidate) != 0 && below(candidate) == want ? candidate : fallback;
  };

  const std::size_t n = roots.size();
  std::vector<Rational> points;
  const Rational& h0 = roots.front().hi;
  points.push_back(pick(h0.sign() >= 0 ? Rational(0) : h0.floor(), roots.front().lo.floor(), 0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Root i is <= hi_i < lo_{i+1} < root i+1, and hi_i itself may be a root.
    const Rational& a = roots[i].hi;
    const Rational& b = roots[i + 1].lo;
    Rational safe = simplest_in(a, b);
    if (safe == a) safe = simplest_in((a + b) / Rational(2), b);
    points.push_back(pick(simplest_in(roots[i].lo, roots[i + 1].hi), safe, i + 1));
  }
  const Rational& ln = roots.back().lo;
  points.push_back(pick(ln.sign() <= 0 ? Rational(0) : ln.ceil(), roots.back().hi.floor() + Rational(1), n));
  return points;
}

std::optional<Rational> find_negative_point(const UnivariatePolynomial& q) {
  if (q.is_zero()) return std::nullopt;
  for (const auto& t : sign_sample_points(q)) {
    if (q.sign_at(t) < 0) return t;
  }
  return std::nullopt;
}

}  // namespace lyapcert
