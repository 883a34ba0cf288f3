#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lyapcert/univariate.hpp"

namespace lyapcert {

/// Sturm chain of a univariate query polynomial plus its root count.
///
/// chain[0] is the query, chain[1] its derivative, and every later entry is
/// the negated remainder of the two before it, rescaled by a positive
/// rational to keep coefficients integral and coprime. Positive rescaling
/// leaves every sign variation count unchanged.
struct SturmReport {
  std::vector<UnivariatePolynomial> chain;
  /// Distinct real roots in `interval` (lo, hi], or on the whole line.
  unsigned real_root_count = 0;
  std::optional<std::pair<Rational, Rational>> interval;
};

/// Throws std::invalid_argument for the zero polynomial.
std::vector<UnivariatePolynomial> sturm_chain(const UnivariatePolynomial& q);

unsigned sign_variations(const std::vector<UnivariatePolynomial>& chain, const Rational& t);
unsigned sign_variations_at_infinity(const std::vector<UnivariatePolynomial>& chain, bool positive);

/// Distinct real roots on the whole line.
SturmReport sturm_report(const UnivariatePolynomial& q);
/// Distinct real roots in (lo, hi]. Requires lo < hi.
SturmReport sturm_report(const UnivariatePolynomial& q, const Rational& lo, const Rational& hi);

/// Re-derives the root count from the stored chain and checks every link
/// (derivative, negated-remainder up to positive scale, terminal zero
/// remainder). Used to re-verify stored evidence.
bool recheck_sturm_report(const SturmReport& report);

enum class PositivityMode { nonnegative, positive };

struct PositivityDecision {
  bool holds = false;
  /// Chain of the query itself.
  SturmReport query;
  /// Nonnegative mode only: chain of the product of the odd-multiplicity
  /// square-free factors. q >= 0 on R iff this has no real roots and the
  /// leading coefficient of q is positive.
  std::optional<SturmReport> odd_part;
};

/// Decides q > 0 (positive) or q >= 0 (nonnegative) on all of R.
/// Throws std::invalid_argument for the zero polynomial in positive mode.
PositivityDecision sturm_positivity(const UnivariatePolynomial& q, PositivityMode mode);

/// Half-open isolating interval (lo, hi] containing exactly one real root.
struct RootInterval {
  Rational lo;
  Rational hi;
};

/// Isolating intervals for the distinct real roots of q, sorted and
/// pairwise disjoint. Throws std::invalid_argument for the zero polynomial.
std::vector<RootInterval> isolate_real_roots(const UnivariatePolynomial& q);

/// Rational sample points, one strictly inside each maximal root-free open
/// interval of q: below all roots, between consecutive roots, above all
/// roots. Each is the simplest rational available between the isolating
/// intervals, so its height stays small.
std::vector<Rational> sign_sample_points(const UnivariatePolynomial& q);

/// First sample point (in increasing order) where q < 0, if any.
std::optional<Rational> find_negative_point(const UnivariatePolynomial& q);

}  // namespace lyapcert
