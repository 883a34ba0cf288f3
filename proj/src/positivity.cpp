#include "lyapcert/positivity.hpp"

#include <stdexcept>

namespace lyapcert {

namespace {

FormSignDecision decide(const Polynomial& p, PositivityMode mode) {
  if (!p.is_homogeneous()) throw std::invalid_argument("form sign decision requires a homogeneous polynomial");
  FormSignDecision out;
  out.mode = mode;
  out.degree = p.degree();
  if (p.is_zero()) {
    out.holds = mode == PositivityMode::nonnegative;
    out.reason = "zero polynomial";
    return out;
  }
  out.y_axis_value = p.evaluate(Rational(0), Rational(1));
  if (*out.degree % 2 == 1) {
    out.holds = false;
    out.reason = "odd degree: p(-v) = -p(v)";
    return out;
  }
  out.dehomogenized = sturm_positivity(UnivariatePolynomial(dehomogenize(p)), mode);
  const bool axis_ok = mode == PositivityMode::positive ? out.y_axis_value.sign() > 0 : out.y_axis_value.sign() >= 0;
  out.holds = out.dehomogenized->holds && axis_ok;
  if (out.holds) {
    out.reason = mode == PositivityMode::positive ? "p(1,t) > 0 on R and p(0,1) > 0"
                                                  : "p(1,t) >= 0 on R and p(0,1) >= 0";
  } else if (!axis_ok) {
    out.reason = "sign violated on the y-axis";
  } else {
    out.reason = mode == PositivityMode::positive ? "p(1,t) has a real root or negative values"
                                                  : "p(1,t) takes negative values";
  }
  return out;
}

}  // namespace

FormSignDecision homogeneous_positive_definite(const Polynomial& p) {
  return decide(p, PositivityMode::positive);
}

FormSignDecision homogeneous_nonnegative(const Polynomial& p) {
  return decide(p, PositivityMode::nonnegative);
}

bool recheck_form_sign(const Polynomial& p, const FormSignDecision& decision) {
  if (!p.is_homogeneous() || decision.degree != p.degree()) return false;
  const bool positive = decision.mode == PositivityMode::positive;
  if (p.is_zero()) return decision.holds == !positive;
  if (decision.y_axis_value != p.evaluate(Rational(0), Rational(1))) return false;
  if (*decision.degree % 2 == 1) return !decision.holds;
  if (!decision.dehomogenized) return false;

  const auto& d = *decision.dehomogenized;
  const UnivariatePolynomial q(dehomogenize(p));
  if (d.query.chain.empty() || d.query.chain.front() != q || d.query.interval) return false;
  if (!recheck_sturm_report(d.query)) return false;

  const int axis = decision.y_axis_value.sign();
  bool core = false;
  if (positive) {
    core = d.query.real_root_count == 0 && q.leading().sign() > 0;
  } else {
    if (!d.odd_part || d.odd_part->interval || !recheck_sturm_report(*d.odd_part)) return false;
    // The odd part must be the product of the odd-multiplicity factors of q.
    UnivariatePolynomial odd(std::vector<Rational>{Rational(1)});
    const auto factors = squarefree_decomposition(q);
    for (std::size_t i = 0; i < factors.size(); i += 2) odd = odd * factors[i];
    if (odd.monic() != d.odd_part->chain.front().monic()) return false;
    core = d.odd_part->real_root_count == 0 && q.leading().sign() > 0;
  }
  const bool axis_ok = positive ? axis > 0 : axis >= 0;
  return core == d.holds && (core && axis_ok) == decision.holds;
}

std::optional<std::pair<Rational, Rational>> find_negative_direction(const Polynomial& p) {
  if (p.is_zero()) return std::nullopt;
  if (p.evaluate(Rational(0), Rational(1)).sign() < 0) return std::make_pair(Rational(0), Rational(1));
  const auto t = find_negative_point(UnivariatePolynomial(dehomogenize(p)));
  if (!t) return std::nullopt;
  return std::make_pair(Rational(1), *t);
}

}  // namespace lyapcert
