#pragma once

#include <optional>
#include <string>
#include <utility>

#include "lyapcert/polynomial.hpp"
#include "lyapcert/sturm.hpp"

namespace lyapcert {

/// Exact sign decision for a homogeneous bivariate form p of degree k.
///
/// For even k, p(x, y) = x^k p(1, y/x) when x != 0, so the sign of p on
/// R^2 \ {0} is decided by the univariate p(1, t) on R together with the
/// y-axis value p(0, 1). A nonzero odd-degree form satisfies p(-v) = -p(v)
/// and is therefore never nonnegative.
struct FormSignDecision {
  bool holds = false;
  PositivityMode mode = PositivityMode::positive;
  std::optional<unsigned> degree;
  /// Decision for p(1, t); absent for the zero form and for odd degree.
  std::optional<PositivityDecision> dehomogenized;
  Rational y_axis_value;
  std::string reason;
};

/// p(x, y) > 0 for all (x, y) != (0, 0). Throws std::invalid_argument when p
/// is not homogeneous.
FormSignDecision homogeneous_positive_definite(const Polynomial& p);

/// p(x, y) >= 0 everywhere. Throws std::invalid_argument when p is not
/// homogeneous.
FormSignDecision homogeneous_nonnegative(const Polynomial& p);

/// Replays a stored decision for `p`: the recorded chains must be valid Sturm
/// chains of p(1, t) (and of its odd part), and `holds` must follow from the
/// recorded root counts, leading sign and y-axis value.
bool recheck_form_sign(const Polynomial& p, const FormSignDecision& decision);

/// A point (x, y) with p(x, y) < 0 for a homogeneous p, returned as (0, 1)
/// or (1, t) with rational t when such a direction exists in that chart.
std::optional<std::pair<Rational, Rational>> find_negative_direction(const Polynomial& p);

}  // namespace lyapcert
