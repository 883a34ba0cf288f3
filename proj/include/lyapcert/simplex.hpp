#pragma once

#include <vector>

#include "lyapcert/rational.hpp"

namespace lyapcert {

/// Exact two-phase tableau simplex for min c.z s.t. A z = b, z >= 0, using
/// Bland's least-index rule for both the entering and the leaving variable,
/// so it always terminates and is fully deterministic.
///
/// Built for wide, short systems (few rows, many columns): every row gets its
/// own artificial column, and those columns are kept in the tableau so the
/// row duals can be read off at the end.
struct StandardFormResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  /// Primal solution z (optimal only).
  std::vector<Rational> z;
  Rational value;
  /// Row duals y with y.A_j <= c_j for every column, in the orientation of
  /// the input rows. For an infeasible system these are the phase-I duals,
  /// which satisfy y.A_j <= 0 for every column and y.b > 0.
  std::vector<Rational> duals;
  unsigned pivots = 0;
};

/// A is row-major with rows of equal length. Throws std::invalid_argument on
/// shape mismatch.
StandardFormResult solve_standard_form(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                       const std::vector<Rational>& c);

}  // namespace lyapcert
