#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lyapcert/gaussian_rational.hpp"
#include "lyapcert/positivity.hpp"
#include "lyapcert/systems.hpp"

namespace lyapcert {

/// Projective direction in canonical form: (1, t) or (0, 1).
struct Direction {
  Rational x;
  Rational y;

  /// Throws std::invalid_argument for (0, 0).
  static Direction through(const Rational& x, const Rational& y);
  static Direction slope(const Rational& t) { return {Rational(1), t}; }
  static Direction vertical() { return {Rational(0), Rational(1)}; }

  bool is_vertical() const { return x.is_zero(); }
  /// "t" for (1, t), "inf" for (0, 1).
  std::string to_string() const;
  /// Inverse of to_string. Throws std::invalid_argument.
  static Direction parse(const std::string& text);

  friend bool operator==(const Direction&, const Direction&) = default;
};

/// Projectively distinct directions in insertion order.
class SampleSet {
 public:
  SampleSet() = default;
  /// Throws std::invalid_argument on a projective duplicate.
  explicit SampleSet(std::vector<Direction> directions);

  /// false (and no change) when the direction is already present.
  bool add(const Direction& d);
  bool contains(const Direction& d) const;
  std::size_t size() const { return directions_.size(); }
  const std::vector<Direction>& directions() const { return directions_; }

 private:
  std::vector<Direction> directions_;
};

/// Slopes 0, inf, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 3/2, ... by increasing
/// Stern-Brocot depth.
SampleSet seed_directions(std::size_t count);

enum class RowSense { ge, le, eq };
enum class RowTag { positivity, decrease, normalization, margin };

std::string to_string(RowSense s);
std::string to_string(RowTag t);

struct LpRow {
  std::vector<Rational> coefficients;
  RowSense sense = RowSense::ge;
  Rational rhs;
  RowTag tag = RowTag::positivity;
  /// Index into the sample set for positivity and decrease rows.
  std::optional<std::size_t> direction;

  friend bool operator==(const LpRow&, const LpRow&) = default;
};

/// Free variables, one per column.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<LpRow> rows;

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;
};

/// One multiplier per row, read in >= orientation: a >= row contributes
/// y (a.x >= b), a <= row contributes y (-a.x >= -b), an equality row any
/// sign. Valid when inequality multipliers are nonnegative and the weighted
/// sum is 0 >= positive. Normalized so that the positive constant is 1.
struct FarkasCertificate {
  std::vector<Rational> multipliers;

  friend bool operator==(const FarkasCertificate&, const FarkasCertificate&) = default;
};

struct LpSolution {
  bool feasible = false;
  std::vector<Rational> point;
  std::optional<FarkasCertificate> certificate;
};

/// Feasibility only. Runs the least-index simplex on the Farkas alternative
/// system {sum y_i a_i = 0, sum y_i b_i = 1, y_ineq >= 0}: a solution is the
/// certificate; otherwise the phase-I duals give a primal feasible point.
LpSolution simplex_solve(const LinearProgram& lp);

struct LpOptimum {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  std::vector<Rational> point;
  Rational value;
};

/// max objective.x over the LP, solved exactly through its dual.
LpOptimum maximize(const LinearProgram& lp, const std::vector<Rational>& objective);

/// Throws std::invalid_argument when the multiplier count differs from the
/// row count or a row has the wrong length.
bool verify_farkas(const LinearProgram& lp, const FarkasCertificate& cert);

/// Lowest-degree homogeneous part of a field (componentwise at the smallest
/// degree present in either component).
VectorField lowest_order_part(const VectorField& field);

/// Coefficient c_i multiplies x^(k-i) y^i.
Polynomial form_from_coefficients(unsigned k, const std::vector<Rational>& c);

/// Rows per direction, in sample order: p(s) >= 0, then <grad p, f0>(s) <= 0;
/// last row: sum_s p(s) = 1. Throws std::invalid_argument when k is odd or
/// zero, or when there are fewer than k + 1 directions.
LinearProgram build_lp(unsigned k, const SampleSet& samples, const VectorField& f0);

enum class NonexistenceOutcome { infeasible_certified, candidate_survived, iteration_cap_reached };

std::string to_string(NonexistenceOutcome o);

struct Cut {
  Direction direction;
  /// positivity or decrease: which global condition the candidate broke.
  RowTag violated = RowTag::positivity;
  Polynomial candidate;
};

struct NonexistenceReport {
  unsigned degree = 0;
  NonexistenceOutcome outcome = NonexistenceOutcome::iteration_cap_reached;
  SampleSet samples;
  /// LP of the final round (the one the certificate refers to).
  LinearProgram lp;
  std::optional<FarkasCertificate> certificate;
  /// Survivor, primitive integer coefficients, with its global evidence.
  std::optional<Polynomial> candidate;
  std::optional<FormSignDecision> candidate_nonnegative;
  std::optional<FormSignDecision> candidate_decrease;
  std::vector<Cut> cuts;
  unsigned iterations = 0;
};

/// Cutting-plane loop at one even degree k against the lowest-order part of
/// f0. Throws std::invalid_argument when k is odd or < 2, or when the decrease
/// form <grad p, f0> would have odd degree.
NonexistenceReport cutting_plane(const VectorField& f0, unsigned k, unsigned iteration_cap = 200);

/// Every even k in 2..k_max, degrees run in parallel. Throws
/// std::invalid_argument when k_max < 2.
std::vector<NonexistenceReport> cutting_plane_sweep(const DecomposedField& field, unsigned k_max,
                                                    unsigned iteration_cap = 200);
std::vector<NonexistenceReport> cutting_plane_sweep_serial(const DecomposedField& field, unsigned k_max,
                                                           unsigned iteration_cap = 200);

/// Re-verifies an infeasible_certified report: the LP must be rebuilt
/// identically from the stored samples and the certificate must pass
/// verify_farkas. Other outcomes: stored evidence for survivors is replayed.
bool recheck(const NonexistenceReport& report, const VectorField& f0);

struct IdentityWitness {
  GaussianRational left;
  GaussianRational right;
};

/// Evaluates (x^2+y^2)^k0 p^2 and c^2 (x^4+y^4)^k0 at (i, 1). Throws
/// std::invalid_argument when c = 0 or p is not homogeneous of degree k0.
IdentityWitness final_identity_check(const Polynomial& p, unsigned k0, const Rational& c);

}  // namespace lyapcert
