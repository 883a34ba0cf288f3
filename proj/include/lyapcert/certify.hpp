#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lyapcert/positivity.hpp"
#include "lyapcert/rational_function.hpp"
#include "lyapcert/systems.hpp"

namespace lyapcert {

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

/// A polynomial identity: the check holds when `residual` is the zero polynomial.
struct IdentityEvidence {
  std::string label;
  Polynomial residual;
  /// Informational identities are recorded but never gate the verdict.
  bool gating = true;
};

/// An exact sign decision for `form`, replayable through its Sturm chains.
struct SignEvidence {
  std::string label;
  Polynomial form;
  FormSignDecision decision;
};

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::fail;
  std::string detail;
  std::vector<IdentityEvidence> identities;
  std::vector<SignEvidence> signs;
};

struct CertificateReport {
  std::vector<CheckResult> checks;
  /// pass iff every check passes; inconclusive if none fails but some is
  /// inconclusive; fail otherwise.
  Verdict overall = Verdict::fail;
};

Verdict combine(const std::vector<CheckResult>& checks);

/// Five exact checks for a rational certificate W = num/den against a split
/// field f = f0 + f1. Writing grad W = (a, b) / den^2:
///   positivity       num and den homogeneous positive definite
///   tangency         <grad W, f0> = 0
///   decrease         a*fx + b*fy + (a^2 + b^2) den = 0, for f and for f1
///   no-common-zero   a^2 + b^2 positive definite
///   radial           2 num - den (x^2 + y^2) nonnegative
/// Throws std::invalid_argument when den is not a homogeneous positive
/// definite form.
CertificateReport verify_rational_lyapunov(const RationalFunction& w, const DecomposedField& field);

enum class PolynomialScope { global_homogeneous, local };

/// Polynomial certificate V for the full field.
///
/// global_homogeneous: V and -<grad V, f> must be homogeneous (else throws
/// std::invalid_argument); both are decided exactly.
/// local: V(0,0) must be 0 (else throws); the lowest-order homogeneous parts
/// of V and -<grad V, f> are decided exactly.
///
/// A form that is semidefinite but not definite yields inconclusive; one that
/// takes a negative value yields fail.
CertificateReport verify_polynomial_lyapunov(const Polynomial& v, const VectorField& field, PolynomialScope scope);

/// Re-verifies a report from its stored evidence: gating residuals must be
/// zero, every stored Sturm chain must be valid with its recorded root
/// count, and each verdict must match what the evidence supports.
bool recheck(const CertificateReport& report);

struct Counterexample {
  Rational x;
  Rational y;
  Rational value;
  Rational derivative;
  /// "positivity" or "decrease".
  std::string violated;
};

/// First sample (by index) where V <= 0 or <grad V, f> >= 0. The origin is
/// skipped. Exact evaluation throughout.
std::optional<Counterexample> falsify_by_sampling(const RationalFunction& v, const VectorField& field,
                                                  const std::vector<std::pair<Rational, Rational>>& samples);

/// Same result as falsify_by_sampling, samples evaluated in parallel.
std::optional<Counterexample> falsify_by_sampling_parallel(const RationalFunction& v, const VectorField& field,
                                                           const std::vector<std::pair<Rational, Rational>>& samples);

}  // namespace lyapcert
