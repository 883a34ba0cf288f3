#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lyapcert/rational_function.hpp"
#include "lyapcert/vector_field.hpp"

namespace lyapcert {

/// A planar field stored as base + correction, with f = base + correction.
///
/// For the degree-7 system, `base` is the part tangent to the level sets of
/// W = (x^4 + y^4) / (x^2 + y^2) and `correction` the part that descends
/// them. The nonexistence sweep works on the lowest-order part of `base`.
struct DecomposedField {
  std::string name;
  VectorField base;
  VectorField correction;

  VectorField full() const { return base + correction; }
};

struct FieldDegrees {
  std::optional<unsigned> base;
  std::optional<unsigned> correction;
  std::optional<unsigned> full;
};

FieldDegrees field_degree(const DecomposedField& field);

/// The numerators of grad W for W = (x^4 + y^4) / (x^2 + y^2):
/// a = 2x(x^4 + 2x^2y^2 - y^4), b = 2y(-x^4 + 2x^2y^2 + y^4).
std::array<Polynomial, 2> paper_gradient_numerators();

/// W = (x^4 + y^4) / (x^2 + y^2).
RationalFunction paper_lyapunov();

/// base = (-b, a), correction = -(x^2 + y^2)(a, b).
DecomposedField paper_system();

enum class BacciottiRosierSign {
  /// Second summand's y-component is 2 lambda y (x^2+y^2) + 2y(2x^2+y^2),
  /// i.e. proportional to grad V_lambda. Gallery default.
  gradient_consistent,
  /// The minus sign as typeset in the source formula.
  as_printed,
};

struct BacciottiRosier {
  DecomposedField field;
  /// (x^2 + y^2)^q (2x^2 + y^2)^p for lambda = p/q in lowest terms.
  Polynomial candidate;
};

/// Throws std::invalid_argument for negative lambda.
BacciottiRosier bacciotti_rosier(const Rational& lambda,
                                 BacciottiRosierSign sign = BacciottiRosierSign::gradient_consistent);

/// dx/dt = -x + xy, dy/dt = -y.
DecomposedField simple_system();

/// dx/dt = -x, dy/dt = -y.
DecomposedField linear_system();

enum class CertificateScope { rational_global, global_homogeneous, local };

struct SystemCatalogEntry {
  DecomposedField field;
  /// Certificate that must pass certify.
  std::optional<RationalFunction> known_certificate;
  /// Candidate whose verdict is reported but not asserted (may fail).
  std::optional<Polynomial> reported_candidate;
  CertificateScope scope = CertificateScope::global_homogeneous;
  std::string provenance;
  std::string description;
};

/// Read-only gallery: paper, simple, linear, bacciotti-rosier-{0,1,1/2},
/// bacciotti-rosier-printed-{0,1}.
const std::vector<SystemCatalogEntry>& system_catalog();

/// nullptr when the name is unknown.
const SystemCatalogEntry* find_system(const std::string& name);

}  // namespace lyapcert
