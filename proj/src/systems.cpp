#include "lyapcert/systems.hpp"

#include <stdexcept>

namespace lyapcert {

namespace {

const Polynomial& X() {
  static const Polynomial x = Polynomial::x();
  return x;
}

const Polynomial& Y() {
  static const Polynomial y = Polynomial::y();
  return y;
}

Polynomial r2() { return X() * X() + Y() * Y(); }

SystemCatalogEntry bacciotti_entry(const Rational& lambda, BacciottiRosierSign sign, const std::string& name) {
  auto br = bacciotti_rosier(lambda, sign);
  br.field.name = name;
  SystemCatalogEntry entry;
  entry.field = std::move(br.field);
  if (sign == BacciottiRosierSign::gradient_consistent) {
    entry.known_certificate = RationalFunction(std::move(br.candidate));
  } else {
    entry.reported_candidate = std::move(br.candidate);
  }
  entry.scope = CertificateScope::global_homogeneous;
  entry.provenance = "Bacciotti-Rosier family";
  entry.description = "Bacciotti-Rosier field, lambda = " + lambda.to_string() +
                      (sign == BacciottiRosierSign::as_printed ? " (sign as printed)" : "");
  return entry;
}

std::vector<SystemCatalogEntry> build_catalog() {
  std::vector<SystemCatalogEntry> out;

  SystemCatalogEntry paper;
  paper.field = paper_system();
  paper.known_certificate = paper_lyapunov();
  paper.scope = CertificateScope::rational_global;
  paper.provenance = "degree-7 counterexample with rational Lyapunov function W";
  paper.description = "degree-7 field with rational coefficients, GAS, no local polynomial Lyapunov function";
  out.push_back(std::move(paper));

  SystemCatalogEntry simple;
  simple.field = simple_system();
  simple.known_certificate = RationalFunction(r2());
  simple.scope = CertificateScope::local;
  simple.provenance = "quadratic field without a global polynomial Lyapunov function";
  simple.description = "GAS quadratic field; x^2 + y^2 certifies local stability only";
  out.push_back(std::move(simple));

  SystemCatalogEntry linear;
  linear.field = linear_system();
  linear.known_certificate = RationalFunction(r2());
  linear.scope = CertificateScope::global_homogeneous;
  linear.provenance = "linear contraction (control system)";
  linear.description = "stable linear field with quadratic Lyapunov function";
  out.push_back(std::move(linear));

  out.push_back(bacciotti_entry(Rational(0), BacciottiRosierSign::gradient_consistent, "bacciotti-rosier-0"));
  out.push_back(bacciotti_entry(Rational(1), BacciottiRosierSign::gradient_consistent, "bacciotti-rosier-1"));
  out.push_back(bacciotti_entry(Rational(1, 2), BacciottiRosierSign::gradient_consistent, "bacciotti-rosier-1/2"));
  out.push_back(bacciotti_entry(Rational(0), BacciottiRosierSign::as_printed, "bacciotti-rosier-printed-0"));
  out.push_back(bacciotti_entry(Rational(1), BacciottiRosierSign::as_printed, "bacciotti-rosier-printed-1"));
  return out;
}

}  // namespace

FieldDegrees field_degree(const DecomposedField& field) {
  return {field.base.degree(), field.correction.degree(), field.full().degree()};
}

std::array<Polynomial, 2> paper_gradient_numerators() {
  const Polynomial x2 = X() * X();
  const Polynomial y2 = Y() * Y();
  const Polynomial x4 = x2 * x2;
  const Polynomial y4 = y2 * y2;
  const Polynomial a = Polynomial(2) * X() * (x4 + Polynomial(2) * x2 * y2 - y4);
  const Polynomial b = Polynomial(2) * Y() * (-x4 + Polynomial(2) * x2 * y2 + y4);
  return {a, b};
}

RationalFunction paper_lyapunov() {
  const Polynomial x2 = X() * X();
  const Polynomial y2 = Y() * Y();
  return RationalFunction(x2 * x2 + y2 * y2, x2 + y2);
}

DecomposedField paper_system() {
  const auto [a, b] = paper_gradient_numerators();
  const Polynomial r = r2();
  return {"paper", VectorField{-b, a}, VectorField{-(r * a), -(r * b)}};
}

BacciottiRosier bacciotti_rosier(const Rational& lambda, BacciottiRosierSign sign) {
  if (lambda.sign() < 0) throw std::invalid_argument("Bacciotti-Rosier requires lambda >= 0");
  const Polynomial r = r2();
  const Polynomial g = Polynomial(2) * X() * X() + Y() * Y();
  const Polynomial lam(lambda);
  // G is proportional to the gradient of V_lambda = r^2 g^lambda.
  const Polynomial gx = Polynomial(4) * lam * X() * r + Polynomial(2) * X() * g;
  const Polynomial gy_rot = Polynomial(2) * lam * Y() * r + Polynomial(2) * Y() * g;
  const Polynomial gy_desc = sign == BacciottiRosierSign::gradient_consistent
                                 ? gy_rot
                                 : Polynomial(2) * lam * Y() * r - Polynomial(2) * Y() * g;

  BacciottiRosier out;
  out.field.name = "bacciotti-rosier";
  out.field.base = VectorField{-gy_rot, gx};
  out.field.correction = VectorField{-(r * gx), -(r * gy_desc)};

  const auto p = static_cast<unsigned>(lambda.numerator().get_ui());
  const auto q = static_cast<unsigned>(lambda.denominator().get_ui());
  out.candidate = r.pow(q) * g.pow(p);
  return out;
}

DecomposedField simple_system() {
  return {"simple", VectorField{-X() + X() * Y(), -Y()}, VectorField{}};
}

DecomposedField linear_system() { return {"linear", VectorField{-X(), -Y()}, VectorField{}}; }

const std::vector<SystemCatalogEntry>& system_catalog() {
  static const std::vector<SystemCatalogEntry> catalog = build_catalog();
  return catalog;
}

const SystemCatalogEntry* find_system(const std::string& name) {
  for (const auto& entry : system_catalog()) {
    if (entry.field.name == name) return &entry;
  }
  return nullptr;
}

}  // namespace lyapcert
