#include "lyapcert/certify.hpp"

#include <algorithm>
#include <limits>
#include <map>
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

IdentityEvidence identity(std::string label, Polynomial residual, bool gating = true) {
  return {std::move(label), std::move(residual), gating};
}

Polynomial lowest_part(const Polynomial& p) {
  const auto low = p.lowest_degree();
  if (!low) return p;
  return homogeneous_parts(p).at(*low);
}

// Sign decisions need forms; anything else is recorded as a failing residual.
void add_sign(CheckResult& check, const std::string& label, const Polynomial& form, PositivityMode mode) {
  if (!form.is_homogeneous()) {
    check.identities.push_back(identity(label + " is not homogeneous; excess over its lowest part",
                                        form - lowest_part(form)));
    return;
  }
  check.signs.push_back({label, form,
                         mode == PositivityMode::positive ? homogeneous_positive_definite(form)
                                                          : homogeneous_nonnegative(form)});
}

enum class FormStatus { satisfied, semidefinite, violated };

// Status of one labelled form. The first evidence entry for a label states
// the requirement; a later nonnegative entry may downgrade a failed
// definiteness requirement to semidefinite.
std::map<std::string, FormStatus> form_statuses(const CheckResult& check) {
  std::map<std::string, PositivityMode> required;
  std::map<std::string, FormStatus> status;
  for (const auto& s : check.signs) {
    if (!required.contains(s.label)) {
      required[s.label] = s.decision.mode;
      status[s.label] = FormStatus::violated;
    }
    if (!s.decision.holds) continue;
    if (s.decision.mode == required[s.label]) {
      status[s.label] = FormStatus::satisfied;
    } else if (status[s.label] == FormStatus::violated) {
      status[s.label] = FormStatus::semidefinite;
    }
  }
  return status;
}

Verdict derived_verdict(const CheckResult& check) {
  if (check.identities.empty() && check.signs.empty()) return Verdict::fail;
  for (const auto& id : check.identities) {
    if (id.gating && !id.residual.is_zero()) return Verdict::fail;
  }
  bool semidefinite = false;
  for (const auto& [label, status] : form_statuses(check)) {
    if (status == FormStatus::violated) return Verdict::fail;
    semidefinite |= status == FormStatus::semidefinite;
  }
  return semidefinite ? Verdict::inconclusive : Verdict::pass;
}

void finish(CheckResult& check, const std::string& pass_detail) {
  check.verdict = derived_verdict(check);
  if (check.verdict == Verdict::pass) {
    check.detail = pass_detail;
    return;
  }
  for (const auto& id : check.identities) {
    if (id.gating && !id.residual.is_zero()) {
      check.detail = id.label + " residual is nonzero: " + id.residual.to_string();
      return;
    }
  }
  for (const auto& [label, status] : form_statuses(check)) {
    if (status == FormStatus::violated) {
      check.detail = label + " fails its sign requirement";
      return;
    }
  }
  check.detail = "semidefinite but not definite; cannot decide without an invariance argument";
}

// Definiteness with a nonnegativity fallback so that semidefinite forms are
// reported as inconclusive rather than failed.
void require_definite(CheckResult& check, const std::string& label, const Polynomial& form) {
  const auto before = check.signs.size();
  add_sign(check, label, form, PositivityMode::positive);
  if (check.signs.size() > before && !check.signs.back().decision.holds) {
    add_sign(check, label, form, PositivityMode::nonnegative);
  }
}

CertificateReport make_report(std::vector<CheckResult> checks) {
  CertificateReport report;
  report.checks = std::move(checks);
  report.overall = combine(report.checks);
  return report;
}

std::optional<Counterexample> examine(const RationalFunction& v, const RationalFunction& vdot,
                                      const std::pair<Rational, Rational>& s) {
  const auto& [x, y] = s;
  if (x.is_zero() && y.is_zero()) return std::nullopt;
  Counterexample c{x, y, v.evaluate(x, y), vdot.evaluate(x, y), ""};
  if (c.value.sign() <= 0) {
    c.violated = "positivity";
  } else if (c.derivative.sign() >= 0) {
    c.violated = "decrease";
  } else {
    return std::nullopt;
  }
  return c;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "fail";
}

Verdict combine(const std::vector<CheckResult>& checks) {
  if (checks.empty()) return Verdict::fail;
  Verdict out = Verdict::pass;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) return Verdict::fail;
    if (c.verdict == Verdict::inconclusive) out = Verdict::inconclusive;
  }
  return out;
}

CertificateReport verify_rational_lyapunov(const RationalFunction& w, const DecomposedField& field) {
  const Polynomial& num = w.num();
  const Polynomial& den = w.den();
  if (!den.is_homogeneous() || !homogeneous_positive_definite(den).holds) {
    throw std::invalid_argument("certificate denominator must be a positive definite form");
  }

  const auto num_grad = gradient(num);
  const auto den_grad = gradient(den);
  const Polynomial a = num_grad[0] * den - num * den_grad[0];
  const Polynomial b = num_grad[1] * den - num * den_grad[1];
  const Polynomial grad_sq = a * a + b * b;
  const auto pairing = [&](const VectorField& f) { return a * f.dx + b * f.dy; };

  std::vector<CheckResult> checks(5);

  auto& positivity = checks[0];
  positivity.name = "positivity";
  add_sign(positivity, "numerator", num, PositivityMode::positive);
  add_sign(positivity, "denominator", den, PositivityMode::positive);
  finish(positivity, "numerator and denominator are positive definite forms");

  auto& tangency = checks[1];
  tangency.name = "tangency";
  tangency.identities.push_back(identity("<grad W, f0> den^2", pairing(field.base)));
  finish(tangency, "<grad W, f0> vanishes identically");

  auto& decrease = checks[2];
  decrease.name = "decrease_identity";
  decrease.identities.push_back(identity("<grad W, f> den^2 + (a^2+b^2) den", pairing(field.full()) + grad_sq * den));
  decrease.identities.push_back(identity("<grad W, f1> den^2 + (a^2+b^2) den", pairing(field.correction) + grad_sq * den));
  finish(decrease, "<grad W, f> = -(a^2+b^2) / den exactly");

  auto& common_zero = checks[3];
  common_zero.name = "no_common_zero";
  add_sign(common_zero, "a^2+b^2", grad_sq, PositivityMode::positive);
  common_zero.identities.push_back(
      identity("y a + x b - 8 (x y)^3", Y() * a + X() * b - Polynomial(8) * (X() * Y()).pow(3), false));
  finish(common_zero, "a^2+b^2 is positive definite, so grad W vanishes only at the origin");

  auto& radial = checks[4];
  radial.name = "radial_unboundedness";
  const Polynomial gap = Polynomial(2) * num - den * r2();
  add_sign(radial, "2 num - den (x^2+y^2)", gap, PositivityMode::nonnegative);
  finish(radial, "2 num - den (x^2+y^2) = " + gap.to_string() + " >= 0, so W >= (x^2+y^2)/2");

  return make_report(std::move(checks));
}

CertificateReport verify_polynomial_lyapunov(const Polynomial& v, const VectorField& field, PolynomialScope scope) {
  const Polynomial decay = -lie_derivative(v, field);
  std::vector<CheckResult> checks(2);
  checks[0].name = "positivity";
  checks[1].name = "decrease";

  if (scope == PolynomialScope::global_homogeneous) {
    if (!v.is_homogeneous() || !decay.is_homogeneous()) {
      throw std::invalid_argument("global_homogeneous scope needs homogeneous V and <grad V, f>");
    }
    require_definite(checks[0], "V", v);
    require_definite(checks[1], "-<grad V, f>", decay);
    finish(checks[0], "V is a positive definite form");
    finish(checks[1], "-<grad V, f> = " + decay.to_string() + " is a positive definite form");
  } else {
    if (!v.coefficient(0, 0).is_zero()) throw std::invalid_argument("local scope needs V(0,0) = 0");
    const Polynomial v_low = lowest_part(v);
    const Polynomial decay_low = lowest_part(decay);
    require_definite(checks[0], "lowest part of V", v_low);
    require_definite(checks[1], "lowest part of -<grad V, f>", decay_low);
    finish(checks[0], "local pass (lowest-order): " + v_low.to_string() + " is positive definite");
    finish(checks[1], "local pass (lowest-order): " + decay_low.to_string() + " is positive definite");
  }
  return make_report(std::move(checks));
}

bool recheck(const CertificateReport& report) {
  for (const auto& check : report.checks) {
    for (const auto& s : check.signs) {
      if (!recheck_form_sign(s.form, s.decision)) return false;
    }
    if (derived_verdict(check) != check.verdict) return false;
  }
  return combine(report.checks) == report.overall;
}

std::optional<Counterexample> falsify_by_sampling(const RationalFunction& v, const VectorField& field,
                                                  const std::vector<std::pair<Rational, Rational>>& samples) {
  const RationalFunction vdot = lie_derivative(v, field);
  for (const auto& s : samples) {
    if (auto c = examine(v, vdot, s)) return c;
  }
  return std::nullopt;
}

std::optional<Counterexample> falsify_by_sampling_parallel(const RationalFunction& v, const VectorField& field,
                                                           const std::vector<std::pair<Rational, Rational>>& samples) {
  const RationalFunction vdot = lie_derivative(v, field);
  const long n = static_cast<long>(samples.size());
  long first = std::numeric_limits<long>::max();
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first)
  for (long i = 0; i < n; ++i) {
    if (i < first && examine(v, vdot, samples[static_cast<std::size_t>(i)])) first = std::min(first, i);
  }
  if (first == std::numeric_limits<long>::max()) return std::nullopt;
  return examine(v, vdot, samples[static_cast<std::size_t>(first)]);
}

}  // namespace lyapcert
