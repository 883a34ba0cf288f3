#include "lyapcert/report_json.hpp"

#include <initializer_list>
#include <stdexcept>
#include <string>

#include "lyapcert/text_format.hpp"

namespace lyapcert {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw std::invalid_argument("malformed report: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("\"") + key + "\" is not a string");
  return v.get<std::string>();
}

bool flag(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) malformed(std::string("\"") + key + "\" is not a boolean");
  return v.get<bool>();
}

unsigned count(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned()) malformed(std::string("\"") + key + "\" is not a nonnegative integer");
  return v.get<unsigned>();
}

const json& array(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) malformed(std::string("\"") + key + "\" is not an array");
  return v;
}

Rational rational(const json& j) {
  if (!j.is_string()) malformed("rational is not a string");
  return Rational::parse(j.get<std::string>());
}

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

std::vector<Rational> rationals_from(const json& j) {
  if (!j.is_array()) malformed("expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rational(e));
  return out;
}

std::string to_string(PositivityMode m) { return m == PositivityMode::positive ? "positive" : "nonnegative"; }

template <class Enum>
Enum enum_from(const std::string& s, std::initializer_list<Enum> values) {
  for (const Enum v : values)
    if (to_string(v) == s) return v;
  malformed("unknown value \"" + s + "\"");
}

json to_json(const SturmReport& r) {
  json chain = json::array();
  for (const auto& q : r.chain) chain.push_back(rationals(q.coeffs()));
  json out{{"chain", chain}, {"real_root_count", r.real_root_count}, {"interval", nullptr}};
  if (r.interval) out["interval"] = json::array({r.interval->first.to_string(), r.interval->second.to_string()});
  return out;
}

SturmReport sturm_from_json(const json& j) {
  SturmReport r;
  for (const auto& q : array(j, "chain")) r.chain.emplace_back(rationals_from(q));
  r.real_root_count = count(j, "real_root_count");
  const json& iv = field(j, "interval");
  if (!iv.is_null()) {
    if (!iv.is_array() || iv.size() != 2) malformed("interval");
    r.interval = std::make_pair(rational(iv[0]), rational(iv[1]));
  }
  return r;
}

}  // namespace

json to_json(const FormSignDecision& d) {
  json out{{"holds", d.holds},
           {"mode", to_string(d.mode)},
           {"degree", nullptr},
           {"y_axis_value", d.y_axis_value.to_string()},
           {"reason", d.reason},
           {"dehomogenized", nullptr}};
  if (d.degree) out["degree"] = *d.degree;
  if (d.dehomogenized) {
    json p{{"holds", d.dehomogenized->holds}, {"query", to_json(d.dehomogenized->query)}, {"odd_part", nullptr}};
    if (d.dehomogenized->odd_part) p["odd_part"] = to_json(*d.dehomogenized->odd_part);
    out["dehomogenized"] = p;
  }
  return out;
}

FormSignDecision form_sign_from_json(const json& j) {
  FormSignDecision d;
  d.holds = flag(j, "holds");
  d.mode = enum_from(text(j, "mode"), {PositivityMode::positive, PositivityMode::nonnegative});
  if (!field(j, "degree").is_null()) d.degree = count(j, "degree");
  d.y_axis_value = rational(field(j, "y_axis_value"));
  d.reason = text(j, "reason");
  const json& p = field(j, "dehomogenized");
  if (!p.is_null()) {
    PositivityDecision pd;
    pd.holds = flag(p, "holds");
    pd.query = sturm_from_json(field(p, "query"));
    if (!field(p, "odd_part").is_null()) pd.odd_part = sturm_from_json(field(p, "odd_part"));
    d.dehomogenized = std::move(pd);
  }
  return d;
}

json to_json(const CertificateReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json ids = json::array();
    for (const auto& id : c.identities)
      ids.push_back({{"label", id.label}, {"residual", id.residual.to_string()}, {"gating", id.gating}});
    json signs = json::array();
    for (const auto& s : c.signs)
      signs.push_back({{"label", s.label}, {"form", s.form.to_string()}, {"decision", to_json(s.decision)}});
    checks.push_back({{"name", c.name},
                      {"verdict", to_string(c.verdict)},
                      {"detail", c.detail},
                      {"identities", ids},
                      {"signs", signs}});
  }
  return {{"checks", checks}, {"overall", to_string(r.overall)}};
}

CertificateReport certificate_report_from_json(const json& j) {
  const std::initializer_list<Verdict> verdicts = {Verdict::pass, Verdict::fail, Verdict::inconclusive};
  CertificateReport r;
  for (const auto& c : array(j, "checks")) {
    CheckResult check;
    check.name = text(c, "name");
    check.verdict = enum_from(text(c, "verdict"), verdicts);
    check.detail = text(c, "detail");
    for (const auto& id : array(c, "identities"))
      check.identities.push_back({text(id, "label"), parse_polynomial(text(id, "residual")), flag(id, "gating")});
    for (const auto& s : array(c, "signs"))
      check.signs.push_back({text(s, "label"), parse_polynomial(text(s, "form")), form_sign_from_json(field(s, "decision"))});
    r.checks.push_back(std::move(check));
  }
  r.overall = enum_from(text(j, "overall"), verdicts);
  return r;
}

json to_json(const LinearProgram& lp) {
  json rows = json::array();
  for (const auto& row : lp.rows) {
    json e{{"coefficients", rationals(row.coefficients)},
           {"sense", to_string(row.sense)},
           {"rhs", row.rhs.to_string()},
           {"tag", to_string(row.tag)},
           {"direction", nullptr}};
    if (row.direction) e["direction"] = *row.direction;
    rows.push_back(e);
  }
  return {{"variables", lp.variables}, {"rows", rows}};
}

LinearProgram linear_program_from_json(const json& j) {
  LinearProgram lp;
  lp.variables = count(j, "variables");
  for (const auto& e : array(j, "rows")) {
    LpRow row;
    row.coefficients = rationals_from(field(e, "coefficients"));
    row.sense = enum_from(text(e, "sense"), {RowSense::ge, RowSense::le, RowSense::eq});
    row.rhs = rational(field(e, "rhs"));
    row.tag = enum_from(text(e, "tag"), {RowTag::positivity, RowTag::decrease, RowTag::normalization, RowTag::margin});
    if (!field(e, "direction").is_null()) row.direction = count(e, "direction");
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

json to_json(const NonexistenceReport& r) {
  json samples = json::array();
  for (const auto& d : r.samples.directions()) samples.push_back(d.to_string());
  json cuts = json::array();
  for (const auto& c : r.cuts)
    cuts.push_back({{"direction", c.direction.to_string()},
                    {"violated", to_string(c.violated)},
                    {"candidate", c.candidate.to_string()}});
  json out{{"degree", r.degree},
           {"outcome", to_string(r.outcome)},
           {"iterations", r.iterations},
           {"samples", samples},
           {"cuts", cuts},
           {"lp", to_json(r.lp)},
           {"farkas_multipliers", nullptr},
           {"candidate", nullptr},
           {"candidate_nonnegative", nullptr},
           {"candidate_decrease", nullptr}};
  if (r.certificate) out["farkas_multipliers"] = rationals(r.certificate->multipliers);
  if (r.candidate) out["candidate"] = r.candidate->to_string();
  if (r.candidate_nonnegative) out["candidate_nonnegative"] = to_json(*r.candidate_nonnegative);
  if (r.candidate_decrease) out["candidate_decrease"] = to_json(*r.candidate_decrease);
  return out;
}

NonexistenceReport nonexistence_report_from_json(const json& j) {
  NonexistenceReport r;
  r.degree = count(j, "degree");
  r.outcome = enum_from(text(j, "outcome"), {NonexistenceOutcome::infeasible_certified,
                                             NonexistenceOutcome::candidate_survived,
                                             NonexistenceOutcome::iteration_cap_reached});
  r.iterations = count(j, "iterations");
  std::vector<Direction> dirs;
  for (const auto& d : array(j, "samples")) {
    if (!d.is_string()) malformed("direction is not a string");
    dirs.push_back(Direction::parse(d.get<std::string>()));
  }
  r.samples = SampleSet(std::move(dirs));
  for (const auto& c : array(j, "cuts"))
    r.cuts.push_back({Direction::parse(text(c, "direction")),
                      enum_from(text(c, "violated"), {RowTag::positivity, RowTag::decrease}),
                      parse_polynomial(text(c, "candidate"))});
  r.lp = linear_program_from_json(field(j, "lp"));
  if (!field(j, "farkas_multipliers").is_null())
    r.certificate = FarkasCertificate{rationals_from(field(j, "farkas_multipliers"))};
  if (!field(j, "candidate").is_null()) r.candidate = parse_polynomial(text(j, "candidate"));
  if (!field(j, "candidate_nonnegative").is_null())
    r.candidate_nonnegative = form_sign_from_json(field(j, "candidate_nonnegative"));
  if (!field(j, "candidate_decrease").is_null())
    r.candidate_decrease = form_sign_from_json(field(j, "candidate_decrease"));
  return r;
}

json to_json(const IntegratorConfig& c) {
  return {{"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol}, {"h_init", c.h_init},
          {"h_max", c.h_max},     {"t_max", c.t_max},     {"max_steps", c.max_steps}};
}

IntegratorConfig integrator_config_from_json(const json& j, IntegratorConfig base) {
  if (!j.is_object()) malformed("integrator config is not an object");
  const auto number = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_number()) malformed(std::string("\"") + key + "\" is not a number");
    slot = j.at(key).get<double>();
  };
  number("rel_tol", base.rel_tol);
  number("abs_tol", base.abs_tol);
  number("h_init", base.h_init);
  number("h_max", base.h_max);
  number("t_max", base.t_max);
  if (j.contains("max_steps")) {
    if (!j.at("max_steps").is_number_integer()) malformed("\"max_steps\" is not an integer");
    base.max_steps = j.at("max_steps").get<long>();
  }
  return base;
}

}  // namespace lyapcert
