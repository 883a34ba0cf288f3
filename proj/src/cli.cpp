#include "lyapcert/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lyapcert/certify.hpp"
#include "lyapcert/figure.hpp"
#include "lyapcert/nonexist.hpp"
#include "lyapcert/report_json.hpp"
#include "lyapcert/systems.hpp"
#include "lyapcert/text_format.hpp"

namespace lyapcert::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Input problems that map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string scope_name(CertificateScope s) {
  switch (s) {
    case CertificateScope::rational_global: return "rational_global";
    case CertificateScope::global_homogeneous: return "global_homogeneous";
    case CertificateScope::local: return "local";
  }
  return "local";
}

const SystemCatalogEntry& lookup(const std::string& name) {
  if (const auto* e = find_system(name)) return *e;
  throw UsageError("unknown system \"" + name + "\" (see `lyapcert list`)");
}

std::string file_stem(const std::string& system) {
  std::string s = system;
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

double parse_number(const std::string& token) {
  const auto trimmed_begin = token.find_first_not_of(" \t");
  const auto trimmed_end = token.find_last_not_of(" \t");
  if (trimmed_begin == std::string::npos) throw UsageError("empty number");
  const std::string t = token.substr(trimmed_begin, trimmed_end - trimmed_begin + 1);
  if (t.find('/') != std::string::npos) {
    try {
      return Rational::parse(t).to_double();
    } catch (const std::exception&) {
      throw UsageError("not a number: \"" + t + "\"");
    }
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: \"" + t + "\"");
  }
  if (used != t.size()) throw UsageError("not a number: \"" + t + "\"");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) out.push_back(parse_number(token));
  return out;
}

std::string certificate_text(const std::string& arg) {
  std::error_code ec;
  if (!fs::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  if (!in) throw UsageError("cannot read certificate file " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path prepare_out(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw UsageError("cannot create output directory " + c.out + ": " + ec.message());
  return fs::path(c.out);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
  f.close();
  if (!f) throw UsageError("cannot write " + path.string());
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

RationalFunction simulation_lyapunov(const SystemCatalogEntry& e) {
  if (e.known_certificate) return *e.known_certificate;
  if (e.reported_candidate) return RationalFunction(*e.reported_candidate);
  return RationalFunction(parse_polynomial("x^2 + y^2"));
}

/// monitor_decrease needs two samples; a trajectory that never moved passes.
DecreaseMonitor monitor(const TrajectoryRecord& t) {
  if (t.samples.size() < 2) return {};
  return monitor_decrease(t);
}

bool settled(TrajectoryStatus s) { return s == TrajectoryStatus::converged || s == TrajectoryStatus::t_max_reached; }

// ---------------------------------------------------------------- commands

int cmd_list(std::ostream& out) {
  for (const auto& e : system_catalog()) {
    out << e.field.name << "  [" << scope_name(e.scope) << "]\n";
    out << "  dx/dt = " << e.field.full().dx.to_string() << "\n";
    out << "  dy/dt = " << e.field.full().dy.to_string() << "\n";
    if (e.known_certificate) out << "  certificate: " << e.known_certificate->to_string() << "\n";
    if (e.reported_candidate) out << "  candidate (reported only): " << e.reported_candidate->to_string() << "\n";
    if (!e.description.empty()) out << "  " << e.description << "\n";
  }
  return ok;
}

std::vector<std::pair<Rational, Rational>> spot_samples(std::uint64_t seed, std::size_t n, bool local) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 16);
  std::vector<std::pair<Rational, Rational>> s;
  s.reserve(n);
  // Local certificates only claim a neighbourhood; shrink the box for them.
  const Rational shrink = local ? Rational(1, 1000) : Rational(1);
  for (std::size_t i = 0; i < n; ++i) s.emplace_back(Rational(num(rng), den(rng)) * shrink, Rational(num(rng), den(rng)) * shrink);
  return s;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto& entry = lookup(c.system);
  RationalFunction w = RationalFunction(Polynomial(1));
  std::string source;
  if (c.certificate) {
    try {
      w = parse_rational_function(certificate_text(*c.certificate));
    } catch (const std::exception& e) {
      throw UsageError(std::string("cannot parse certificate: ") + e.what());
    }
    source = "user";
  } else if (entry.known_certificate) {
    w = *entry.known_certificate;
    source = "catalog";
  } else if (entry.reported_candidate) {
    w = RationalFunction(*entry.reported_candidate);
    source = "catalog (reported candidate)";
  } else {
    throw UsageError("system \"" + c.system + "\" has no catalog certificate; pass --certificate");
  }

  CertificateReport report;
  std::string method;
  try {
    if (entry.scope == CertificateScope::rational_global || !w.is_polynomial()) {
      method = "rational";
      report = verify_rational_lyapunov(w, entry.field);
    } else {
      const auto scope =
          entry.scope == CertificateScope::local ? PolynomialScope::local : PolynomialScope::global_homogeneous;
      method = "polynomial/" + scope_name(entry.scope);
      report = verify_polynomial_lyapunov(w.num(), entry.field.full(), scope);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("certificate rejected: ") + e.what());
  }

  const bool local = entry.scope == CertificateScope::local;
  const auto hit = falsify_by_sampling_parallel(w, entry.field.full(), spot_samples(c.seed, 200, local));
  json sampling{{"seed", c.seed}, {"count", 200}, {"gating", false}, {"counterexample", nullptr}};
  if (hit)
    sampling["counterexample"] = {{"x", hit->x.to_string()},
                                  {"y", hit->y.to_string()},
                                  {"value", hit->value.to_string()},
                                  {"derivative", hit->derivative.to_string()},
                                  {"violated", hit->violated}};

  const json doc{{"kind", "verify"},
                 {"system", c.system},
                 {"certificate", w.to_string()},
                 {"certificate_source", source},
                 {"method", method},
                 {"report", to_json(report)},
                 {"sampling", sampling},
                 {"config", to_json(c)}};
  const fs::path path = prepare_out(c) / ("verify_" + file_stem(c.system) + ".json");
  write_file(path, dump(doc));

  out << "system " << c.system << ", certificate " << w.to_string() << " (" << method << ")\n";
  for (const auto& check : report.checks) {
    out << "  " << check.name << ": " << to_string(check.verdict) << "  " << check.detail << "\n";
    for (const auto& id : check.identities)
      out << "    identity " << id.label << ": residual " << id.residual.to_string() << (id.gating ? "" : " (informational)")
          << "\n";
    for (const auto& s : check.signs)
      out << "    sign " << s.label << ": " << (s.decision.holds ? "holds" : "does not hold") << " (" << s.decision.reason
          << ")\n";
  }
  if (hit)
    out << "  spot check: " << hit->violated << " violated at (" << hit->x.to_string() << ", " << hit->y.to_string()
        << ")\n";
  out << "overall: " << to_string(report.overall) << "\nreport: " << path.string() << "\n";
  return report.overall == Verdict::pass ? ok : negative;
}

int cmd_nonexist(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.kmax < 2 || c.kmax % 2 != 0) throw UsageError("--kmax must be even and at least 2");
  if (c.cap < 1) throw UsageError("--cap must be positive");
  const auto& entry = lookup(c.system);

  std::vector<NonexistenceReport> reports;
  try {
    reports = cutting_plane_sweep(entry.field, static_cast<unsigned>(c.kmax), static_cast<unsigned>(c.cap));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("sweep not applicable: ") + e.what());
  }

  int code = ok;
  json degrees = json::array();
  out << "system " << c.system << ", degrees 2.." << c.kmax << ", cap " << c.cap << "\n";
  for (const auto& r : reports) {
    const bool rechecked = recheck(r, entry.field.base);
    json d = to_json(r);
    d["recheck"] = rechecked;
    degrees.push_back(d);
    out << "  k = " << r.degree << ": " << to_string(r.outcome) << " after " << r.iterations << " round(s), "
        << r.samples.size() << " directions, " << r.cuts.size() << " cut(s)";
    if (r.candidate) out << ", candidate " << r.candidate->to_string();
    out << (rechecked ? ", rechecked" : ", RECHECK FAILED") << "\n";

    if (!rechecked) code = std::max(code, static_cast<int>(negative));
    if (r.outcome == NonexistenceOutcome::iteration_cap_reached) code = std::max(code, static_cast<int>(negative));
    if (r.outcome == NonexistenceOutcome::candidate_survived) {
      if (c.system == "paper") {
        err << "CONTRADICTION: a degree-" << r.degree << " candidate survived on the paper system: "
            << r.candidate->to_string() << "\n";
        code = contradiction;
      } else {
        code = std::max(code, static_cast<int>(negative));
      }
    }
  }

  const json doc{{"kind", "nonexist"}, {"system", c.system}, {"degrees", degrees}, {"config", to_json(c)}};
  const fs::path path = prepare_out(c) / ("nonexist_" + file_stem(c.system) + ".json");
  write_file(path, dump(doc));
  out << "report: " << path.string() << "\n";
  return code;
}

int cmd_recheck(const RunConfig& c, std::ostream& out) {
  std::ifstream in(c.report);
  if (!in) throw UsageError("cannot read report " + c.report);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("system"))
    throw UsageError("report lacks \"kind\" or \"system\"");
  const auto& entry = lookup(doc["system"].get<std::string>());

  try {
    if (doc["kind"] == "verify") {
      const auto report = certificate_report_from_json(doc.at("report"));
      const bool good = recheck(report) && combine(report.checks) == report.overall;
      out << "verify report for " << entry.field.name << ": overall " << to_string(report.overall) << ", evidence "
          << (good ? "rechecked" : "INVALID") << "\n";
      return good ? ok : negative;
    }
    if (doc["kind"] == "nonexist") {
      bool all = true;
      for (const auto& d : doc.at("degrees")) {
        const auto report = nonexistence_report_from_json(d);
        const bool good = recheck(report, entry.field.base);
        all = all && good;
        out << "  k = " << report.degree << ": " << to_string(report.outcome)
            << (report.certificate ? " (Farkas certificate, " + std::to_string(report.certificate->multipliers.size()) +
                                         " multipliers)"
                                   : std::string())
            << (good ? ": rechecked" : ": INVALID") << "\n";
      }
      return all ? ok : negative;
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown report kind");
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const auto& entry = lookup(c.system);
  if (!std::isfinite(c.x0[0]) || !std::isfinite(c.x0[1])) throw UsageError("--x0 must be finite");
  try {
    c.integrator.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const RationalFunction w = simulation_lyapunov(entry);
  const auto traj = integrate(entry.field.full(), c.x0, c.integrator, w);
  const auto m = monitor(traj);

  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  const fs::path path = prepare_out(c) / ("trajectory_" + file_stem(c.system) + ".csv");
  write_file(path, csv.str());

  const auto& last = traj.samples.back();
  out << "system " << c.system << " from (" << c.x0[0] << ", " << c.x0[1] << "): " << to_string(traj.status) << " at t = "
      << last.t << " after " << traj.samples.size() - 1 << " steps\n";
  out << "  final state (" << last.x << ", " << last.y << "), V = " << last.w << "\n";
  out << "  decrease monitor (V = " << w.to_string() << "): " << (m.monotone ? "monotone" : "VIOLATED")
      << ", worst increase " << m.worst_violation << "\n";
  out << "trajectory: " << path.string() << "\n";
  return settled(traj.status) && m.monotone ? ok : negative;
}

int cmd_figure(const RunConfig& c, std::ostream& out) {
  if (c.levels.empty()) throw UsageError("--levels must not be empty");
  for (const double v : c.levels)
    if (!std::isfinite(v) || v <= 0.0) throw UsageError("levels must be positive and finite");
  if (c.n_theta < 8) throw UsageError("--n-theta must be at least 8");
  if (!std::isfinite(c.x0[0]) || !std::isfinite(c.x0[1])) throw UsageError("--x0 must be finite");
  try {
    c.integrator.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto& entry = lookup("paper");
  const RationalFunction w = *entry.known_certificate;
  const auto traj = integrate(entry.field.full(), c.x0, c.integrator, w);
  const auto m = monitor(traj);

  std::vector<LevelSetCurve> curves;
  double worst_level_error = 0.0;
  for (const double level : c.levels) {
    curves.push_back(level_set(level, c.n_theta));
    for (const auto& p : curves.back().points)
      worst_level_error = std::max(worst_level_error, std::abs(w.evaluate(p.x, p.y) - level) / level);
  }

  const fs::path dir = prepare_out(c);
  write_file(dir / "figure.svg", render_figure_svg(traj, curves));
  std::ostringstream tcsv;
  write_trajectory_csv(tcsv, traj);
  write_file(dir / "figure_trajectory.csv", tcsv.str());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::ostringstream lcsv;
    write_level_set_csv(lcsv, curves[i]);
    write_file(dir / ("figure_level_" + std::to_string(i) + ".csv"), lcsv.str());
  }

  const bool levels_ok = worst_level_error <= 1e-10;
  out << "trajectory from (" << c.x0[0] << ", " << c.x0[1] << "): " << to_string(traj.status) << ", "
      << traj.samples.size() << " samples, W " << traj.samples.front().w << " -> " << traj.samples.back().w << "\n";
  out << "  decrease monitor: " << (m.monotone ? "monotone" : "VIOLATED") << ", worst increase " << m.worst_violation
      << "\n";
  out << "  " << curves.size() << " level set(s), worst relative W error " << worst_level_error << "\n";
  out << "figure: " << (dir / "figure.svg").string() << "\n";
  return settled(traj.status) && m.monotone && levels_ok ? ok : negative;
}

}  // namespace

// ------------------------------------------------------------ config I/O

json to_json(const RunConfig& c) {
  json j{{"command", c.command},
         {"system", c.system},
         {"certificate", nullptr},
         {"kmax", c.kmax},
         {"cap", c.cap},
         {"x0", {c.x0[0], c.x0[1]}},
         {"levels", c.levels},
         {"n_theta", c.n_theta},
         {"integrator", lyapcert::to_json(c.integrator)},
         {"seed", c.seed},
         {"out", c.out},
         {"report", c.report}};
  if (c.certificate) j["certificate"] = *c.certificate;
  return j;
}

RunConfig apply_config(const json& j, RunConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  const auto bad = [](const char* key) { throw std::invalid_argument(std::string("config field \"") + key + "\" has the wrong type"); };
  const auto string_field = [&](const char* key, std::string& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) bad(key);
    slot = j[key].get<std::string>();
  };
  const auto int_field = [&](const char* key, int& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) bad(key);
    slot = j[key].get<int>();
  };
  string_field("command", c.command);
  string_field("system", c.system);
  string_field("out", c.out);
  string_field("report", c.report);
  int_field("kmax", c.kmax);
  int_field("cap", c.cap);
  int_field("n_theta", c.n_theta);
  if (j.contains("certificate")) {
    if (j["certificate"].is_null()) c.certificate.reset();
    else if (j["certificate"].is_string()) c.certificate = j["certificate"].get<std::string>();
    else bad("certificate");
  }
  if (j.contains("x0")) {
    const auto& v = j["x0"];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) bad("x0");
    c.x0 = {v[0].get<double>(), v[1].get<double>()};
  }
  if (j.contains("levels")) {
    if (!j["levels"].is_array()) bad("levels");
    c.levels.clear();
    for (const auto& v : j["levels"]) {
      if (!v.is_number()) bad("levels");
      c.levels.push_back(v.get<double>());
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("integrator")) c.integrator = integrator_config_from_json(j["integrator"], c.integrator);
  return c;
}

// ------------------------------------------------------------ entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string x0_text;
  std::string levels_text;
  std::string config_path;
  std::optional<std::string> certificate;

  CLI::App app{"Exact Lyapunov certificates and nonexistence replays for planar polynomial systems", "lyapcert"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Directory for reports and artifacts");
    sub->add_option("--config", config_path, "JSON RunConfig; its fields override the flags");
  };
  const auto integrator_flags = [&](CLI::App* sub) {
    sub->add_option("--x0", x0_text, "Initial state \"x,y\"");
    sub->add_option("--t-max", cfg.integrator.t_max, "Integration horizon");
    sub->add_option("--rel-tol", cfg.integrator.rel_tol, "Relative tolerance");
    sub->add_option("--abs-tol", cfg.integrator.abs_tol, "Absolute tolerance");
    sub->add_option("--max-steps", cfg.integrator.max_steps, "Step budget");
  };

  auto* list = app.add_subcommand("list", "Show the system catalog");

  auto* verify = app.add_subcommand("verify", "Check a Lyapunov certificate exactly");
  verify->add_option("--system", cfg.system, "Catalog system");
  verify->add_option("--certificate", certificate, "Certificate text or file (default: catalog certificate)");
  verify->add_option("--seed", cfg.seed, "Seed for the random spot check");
  common(verify);

  auto* nonexist = app.add_subcommand("nonexist", "Degree sweep for polynomial Lyapunov functions");
  nonexist->add_option("--system", cfg.system, "Catalog system");
  nonexist->add_option("--kmax", cfg.kmax, "Largest (even) degree");
  nonexist->add_option("--cap", cfg.cap, "Cutting-plane rounds per degree");
  common(nonexist);

  auto* recheck_cmd = app.add_subcommand("recheck", "Re-verify a verify or nonexist report offline");
  recheck_cmd->add_option("report", cfg.report, "Report JSON")->required();

  auto* simulate = app.add_subcommand("simulate", "Integrate one trajectory and monitor V");
  simulate->add_option("--system", cfg.system, "Catalog system");
  integrator_flags(simulate);
  common(simulate);

  auto* figure = app.add_subcommand("figure", "Trajectory over level sets of W, as SVG");
  figure->add_option("--levels", levels_text, "Comma-separated positive levels (default 1/4,1,4)");
  figure->add_option("--n-theta", cfg.n_theta, "Points per level curve");
  integrator_flags(figure);
  common(figure);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }

  try {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    cfg.certificate = certificate;
    if (!x0_text.empty()) {
      const auto v = parse_list(x0_text);
      if (v.size() != 2) throw UsageError("--x0 needs exactly two numbers \"x,y\"");
      cfg.x0 = {v[0], v[1]};
    }
    if (!levels_text.empty()) cfg.levels = parse_list(levels_text);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw UsageError("cannot read config " + config_path);
      try {
        const std::string command = cfg.command;
        cfg = apply_config(json::parse(in), cfg);
        cfg.command = command;
      } catch (const json::exception& e) {
        throw UsageError(std::string("bad config: ") + e.what());
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad config: ") + e.what());
      }
    }

    if (list->parsed()) return cmd_list(out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (nonexist->parsed()) return cmd_nonexist(cfg, out, err);
    if (recheck_cmd->parsed()) return cmd_recheck(cfg, out);
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    if (figure->parsed()) return cmd_figure(cfg, out);
  } catch (const UsageError& e) {
    err << "lyapcert: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace lyapcert::cli
