// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lyapcert/certify.hpp"
#include "lyapcert/cli.hpp"
#include "lyapcert/nonexist.hpp"
#include "lyapcert/report_json.hpp"
#include "lyapcert/simulate.hpp"
#include "lyapcert/sturm.hpp"
#include "lyapcert/systems.hpp"
#include "lyapcert/text_format.hpp"

using namespace lyapcert;
using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

fs::path workdir() {
  static const fs::path p = [] {
    const fs::path d = fs::temp_directory_path() / ("lyapcert_acceptance_" + std::to_string(getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  return cli::run(args, out, err);
}

Polynomial P(const char* text) { return parse_polynomial(text); }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, const char* spec = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

/// Failed conditions and short notes for one criterion.
struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// ------------------------------------------------------------------ 1
void exact_gas_certificate(Outcome& o) {
  const auto dir = workdir() / "c1";
  const auto t0 = Clock::now();
  const int code = cli_run({"verify", "--system", "paper", "--out", dir.string()});
  const double secs = seconds_since(t0);
  o.require(code == 0, "verify exit code " + std::to_string(code));
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s >= 1 s");
  o.notes.push_back("verify " + fmt(secs) + " s");

  const json doc = json::parse(slurp(dir / "verify_paper.json"));
  const auto report = certificate_report_from_json(doc.at("report"));
  o.require(report.overall == Verdict::pass, "overall verdict");
  o.require(report.checks.size() == 5, "five checks");
  for (const auto& ch : report.checks) o.require(ch.verdict == Verdict::pass, ch.name + " passes");
  o.require(recheck(report), "stored evidence rechecks");

  const auto find = [&](const std::string& name) -> const CheckResult* {
    for (const auto& ch : report.checks)
      if (ch.name == name) return &ch;
    return nullptr;
  };
  const auto* tangency = find("tangency");
  const auto* decrease = find("decrease_identity");
  const auto* common = find("no_common_zero");
  const auto* radial = find("radial_unboundedness");
  if (!tangency || !decrease || !common || !radial) {
    o.require(false, "check names present");
    return;
  }
  o.require(tangency->identities.size() == 1 && tangency->identities[0].residual.is_zero(), "tangency residual is 0");
  o.require(!decrease->identities.empty(), "decrease identities present");
  for (const auto& id : decrease->identities) o.require(id.residual.is_zero(), id.label + " residual is 0");

  bool found_8xy3 = false;
  for (const auto& id : common->identities)
    if (id.label == "y a + x b - 8 (x y)^3") found_8xy3 = id.residual.is_zero();
  o.require(found_8xy3, "y a + x b - 8 (x y)^3 is the zero polynomial");

  const auto [a, b] = paper_gradient_numerators();
  bool sturm_ok = false;
  for (const auto& s : common->signs)
    if (s.form == a * a + b * b)
      sturm_ok = s.decision.holds && s.decision.mode == PositivityMode::positive && s.decision.dehomogenized &&
                 recheck_form_sign(s.form, s.decision);
  o.require(sturm_ok, "a^2+b^2 positive definite with replayable Sturm evidence");

  o.require(radial->signs.size() == 1 && radial->signs[0].form == P("x^4 - 2*x^2*y^2 + y^4"),
            "radial residual equals (x^2-y^2)^2");
  o.require(P("x^4 - 2*x^2*y^2 + y^4") == P("x^2 - y^2").pow(2), "(x^2-y^2)^2 expands as expected");
}

// ------------------------------------------------------------------ 2
void nonexistence_replay(Outcome& o) {
  const auto dir = workdir() / "c2";
  const auto t0 = Clock::now();
  const int code = cli_run({"nonexist", "--system", "paper", "--kmax", "6", "--cap", "200", "--out", dir.string()});
  const double secs = seconds_since(t0);
  o.require(code == 0, "nonexist exit code " + std::to_string(code));
  o.require(secs < 60.0, "runtime " + fmt(secs) + " s >= 60 s");

  const json doc = json::parse(slurp(dir / "nonexist_paper.json"));
  std::vector<unsigned> degrees;
  const auto f0 = paper_system().base;
  for (const auto& d : doc.at("degrees")) {
    const auto r = nonexistence_report_from_json(d);
    degrees.push_back(r.degree);
    o.require(r.outcome == NonexistenceOutcome::infeasible_certified, "k = " + std::to_string(r.degree) + " certified");
    o.require(r.certificate && verify_farkas(r.lp, *r.certificate), "k = " + std::to_string(r.degree) + " Farkas check");
    o.require(build_lp(r.degree, r.samples, lowest_order_part(f0)) == r.lp,
              "k = " + std::to_string(r.degree) + " LP rebuilt from samples");
    o.notes.push_back("k=" + std::to_string(r.degree) + ": " + std::to_string(r.iterations) + " rounds");
  }
  o.require(degrees == std::vector<unsigned>{2, 4, 6}, "degrees 2, 4, 6 swept");
  o.require(cli_run({"recheck", (dir / "nonexist_paper.json").string()}) == 0, "recheck exit 0");

  // Fixed regression: the hand-derived k = 2 system over c0 x^2 + c1 xy + c2 y^2.
  const auto row = [](std::vector<long> c, RowSense s, long rhs, RowTag tag) {
    std::vector<Rational> r(c.begin(), c.end());
    return LpRow{r, s, Rational(rhs), tag, std::nullopt};
  };
  const LinearProgram hand{3,
                           {row({0, 2, 0}, RowSense::le, 0, RowTag::decrease),
                            row({0, -2, 0}, RowSense::le, 0, RowTag::decrease),
                            row({-1, 0, 1}, RowSense::le, 0, RowTag::decrease),
                            row({1, 0, -1}, RowSense::le, 0, RowTag::decrease),
                            row({1, 0, 0}, RowSense::le, 0, RowTag::decrease),
                            row({1, 0, 0}, RowSense::ge, 0, RowTag::positivity),
                            row({1, 0, 1}, RowSense::eq, 1, RowTag::normalization)}};
  const auto sol = simplex_solve(hand);
  o.require(!sol.feasible && sol.certificate && verify_farkas(hand, *sol.certificate), "hand LP infeasible, certified");

  // The same five directions through the LP builder.
  const SampleSet five({Direction::through(1, 0), Direction::through(0, 1), Direction::through(1, 1),
                        Direction::through(1, -1), Direction::through(2, 1)});
  const auto built = build_lp(2, five, f0);
  o.require(built.rows[1].coefficients == std::vector<Rational>{0, 2, 0}, "row 2 c1 <= 0");
  o.require(built.rows[3].coefficients == std::vector<Rational>{0, -2, 0}, "row -2 c1 <= 0");
  o.require(built.rows[5].coefficients == std::vector<Rational>{-8, 0, 8}, "row c2 <= c0 (times 8)");
  o.require(built.rows[7].coefficients == std::vector<Rational>{8, 0, -8}, "row c0 <= c2 (times 8)");
  const auto built_sol = simplex_solve(built);
  o.require(!built_sol.feasible && built_sol.certificate && verify_farkas(built, *built_sol.certificate),
            "five-direction LP infeasible, certified");
  o.notes.push_back("sweep " + fmt(secs) + " s");
}

// ------------------------------------------------------------------ 3
void complex_point_contradiction(Outcome& o) {
  for (const unsigned k0 : {2u, 4u, 6u, 8u})
    for (const Rational& c : {Rational(1), Rational(3), Rational(1, 2)}) {
      const Polynomial p = P("x^2 + y^2").pow(k0 / 2) + Polynomial::term(Rational(3), k0 - 1, 1);
      const auto w = final_identity_check(p, k0, c);
      const GaussianRational expected(c * c * Rational(2).pow(k0), Rational(0));
      const std::string tag = "k0=" + std::to_string(k0) + ", c=" + c.to_string();
      o.require(w.left == GaussianRational(Rational(0), Rational(0)), tag + ": left = 0");
      o.require(w.right == expected, tag + ": right = c^2 2^k0");
    }
  o.notes.push_back("12 (k0, c) pairs");
}

// ------------------------------------------------------------------ 4
void control_system(Outcome& o) {
  const auto dir = workdir() / "c4";
  const int code = cli_run({"nonexist", "--system", "linear", "--kmax", "2", "--out", dir.string()});
  o.require(code == 1, "nonexist linear exits 1 (survivor is the expected result)");
  const json doc = json::parse(slurp(dir / "nonexist_linear.json"));
  const auto r = nonexistence_report_from_json(doc.at("degrees").at(0));
  o.require(r.outcome == NonexistenceOutcome::candidate_survived, "candidate_survived at k = 2");
  o.require(r.candidate && *r.candidate == P("x^2 + y^2"), "survivor is exactly x^2 + y^2");
  o.require(recheck(r, linear_system().base), "survivor evidence rechecks");
  o.require(cli_run({"verify", "--system", "linear", "--certificate", "x^2 + y^2", "--out", dir.string()}) == 0,
            "verify accepts x^2 + y^2");
}

// ------------------------------------------------------------------ 5
void gallery(Outcome& o) {
  struct Case {
    const char* system;
    const char* candidate;
  };
  for (const Case& cs : {Case{"bacciotti-rosier-1", "2*x^4 + 3*x^2*y^2 + y^4"}, Case{"bacciotti-rosier-0", "x^2 + y^2"}}) {
    const auto* entry = find_system(cs.system);
    if (!entry) {
      o.require(false, std::string(cs.system) + " in catalog");
      continue;
    }
    const Polynomial v = P(cs.candidate);
    o.require(entry->known_certificate && entry->known_certificate->num() == v, std::string(cs.system) + " candidate");
    const auto report = verify_polynomial_lyapunov(v, entry->field.full(), PolynomialScope::global_homogeneous);
    bool evidence = true;
    for (const auto& ch : report.checks) evidence = evidence && !ch.signs.empty();
    o.require(report.overall == Verdict::pass || (report.overall == Verdict::inconclusive && evidence),
              std::string(cs.system) + " verdict pass or evidenced inconclusive");
    o.require(recheck(report), std::string(cs.system) + " evidence rechecks");
    std::string detail = std::string(cs.system) + ": " + to_string(report.overall);
    for (const auto& ch : report.checks) detail += ", " + ch.name + " " + to_string(ch.verdict);
    o.notes.push_back(detail);
  }
  // As-printed sign variant, reported only.
  for (const char* name : {"bacciotti-rosier-printed-1", "bacciotti-rosier-printed-0"}) {
    const auto* entry = find_system(name);
    if (!entry || !entry->reported_candidate) continue;
    const auto report =
        verify_polynomial_lyapunov(*entry->reported_candidate, entry->field.full(), PolynomialScope::global_homogeneous);
    o.require(recheck(report), std::string(name) + " evidence rechecks");
    o.notes.push_back(std::string(name) + ": " + to_string(report.overall) + " (reported)");
  }
}

// ------------------------------------------------------------------ 6
void periodic_orbit(Outcome& o) {
  const auto t0 = Clock::now();
  const auto f0 = paper_system().base;
  const auto w = paper_lyapunov();
  const auto a = periodic_orbit_check(f0, {1.0, 0.0}, {}, w);
  const auto b = periodic_orbit_check(f0, {1.0, 1.0}, {}, w);
  const double secs = seconds_since(t0);
  o.require(a.returned && b.returned, "orbit returns");
  o.require(a.closure_error < 1e-6, "closure error " + fmt(a.closure_error));
  o.require(a.w_drift < 1e-8, "W drift " + fmt(a.w_drift));
  o.require(std::abs(a.period - b.period) < 1e-6, "periods agree");
  o.require(secs < 5.0, "runtime " + fmt(secs) + " s >= 5 s");
  o.notes.push_back("period " + fmt(a.period, "%.9f") + " (3 pi / 4 = " + fmt(0.75 * std::numbers::pi, "%.9f") +
                    "), closure " + fmt(a.closure_error) + ", drift " + fmt(a.w_drift) + ", " + fmt(secs) + " s");
}

// ------------------------------------------------------------------ 7
void figure_reproduction(Outcome& o) {
  const auto dir = workdir() / "c7";
  const int code = cli_run({"figure", "--out", dir.string()});
  o.require(code == 0, "figure exit code " + std::to_string(code));
  const std::string svg = slurp(dir / "figure.svg");
  const auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
    return n;
  };
  o.require(count("<polyline class=\"trajectory\"") == 1, "one trajectory polyline");
  o.require(count("<polygon class=\"level-set\"") == 3, "three level curves");
  for (const char* level : {"0.250000", "1.000000", "4.000000"})
    o.require(svg.find(std::string("data-level=\"") + level + "\"") != std::string::npos,
              std::string("level ") + level + " drawn");

  const auto w = paper_lyapunov();
  const auto rows = read_csv(dir / "figure_trajectory.csv");
  if (rows.size() < 3) {
    o.require(false, "trajectory CSV has samples");
    return;
  }
  TrajectoryRecord traj;
  for (std::size_t i = 1; i < rows.size(); ++i)
    traj.samples.push_back({std::stod(rows[i][0]), std::stod(rows[i][1]), std::stod(rows[i][2]), std::stod(rows[i][3])});
  o.require(traj.samples.front().x == 2.0 && traj.samples.front().y == 2.0, "starts at (2, 2)");
  const auto m = monitor_decrease(traj);
  o.require(m.monotone && m.worst_violation <= 1e-9, "monitor_decrease passes");
  o.require(traj.samples.front().w >= 4.0 && traj.samples.back().w < 0.25, "crosses W = 4, 1, 1/4");

  double turn = 0.0;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const auto& p = traj.samples[i];
    const auto& q = traj.samples[i + 1];
    turn += std::atan2(p.x * q.y - p.y * q.x, p.x * q.x + p.y * q.y);
  }
  o.require(turn > 0.0, "net counterclockwise rotation while descending");

  double worst = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto lv = read_csv(dir / ("figure_level_" + std::to_string(k) + ".csv"));
    const double c = std::vector<double>{0.25, 1.0, 4.0}[k];
    for (std::size_t i = 1; i < lv.size(); ++i)
      worst = std::max(worst, std::abs(w.evaluate(std::stod(lv[i][2]), std::stod(lv[i][3])) - c) / c);
  }
  o.require(worst <= 1e-10, "level points re-evaluate W within 1e-10 c");
  o.notes.push_back(std::to_string(traj.samples.size()) + " samples, W " + fmt(traj.samples.front().w) + " -> " +
                    fmt(traj.samples.back().w) + ", rotation " + fmt(turn) + " rad, worst level error " + fmt(worst));
}

// ------------------------------------------------------------------ 8
Polynomial random_poly(std::mt19937& rng, unsigned max_degree) {
  std::uniform_int_distribution<long> c(-9, 9);
  std::uniform_int_distribution<long> d(1, 5);
  Polynomial p;
  for (unsigned i = 0; i <= max_degree; ++i)
    for (unsigned j = 0; i + j <= max_degree; ++j)
      if (rng() % 3 == 0) p += Polynomial::term(Rational(c(rng), d(rng)), i, j);
  return p;
}

Polynomial random_form(std::mt19937& rng, unsigned k) {
  std::uniform_int_distribution<long> c(-9, 9);
  Polynomial p;
  for (unsigned i = 0; i <= k; ++i) p += Polynomial::term(Rational(c(rng), 1 + static_cast<long>(rng() % 4)), k - i, i);
  return p;
}

void oracle_suites(Outcome& o) {
  std::mt19937 rng(8);
  int mult_bad = 0;
  for (int n = 0; n < 200; ++n) {
    const auto a = random_poly(rng, 6);
    const auto b = random_poly(rng, 6);
    // Naive convolution on a dense coefficient grid.
    Polynomial naive;
    for (unsigned i1 = 0; i1 <= 6; ++i1)
      for (unsigned j1 = 0; j1 <= 6; ++j1)
        for (unsigned i2 = 0; i2 <= 6; ++i2)
          for (unsigned j2 = 0; j2 <= 6; ++j2) {
            const Rational c = a.coefficient(i1, j1) * b.coefficient(i2, j2);
            if (!c.is_zero()) naive += Polynomial::term(c, i1 + i2, j1 + j2);
          }
    mult_bad += !(a * b == naive && multiply_serial(a, b) == naive && multiply_parallel(a, b) == naive);
  }
  o.require(mult_bad == 0, std::to_string(mult_bad) + " multiplication mismatches");

  // Sturm counts against a sign-change scan: squarefree products of
  // (t - r) with distinct roots on a 1/4 grid, times t^2 + 1.
  int sturm_bad = 0;
  std::uniform_int_distribution<int> root(-24, 24);
  for (int n = 0; n < 200; ++n) {
    std::vector<int> r;
    const int count = 1 + static_cast<int>(rng() % 6);
    while (static_cast<int>(r.size()) < count) {
      const int v = root(rng);
      if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
    }
    UnivariatePolynomial q({Rational(1), Rational(0), Rational(1)});
    for (int v : r) q = q * UnivariatePolynomial({Rational(-v, 4), Rational(1)});
    unsigned scan = 0;
    const Rational step(1, 16);
    int prev = q.sign_at(Rational(-7) + Rational(1, 997));
    for (Rational t = Rational(-7) + Rational(1, 997); t < Rational(7); t += step) {
      const int s = q.sign_at(t + step);
      scan += s != prev;
      prev = s;
    }
    const Rational lo(-1, 3);
    const Rational hi(17, 7);
    unsigned inside = 0;
    for (int v : r) inside += Rational(v, 4) > lo && Rational(v, 4) <= hi;
    sturm_bad += !(sturm_report(q).real_root_count == scan && scan == r.size() &&
                   sturm_report(q, lo, hi).real_root_count == inside);
  }
  o.require(sturm_bad == 0, std::to_string(sturm_bad) + " Sturm mismatches");

  int euler_bad = 0;
  int scaling_bad = 0;
  std::uniform_int_distribution<long> pt(-12, 12);
  for (int n = 0; n < 100; ++n) {
    const unsigned k = 1 + static_cast<unsigned>(rng() % 9);
    const auto p = random_form(rng, k);
    const auto [px, py] = gradient(p);
    euler_bad += !(P("x") * px + P("y") * py == p * Rational(k));
    const Rational x(pt(rng), 1 + static_cast<long>(rng() % 5));
    const Rational y(pt(rng), 1 + static_cast<long>(rng() % 5));
    const Rational lam(pt(rng), 1 + static_cast<long>(rng() % 5));
    scaling_bad += !(p.evaluate(lam * x, lam * y) == lam.pow(k) * p.evaluate(x, y));
  }
  o.require(euler_bad == 0, std::to_string(euler_bad) + " Euler identity failures");
  o.require(scaling_bad == 0, std::to_string(scaling_bad) + " homogeneity scaling failures");

  // Byte-identical reports on repeated runs into the same directory.
  const auto dir = workdir() / "c8";
  cli_run({"nonexist", "--system", "paper", "--kmax", "6", "--out", dir.string()});
  const std::string first = slurp(dir / "nonexist_paper.json");
  cli_run({"nonexist", "--system", "paper", "--kmax", "6", "--out", dir.string()});
  const std::string second = slurp(dir / "nonexist_paper.json");
  o.require(!first.empty() && first == second, "nonexist reports byte-identical");
  const auto serial = cutting_plane_sweep_serial(paper_system(), 6);
  const auto parallel = cutting_plane_sweep(paper_system(), 6);
  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i) same = to_json(serial[i]) == to_json(parallel[i]);
  o.require(same, "parallel sweep equals serial sweep");
  o.notes.push_back("200 products, 200 Sturm counts, 100 Euler, 100 scaling, 2 repeated reports");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "exact GAS certificate for W", exact_gas_certificate},
      {2, "nonexistence replay, k = 2, 4, 6", nonexistence_replay},
      {3, "complex-point contradiction", complex_point_contradiction},
      {4, "linear control system keeps x^2 + y^2", control_system},
      {5, "Bacciotti-Rosier gallery verdicts", gallery},
      {6, "periodic orbit of f0 on W = 1", periodic_orbit},
      {7, "figure: trajectory over level sets", figure_reproduction},
      {8, "oracle suites and determinism", oracle_suites},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = o.failures.empty();
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << "\n";
    for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    for (const auto& f : o.failures) std::cout << "       failed: " << f << "\n";
  }
  fs::remove_all(workdir());
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
