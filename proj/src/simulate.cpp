#include "lyapcert/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lyapcert {

namespace {

using State = std::array<double, 2>;

// Flat double-precision copy of a polynomial for fast repeated evaluation.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const Polynomial& p) {
    for (const auto& [m, c] : p.terms()) {
      terms_.push_back({c.to_double(), m.x_exp, m.y_exp});
      max_x_ = std::max(max_x_, m.x_exp);
      max_y_ = std::max(max_y_, m.y_exp);
    }
  }

  double operator()(const double* xp, const double* yp) const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.c * xp[t.i] * yp[t.j];
    return sum;
  }

  unsigned max_x() const { return max_x_; }
  unsigned max_y() const { return max_y_; }

 private:
  struct Term {
    double c;
    unsigned i;
    unsigned j;
  };
  std::vector<Term> terms_;
  unsigned max_x_ = 0;
  unsigned max_y_ = 0;
};

class CompiledField {
 public:
  explicit CompiledField(const VectorField& f)
      : dx_(f.dx), dy_(f.dy), xp_(std::max(dx_.max_x(), dy_.max_x()) + 1), yp_(std::max(dx_.max_y(), dy_.max_y()) + 1) {}

  State operator()(const State& s) {
    xp_[0] = 1.0;
    yp_[0] = 1.0;
    for (std::size_t i = 1; i < xp_.size(); ++i) xp_[i] = xp_[i - 1] * s[0];
    for (std::size_t j = 1; j < yp_.size(); ++j) yp_[j] = yp_[j - 1] * s[1];
    return {dx_(xp_.data(), yp_.data()), dy_(xp_.data(), yp_.data())};
  }

 private:
  CompiledPolynomial dx_;
  CompiledPolynomial dy_;
  std::vector<double> xp_;
  std::vector<double> yp_;
};

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct StepResult {
  State y;
  State error;
  State k7;
};

StepResult dp_step(CompiledField& f, const State& y, const State& k1, double h) {
  const auto at = [&](double c1, const State& q1, double c2 = 0, const State& q2 = {}, double c3 = 0,
                      const State& q3 = {}, double c4 = 0, const State& q4 = {}, double c5 = 0, const State& q5 = {}) {
    State s;
    for (int i = 0; i < 2; ++i) s[i] = y[i] + h * (c1 * q1[i] + c2 * q2[i] + c3 * q3[i] + c4 * q4[i] + c5 * q5[i]);
    return s;
  };
  const State k2 = f(at(a21, k1));
  const State k3 = f(at(a31, k1, a32, k2));
  const State k4 = f(at(a41, k1, a42, k2, a43, k3));
  const State k5 = f(at(a51, k1, a52, k2, a53, k3, a54, k4));
  const State k6 = f(at(a61, k1, a62, k2, a63, k3, a64, k4, a65, k5));
  StepResult r;
  r.y = at(b1, k1, b3, k3, b4, k4, b5, k5, b6, k6);
  r.k7 = f(r.y);
  for (int i = 0; i < 2; ++i) {
    r.error[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * r.k7[i]);
  }
  return r;
}

double error_norm(const StepResult& r, const State& y, const IntegratorConfig& c) {
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double scale = c.abs_tol + c.rel_tol * std::max(std::abs(y[i]), std::abs(r.y[i]));
    const double q = r.error[i] / scale;
    sum += q * q;
  }
  const double norm = std::sqrt(sum / 2.0);
  return std::isfinite(norm) ? norm : std::numeric_limits<double>::infinity();
}

double next_step(double h, double err, const IntegratorConfig& c) {
  const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
  return std::min(h * factor, c.h_max);
}

bool finite(const State& s) { return std::isfinite(s[0]) && std::isfinite(s[1]); }

double norm(const State& s) { return std::hypot(s[0], s[1]); }

// Shared adaptive loop. `on_accept(t0, y0, k1, h, step)` runs after every
// accepted step and returns true to stop early.
template <class OnAccept>
TrajectoryStatus drive(CompiledField& f, State y, const IntegratorConfig& c, double blow_up, OnAccept on_accept) {
  double t = 0.0;
  double h = std::min(c.h_init, c.h_max);
  State k1 = f(y);
  long attempts = 0;
  while (t < c.t_max) {
    if (attempts++ >= c.max_steps) return TrajectoryStatus::step_limit;
    h = std::min(h, c.t_max - t);
    const StepResult step = dp_step(f, y, k1, h);
    const double err = error_norm(step, y, c);
    if (err > 1.0) {
      h *= std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
      if (h <= 0.0 || t + h == t) return TrajectoryStatus::step_limit;
      continue;
    }
    const double t_new = (c.t_max - t <= h) ? c.t_max : t + h;
    if (!finite(step.y) || norm(step.y) > blow_up) return TrajectoryStatus::blow_up;
    const State y0 = y;
    const State k0 = k1;
    const double t0 = t;
    t = t_new;
    y = step.y;
    k1 = step.k7;
    if (on_accept(t0, y0, k0, h, t, y)) return TrajectoryStatus::converged;
    h = next_step(h, err, c);
  }
  return TrajectoryStatus::t_max_reached;
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
  char buf[32];
  bool first = true;
  for (const double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!first) out << ',';
    out << buf;
    first = false;
  }
  out << '\n';
}

}  // namespace

void IntegratorConfig::validate() const {
  for (const double v : {rel_tol, abs_tol, h_init, h_max, t_max}) {
    if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument("integrator settings must be positive and finite");
  }
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
}

std::string to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::converged: return "converged";
    case TrajectoryStatus::t_max_reached: return "t_max_reached";
    case TrajectoryStatus::step_limit: return "step_limit";
    case TrajectoryStatus::blow_up: return "blow_up";
  }
  return "blow_up";
}

TrajectoryRecord integrate(const VectorField& field, std::array<double, 2> x0, const IntegratorConfig& config,
                           const RationalFunction& w) {
  config.validate();
  if (!finite(x0)) throw std::invalid_argument("initial state must be finite");
  constexpr double converged_radius = 1e-8;

  TrajectoryRecord rec;
  rec.samples.push_back({0.0, x0[0], x0[1], w.evaluate(x0[0], x0[1])});
  if (norm(x0) < converged_radius) {
    rec.status = TrajectoryStatus::converged;
    return rec;
  }
  CompiledField f(field);
  const double blow_up = 1e8 * std::max(1.0, norm(x0));
  rec.status = drive(f, x0, config, blow_up, [&](double, const State&, const State&, double, double t, const State& y) {
    rec.samples.push_back({t, y[0], y[1], w.evaluate(y[0], y[1])});
    return norm(y) < converged_radius;
  });
  return rec;
}

std::vector<TrajectoryRecord> integrate_batch_serial(const VectorField& field,
                                                     const std::vector<std::array<double, 2>>& starts,
                                                     const IntegratorConfig& config, const RationalFunction& w) {
  std::vector<TrajectoryRecord> out;
  out.reserve(starts.size());
  for (const auto& s : starts) out.push_back(integrate(field, s, config, w));
  return out;
}

std::vector<TrajectoryRecord> integrate_batch(const VectorField& field, const std::vector<std::array<double, 2>>& starts,
                                              const IntegratorConfig& config, const RationalFunction& w) {
  config.validate();
  for (const auto& s : starts) {
    if (!finite(s)) throw std::invalid_argument("initial state must be finite");
  }
  std::vector<TrajectoryRecord> out(starts.size());
  const long n = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = integrate(field, starts[k], config, w);
  }
  return out;
}

DecreaseMonitor monitor_decrease(const TrajectoryRecord& traj) {
  if (traj.samples.size() < 2) throw std::invalid_argument("decrease monitor needs at least two samples");
  DecreaseMonitor m;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const double w0 = traj.samples[i].w;
    const double w1 = traj.samples[i + 1].w;
    m.worst_violation = std::max(m.worst_violation, w1 - w0);
    if (w1 > w0 + 1e-9 * std::max(1.0, w0)) m.monotone = false;
  }
  return m;
}

PeriodicOrbitReport periodic_orbit_check(const VectorField& f0, std::array<double, 2> start,
                                         const IntegratorConfig& config, const RationalFunction& w) {
  config.validate();
  const double w_start = w.evaluate(start[0], start[1]);
  if (!finite(start) || std::abs(w_start - 1.0) > 1e-12) throw std::invalid_argument("start must lie on W = 1");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const auto wrap = [](double d) {
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return d;
  };
  const auto angle = [](const State& s) { return std::atan2(s[1], s[0]); };

  CompiledField f(f0);
  PeriodicOrbitReport report;
  double advanced = 0.0;
  drive(f, start, config, 1e8, [&](double t0, const State& y0, const State& k0, double h, double, const State& y) {
    report.w_drift = std::max(report.w_drift, std::abs(w.evaluate(y[0], y[1]) - w_start));
    const double before = advanced;
    advanced += wrap(angle(y) - angle(y0));
    if (std::abs(advanced) < two_pi) return false;

    // The return happened inside this step: bisect on the step length.
    const double target = advanced > 0 ? two_pi : -two_pi;
    double lo = 0.0;
    double hi = h;
    State at = y;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, t0); ++i) {
      const double mid = 0.5 * (lo + hi);
      const State s = dp_step(f, y0, k0, mid).y;
      const double swept = before + wrap(angle(s) - angle(y0));
      if (std::abs(swept) < std::abs(target)) {
        lo = mid;
      } else {
        hi = mid;
        at = s;
      }
    }
    report.returned = true;
    report.period = t0 + hi;
    report.closure_error = std::hypot(at[0] - start[0], at[1] - start[1]);
    return true;
  });
  return report;
}

LevelSetCurve level_set(double c, int n_theta) {
  if (!std::isfinite(c) || c <= 0.0) throw std::invalid_argument("level must be positive");
  if (n_theta < 8) throw std::invalid_argument("need at least 8 angles");
  LevelSetCurve curve;
  curve.level = c;
  curve.points.reserve(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / n_theta;
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    const double r = std::sqrt(c / (cs * cs * cs * cs + sn * sn * sn * sn));
    curve.points.push_back({theta, r, r * cs, r * sn});
  }
  return curve;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj) {
  out << "t,x,y,W\n";
  for (const auto& s : traj.samples) write_row(out, {s.t, s.x, s.y, s.w});
}

void write_level_set_csv(std::ostream& out, const LevelSetCurve& curve) {
  out << "theta,r,x,y\n";
  for (const auto& p : curve.points) write_row(out, {p.theta, p.r, p.x, p.y});
}

}  // namespace lyapcert
