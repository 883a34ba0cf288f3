#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "lyapcert/rational_function.hpp"
#include "lyapcert/vector_field.hpp"

namespace lyapcert {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double h_init = 1e-3;
  double h_max = 0.05;
  double t_max = 50.0;
  long max_steps = 1'000'000;

  /// Throws std::invalid_argument unless every field is finite and positive.
  void validate() const;
};

enum class TrajectoryStatus { converged, t_max_reached, step_limit, blow_up };

std::string to_string(TrajectoryStatus s);

struct TrajectorySample {
  double t;
  double x;
  double y;
  double w;
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  TrajectoryStatus status = TrajectoryStatus::t_max_reached;
};

/// Adaptive Dormand-Prince 5(4). One sample per accepted step, starting with
/// the initial state. Stops when |(x,y)| < 1e-8 (converged), at t_max, after
/// max_steps attempted steps, or when the state stops being finite or grows
/// past 1e8 * max(1, |x0|) (blow_up). W is evaluated in double precision.
/// Throws std::invalid_argument for a non-finite initial state.
TrajectoryRecord integrate(const VectorField& field, std::array<double, 2> x0, const IntegratorConfig& config,
                           const RationalFunction& w);

/// Independent trajectories, one per start, computed in parallel.
std::vector<TrajectoryRecord> integrate_batch(const VectorField& field, const std::vector<std::array<double, 2>>& starts,
                                              const IntegratorConfig& config, const RationalFunction& w);
/// Same, one after another.
std::vector<TrajectoryRecord> integrate_batch_serial(const VectorField& field,
                                                     const std::vector<std::array<double, 2>>& starts,
                                                     const IntegratorConfig& config, const RationalFunction& w);

struct DecreaseMonitor {
  bool monotone = true;
  /// Largest increase W(t_{i+1}) - W(t_i) seen, 0 if none.
  double worst_violation = 0.0;
};

/// W(t_{i+1}) <= W(t_i) + 1e-9 max(1, W(t_i)) for consecutive samples.
/// Throws std::invalid_argument with fewer than two samples.
DecreaseMonitor monitor_decrease(const TrajectoryRecord& traj);

struct PeriodicOrbitReport {
  bool returned = false;
  double period = 0.0;
  double closure_error = 0.0;
  double w_drift = 0.0;
};

/// Integrates f0 from a start on W = 1 until the unwrapped polar angle has
/// advanced by 2 pi, locating the return by bisection on the last step.
/// Throws std::invalid_argument when |W(start) - 1| > 1e-12.
PeriodicOrbitReport periodic_orbit_check(const VectorField& f0, std::array<double, 2> start,
                                         const IntegratorConfig& config, const RationalFunction& w);

struct LevelSetPoint {
  double theta;
  double r;
  double x;
  double y;
};

struct LevelSetCurve {
  double level;
  std::vector<LevelSetPoint> points;
};

/// Closed-form W = c curve, r = sqrt(c / (cos^4 + sin^4)), theta uniform on
/// [0, 2 pi). Throws std::invalid_argument for c <= 0 or n_theta < 8.
LevelSetCurve level_set(double c, int n_theta);

/// Header "t,x,y,W", 17 significant digits.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& traj);
/// Header "theta,r,x,y", 17 significant digits.
void write_level_set_csv(std::ostream& out, const LevelSetCurve& curve);

}  // namespace lyapcert
