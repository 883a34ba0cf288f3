// Serial reference vs OpenMP kernel timings. Each pair must also agree.
#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "lyapcert/certify.hpp"
#include "lyapcert/nonexist.hpp"
#include "lyapcert/simulate.hpp"
#include "lyapcert/systems.hpp"

using namespace lyapcert;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  f();  // warm-up
  const double t0 = omp_get_wtime();
  for (int i = 0; i < reps; ++i) f();
  return (omp_get_wtime() - t0) / reps;
}

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-28s %12.6f %12.6f %8.2fx  %s\n", name, serial, parallel, serial / parallel, agree ? "agree" : "MISMATCH");
  std::fflush(stdout);
}

Polynomial dense(unsigned degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-1000, 1000);
  Polynomial p;
  for (unsigned i = 0; i <= degree; ++i)
    for (unsigned j = 0; i + j <= degree; ++j) p += Polynomial::term(Rational(c(rng), 7), i, j);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, repetitions: %d\n", omp_get_max_threads(), reps);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");
  bool ok = true;

  std::mt19937_64 rng(7);
  const Polynomial a = dense(30, rng);
  const Polynomial b = dense(30, rng);
  Polynomial ps;
  Polynomial pp;
  const double ms = seconds([&] { ps = multiply_serial(a, b); }, reps);
  const double mp = seconds([&] { pp = multiply_parallel(a, b); }, reps);
  row("multiply (deg 30 x 30)", ms, mp, ps == pp);
  ok = ok && ps == pp;

  std::vector<std::pair<Rational, Rational>> samples;
  std::uniform_int_distribution<long> n(-500, 500);
  std::uniform_int_distribution<long> d(1, 97);
  for (int i = 0; i < 4000; ++i) samples.emplace_back(Rational(n(rng), d(rng)), Rational(n(rng), d(rng)));
  const auto sys = paper_system();
  const auto w = paper_lyapunov();
  std::optional<Counterexample> fs;
  std::optional<Counterexample> fp;
  const double fss = seconds([&] { fs = falsify_by_sampling(w, sys.full(), samples); }, reps);
  const double fsp = seconds([&] { fp = falsify_by_sampling_parallel(w, sys.full(), samples); }, reps);
  row("falsify (4000 samples)", fss, fsp, fs.has_value() == fp.has_value());
  ok = ok && fs.has_value() == fp.has_value();

  std::vector<NonexistenceReport> ss;
  std::vector<NonexistenceReport> sp;
  const double sws = seconds([&] { ss = cutting_plane_sweep_serial(sys, 12); }, reps);
  const double swp = seconds([&] { sp = cutting_plane_sweep(sys, 12); }, reps);
  bool same = ss.size() == sp.size();
  for (std::size_t i = 0; same && i < ss.size(); ++i) same = ss[i].outcome == sp[i].outcome && ss[i].lp == sp[i].lp;
  row("nonexist sweep (k <= 12)", sws, swp, same);
  ok = ok && same;

  std::vector<std::array<double, 2>> starts;
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 64; ++i) starts.push_back({u(rng), u(rng)});
  std::vector<TrajectoryRecord> ts;
  std::vector<TrajectoryRecord> tp;
  const double is = seconds([&] { ts = integrate_batch_serial(sys.full(), starts, {}, w); }, reps);
  const double ip = seconds([&] { tp = integrate_batch(sys.full(), starts, {}, w); }, reps);
  same = ts.size() == tp.size();
  for (std::size_t i = 0; same && i < ts.size(); ++i)
    same = ts[i].samples.back().x == tp[i].samples.back().x && ts[i].samples.back().y == tp[i].samples.back().y;
  row("integrate batch (64 starts)", is, ip, same);
  ok = ok && same;

  return ok ? 0 : 1;
}
