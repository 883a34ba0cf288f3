#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lyapcert/simulate.hpp"

namespace lyapcert::cli {

enum ExitCode : int { ok = 0, negative = 1, usage = 2, contradiction = 3 };

/// Everything a run depends on. Serialized into every report, and accepted
/// back through --config, so a run can be replayed from its report alone.
struct RunConfig {
  std::string command;
  std::string system = "paper";
  /// Inline text or a path to a file holding it.
  std::optional<std::string> certificate;
  int kmax = 6;
  int cap = 200;
  std::array<double, 2> x0{2.0, 2.0};
  std::vector<double> levels{0.25, 1.0, 4.0};
  int n_theta = 720;
  IntegratorConfig integrator;
  /// Seeds the random spot-check samples of `verify`.
  std::uint64_t seed = 20240611;
  std::string out = ".";
  /// Input report for `recheck`.
  std::string report;
};

nlohmann::json to_json(const RunConfig& c);
/// Overrides the fields present in `j`; throws std::invalid_argument on a
/// wrongly typed field.
RunConfig apply_config(const nlohmann::json& j, RunConfig base);

/// Full command line without the program name, e.g. {"verify", "--system",
/// "paper"}. Human-readable output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lyapcert::cli
