#pragma once

#include <string>
#include <vector>

#include "lyapcert/simulate.hpp"

namespace lyapcert {

struct FigureLayout {
  int size = 800;
  /// Blank border in pixels on every side.
  int margin = 24;
};

/// Square SVG with equal axis scaling and the origin at the center: one
/// <polyline class="trajectory"> and one closed <polygon class="level-set">
/// per curve, plus the two axes. The scale fits the farthest point drawn.
std::string render_figure_svg(const TrajectoryRecord& trajectory, const std::vector<LevelSetCurve>& levels,
                              const FigureLayout& layout = {});

}  // namespace lyapcert
