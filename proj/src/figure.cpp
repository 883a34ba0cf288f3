#include "lyapcert/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lyapcert {

namespace {

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string render_figure_svg(const TrajectoryRecord& trajectory, const std::vector<LevelSetCurve>& levels,
                              const FigureLayout& layout) {
  double extent = 0.0;
  for (const auto& s : trajectory.samples) extent = std::max({extent, std::abs(s.x), std::abs(s.y)});
  for (const auto& c : levels)
    for (const auto& p : c.points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  if (!(extent > 0.0) || !std::isfinite(extent)) extent = 1.0;

  const double half = layout.size / 2.0;
  const double scale = (half - layout.margin) / extent;
  const auto point = [&](double x, double y) { return fixed(half + scale * x) + "," + fixed(half - scale * y); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << layout.size << "\" height=\"" << layout.size
      << "\" viewBox=\"0 0 " << layout.size << ' ' << layout.size << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <line class=\"axis\" x1=\"0\" y1=\"" << fixed(half) << "\" x2=\"" << layout.size << "\" y2=\"" << fixed(half)
      << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  svg << "  <line class=\"axis\" x1=\"" << fixed(half) << "\" y1=\"0\" x2=\"" << fixed(half) << "\" y2=\"" << layout.size
      << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  for (const auto& c : levels) {
    svg << "  <polygon class=\"level-set\" data-level=\"" << fixed(c.level, 6)
        << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) svg << (i ? " " : "") << point(c.points[i].x, c.points[i].y);
    svg << "\"/>\n";
  }

  svg << "  <polyline class=\"trajectory\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < trajectory.samples.size(); ++i)
    svg << (i ? " " : "") << point(trajectory.samples[i].x, trajectory.samples[i].y);
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace lyapcert
