#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "podrbf/types.hpp"

namespace podrbf {

struct Series {
  std::string label;
  Vector x;
  Vector y;
  bool dashed = false;
  bool markers = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // non-positive values are dropped
  std::vector<Series> series;
};

/// Standalone SVG line chart with axes, ticks and a legend.
std::string render_svg(const PlotSpec& plot);
void write_svg(const std::filesystem::path& path, const PlotSpec& plot);

}  // namespace podrbf
