#pragma once

#include <string>
#include <utility>
#include <vector>

namespace simplex_margin::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Writes a grid of panels (axes, ticks, polylines, legend) with
/// `columns` panels per row. Points with non-positive coordinates on a
/// log axis are skipped.
void write_panels(const std::string& path, const std::vector<Panel>& panels, int columns);

}  // namespace simplex_margin::svg
