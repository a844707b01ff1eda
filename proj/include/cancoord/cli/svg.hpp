#pragma once

// Minimal SVG emitter: polyline plots and grid heat maps with axes.

#include <string>
#include <vector>

namespace cancoord::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series);

/// z[i][j] is the value at (x[j], y[i]).
std::string svg_heatmap(const std::string& title, const std::string& x_label,
                        const std::string& y_label, const std::vector<double>& x,
                        const std::vector<double>& y, const std::vector<std::vector<double>>& z);

}  // namespace cancoord::cli
