#ifndef WAVESIM_SVG_PLOT_HPP
#define WAVESIM_SVG_PLOT_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace wavesim {

struct PlotSeries {
  std::string label;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 920;
  int height = 520;
};

/// Static multi-series line plot; series longer than a few thousand points are
/// decimated by striding before rendering.
void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& options);

}  // namespace wavesim

#endif  // WAVESIM_SVG_PLOT_HPP
