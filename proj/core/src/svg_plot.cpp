#include "wavesim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wavesim/csv_io.hpp"

namespace wavesim {

namespace {

constexpr int kMaxPointsPerSeries = 4000;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void grow(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!(hi > lo)) {
      const double c = std::isfinite(lo) ? lo : 0.0;
      lo = c - 1.0;
      hi = c + 1.0;
      return;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

// Round tick spacing to 1/2/5 times a power of ten.
std::vector<double> ticks(const Range& r, int target) {
  const double span = r.hi - r.lo;
  const double raw = span / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> out;
  const double first = std::ceil(r.lo / step) * step;
  for (double v = first; v <= r.hi + 1e-9 * span; v += step) {
    out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
  }
  return out;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const PlotOptions& options) {
  if (series.empty()) throw std::invalid_argument("write_svg_plot: no series");
  Range rx;
  Range ry;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("write_svg_plot: x/y length mismatch in " + s.label);
    }
    for (Eigen::Index i = 0; i < s.x.size(); ++i) {
      rx.grow(s.x[i]);
      ry.grow(s.y[i]);
    }
  }
  rx.pad();
  ry.pad();

  const double ml = 72.0, mr = 18.0, mt = options.title.empty() ? 18.0 : 40.0, mb = 56.0;
  const double W = options.width, H = options.height;
  const double pw = W - ml - mr;
  const double ph = H - mt - mb;
  const auto X = [&](double v) { return ml + pw * (v - rx.lo) / (rx.hi - rx.lo); };
  const auto Y = [&](double v) { return mt + ph * (1.0 - (v - ry.lo) / (ry.hi - ry.lo)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"16\">" << escape_xml(options.title) << "</text>\n";
  }

  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (const double v : ticks(rx, 8)) {
    const double x = X(v);
    svg << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\"" << mt + ph
        << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << mt + ph + 16 << "\" text-anchor=\"middle\">"
        << format_number(v) << "</text>\n";
  }
  for (const double v : ticks(ry, 6)) {
    const double y = Y(v);
    svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
        << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
        << format_number(v) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const Eigen::Index n = s.x.size();
    const Eigen::Index stride = std::max<Eigen::Index>(1, n / kMaxPointsPerSeries);
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\" points=\"";
    for (Eigen::Index i = 0; i < n; i += stride) {
      svg << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
    }
    if (n > 0 && (n - 1) % stride != 0) svg << X(s.x[n - 1]) << ',' << Y(s.y[n - 1]);
    svg << "\"/>\n";
  }

  double ly = mt + 14;
  for (std::size_t si = 0; si < series.size(); ++si) {
    if (series[si].label.empty()) continue;
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "<line x1=\"" << ml + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + 34 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + 40 << "\" y=\"" << ly << "\" font-family=\"sans-serif\""
        << " font-size=\"12\">" << escape_xml(series[si].label) << "</text>\n";
    ly += 16;
  }

  if (!options.x_label.empty()) {
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(options.x_label) << "</text>\n";
  }
  if (!options.y_label.empty()) {
    svg << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        << " transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">" << escape_xml(options.y_label)
        << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_svg_plot: cannot open " + path);
  out << svg.str();
  if (!out) throw std::runtime_error("write_svg_plot: write failed for " + path);
}

}  // namespace wavesim
