#include "simplex_margin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace simplex_margin::svg {

namespace {

constexpr int kPanelWidth = 380;
constexpr int kPanelHeight = 300;
constexpr int kMarginLeft = 58;
constexpr int kMarginBottom = 44;
constexpr int kMarginTop = 28;
constexpr int kMarginRight = 14;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Tick label: compact scientific for tiny/huge values
std::string tick_label(double v) {
  char buf[32];
  const double a = std::abs(v);
  if (v != 0.0 && (a < 1e-3 || a >= 1e4)) {
    std::snprintf(buf, sizeof(buf), "%.0e", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%g", v);
  }
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      const double m = 0.04 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
};

std::vector<double> linear_ticks(const Range& r) {
  const double span = r.hi - r.lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(r.lo / step) * step; t <= r.hi + 1e-12 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return ticks;
}

// Ticks at powers of ten; `r` is already in log10 units.
std::vector<double> log_ticks(const Range& r) {
  std::vector<double> ticks;
  for (double e = std::ceil(r.lo); e <= std::floor(r.hi) + 1e-9; e += 1.0) {
    ticks.push_back(e);
  }
  if (ticks.empty()) ticks = {r.lo, r.hi};
  return ticks;
}

}  // namespace

void write_panels(const std::string& path, const std::vector<Panel>& panels, int columns) {
  if (panels.empty() || columns < 1) {
    throw std::invalid_argument("write_panels: need at least one panel and column");
  }
  const int rows = (static_cast<int>(panels.size()) + columns - 1) / columns;
  const int width = columns * kPanelWidth;
  const int height = rows * kPanelHeight;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_panels: cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t idx = 0; idx < panels.size(); ++idx) {
    const Panel& panel = panels[idx];
    const double x0 = static_cast<double>(static_cast<int>(idx) % columns * kPanelWidth);
    const double y0 = static_cast<double>(static_cast<int>(idx) / columns * kPanelHeight);
    const double plot_left = x0 + kMarginLeft;
    const double plot_top = y0 + kMarginTop;
    const double plot_w = kPanelWidth - kMarginLeft - kMarginRight;
    const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;

    auto tx = [&](double v) { return panel.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return panel.log_y ? std::log10(v) : v; };
    auto usable = [&](const std::pair<double, double>& p) {
      if (panel.log_x && !(p.first > 0.0)) return false;
      if (panel.log_y && !(p.second > 0.0)) return false;
      return std::isfinite(p.first) && std::isfinite(p.second);
    };

    Range rx, ry;
    for (const Series& s : panel.series) {
      for (const auto& p : s.points) {
        if (!usable(p)) continue;
        rx.expand(tx(p.first));
        ry.expand(ty(p.second));
      }
    }
    rx.pad();
    ry.pad();

    auto px = [&](double v) { return plot_left + (tx(v) - rx.lo) / (rx.hi - rx.lo) * plot_w; };
    auto py = [&](double v) {
      return plot_top + plot_h - (ty(v) - ry.lo) / (ry.hi - ry.lo) * plot_h;
    };

    // frame
    out << "<rect x=\"" << num(plot_left) << "\" y=\"" << num(plot_top) << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(plot_left + plot_w / 2) << "\" y=\"" << num(y0 + 18)
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
        << panel.title << "</text>\n";

    // x ticks
    const auto xticks = panel.log_x ? log_ticks(rx) : linear_ticks(rx);
    for (double t : xticks) {
      const double raw = panel.log_x ? std::pow(10.0, t) : t;
      const double x = plot_left + (t - rx.lo) / (rx.hi - rx.lo) * plot_w;
      if (x < plot_left - 0.5 || x > plot_left + plot_w + 0.5) continue;
      out << "<line x1=\"" << num(x) << "\" y1=\"" << num(plot_top + plot_h) << "\" x2=\""
          << num(x) << "\" y2=\"" << num(plot_top + plot_h + 4)
          << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << num(x) << "\" y=\"" << num(plot_top + plot_h + 16)
          << "\" text-anchor=\"middle\" font-size=\"9\" font-family=\"sans-serif\">"
          << tick_label(raw) << "</text>\n";
    }
    // y ticks
    const auto yticks = panel.log_y ? log_ticks(ry) : linear_ticks(ry);
    for (double t : yticks) {
      const double raw = panel.log_y ? std::pow(10.0, t) : t;
      const double y = plot_top + plot_h - (t - ry.lo) / (ry.hi - ry.lo) * plot_h;
      if (y < plot_top - 0.5 || y > plot_top + plot_h + 0.5) continue;
      out << "<line x1=\"" << num(plot_left - 4) << "\" y1=\"" << num(y) << "\" x2=\""
          << num(plot_left) << "\" y2=\"" << num(y)
          << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << num(plot_left - 6) << "\" y=\"" << num(y + 3)
          << "\" text-anchor=\"end\" font-size=\"9\" font-family=\"sans-serif\">"
          << tick_label(raw) << "</text>\n";
    }

    // axis labels
    out << "<text x=\"" << num(plot_left + plot_w / 2) << "\" y=\""
        << num(plot_top + plot_h + 32)
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
        << panel.x_label << "</text>\n";
    out << "<text x=\"" << num(x0 + 14) << "\" y=\"" << num(plot_top + plot_h / 2)
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\" transform=\"rotate(-90 "
        << num(x0 + 14) << " " << num(plot_top + plot_h / 2) << ")\">" << panel.y_label
        << "</text>\n";

    // series
    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& p : panel.series[s].points) {
        if (!usable(p)) continue;
        out << num(px(p.first)) << "," << num(py(p.second)) << " ";
      }
      out << "\"/>\n";
    }

    // legend
    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
      const double ly = plot_top + 12 + 13 * static_cast<double>(s);
      out << "<line x1=\"" << num(plot_left + plot_w - 70) << "\" y1=\"" << num(ly)
          << "\" x2=\"" << num(plot_left + plot_w - 56) << "\" y2=\"" << num(ly)
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << num(plot_left + plot_w - 52) << "\" y=\"" << num(ly + 3)
          << "\" font-size=\"9\" font-family=\"sans-serif\">" << panel.series[s].label
          << "</text>\n";
    }
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write_panels: write failed for " + path);
}

}  // namespace simplex_margin::svg
