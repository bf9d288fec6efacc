#include "asyncbcd/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace asyncbcd::app {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!(y > 0.0) || !std::isfinite(y) || !std::isfinite(x)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, std::log10(y));
      y_hi = std::max(y_hi, std::log10(y));
    }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  y_lo = std::floor(y_lo);
  y_hi = std::ceil(y_hi);
  if (y_hi == y_lo) y_hi = y_lo + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double ly) { return kTop + (y_hi - ly) / (y_hi - y_lo) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  out << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int decades = static_cast<int>(y_hi - y_lo);
  const int step = std::max(1, decades / 10);
  for (int d = static_cast<int>(y_lo); d <= static_cast<int>(y_hi); d += step) {
    const double y = py(d);
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft + pw) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">1e" << d
        << "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double xv = x_lo + (x_hi - x_lo) * k / 5.0;
    const double x = px(xv);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">" << tick(xv)
        << "</text>\n";
  }
  out << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 15) << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(20," << fmt(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    double last_x = 0.0, last_y = 0.0;
    const auto& pts = series[k].points;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto [x, y] = pts[p];
      if (!(y > 0.0) || !std::isfinite(y) || !std::isfinite(x)) continue;
      const double sx = px(x), sy = py(std::log10(y));
      if (!first && p + 1 < pts.size() && std::abs(sx - last_x) < 0.5 && std::abs(sy - last_y) < 0.5) continue;
      out << (first ? "" : " ") << fmt(sx) << "," << fmt(sy);
      first = false;
      last_x = sx;
      last_y = sy;
    }
    out << "\"/>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    out << "<line x1=\"" << fmt(kLeft + pw + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(kLeft + pw + 36)
        << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(kLeft + pw + 42) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(series[k].label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

PlotSeries series_from_records(const std::string& label, const std::vector<TraceRecord>& records) {
  const bool gaps = std::all_of(records.begin(), records.end(), [](const TraceRecord& r) { return r.gap.has_value(); });
  PlotSeries s{label, {}};
  s.points.reserve(records.size());
  for (const auto& r : records) s.points.emplace_back(static_cast<double>(r.t), gaps ? *r.gap : r.f_true);
  return s;
}

}  // namespace asyncbcd::app
