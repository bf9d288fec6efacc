#pragma once

#include <string>
#include <utility>
#include <vector>

#include "asyncbcd/simulator.hpp"

namespace asyncbcd::app {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Polyline chart with a linear x axis and a log10 y axis. Points with y <= 0 are dropped.
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title, const std::string& x_label,
                       const std::string& y_label);

/// Gap against t when every record has one, otherwise f against t.
PlotSeries series_from_records(const std::string& label, const std::vector<TraceRecord>& records);

}  // namespace asyncbcd::app
