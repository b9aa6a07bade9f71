#pragma once

#include <string>
#include <vector>

#include "sebayes/pmf.hpp"

namespace sebayes::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct VerticalMarker {
  double x = 0.0;
  std::string label;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 400;
  std::vector<VerticalMarker> markers;
};

// Self-contained SVG document (inline styles only).
std::string line_chart(const std::vector<Series>& series, const ChartOptions& options);

Series pmf_series(const Pmf& pmf, std::string label, std::string color = "#1f77b4");

}  // namespace sebayes::svg
