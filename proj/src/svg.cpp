#include "sebayes/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sebayes::svg {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const ChartOptions& o) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = 0.0, y_hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    for (double x : s.x) x_lo = std::min(x_lo, x), x_hi = std::max(x_hi, x);
    for (double y : s.y) y_lo = std::min(y_lo, y), y_hi = std::max(y_hi, y);
  }
  if (!(x_hi > x_lo)) x_lo -= 0.5, x_hi += 0.5;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = o.width - left - right;
  const double ph = o.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return top + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height
      << "\" viewBox=\"0 0 " << o.width << ' ' << o.height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << o.width << "\" height=\"" << o.height
      << "\" style=\"fill:#ffffff\"/>\n";
  out << "<text x=\"" << num(o.width / 2.0) << "\" y=\"22\" style=\"font:14px sans-serif;text-anchor:middle\">"
      << escape(o.title) << "</text>\n";

  // Axes and ticks.
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw)
      << "\" y2=\"" << num(top + ph) << "\" style=\"stroke:#000000\"/>\n";
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
      << num(top + ph) << "\" style=\"stroke:#000000\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / kTicks;
    const double yv = y_lo + (y_hi - y_lo) * i / kTicks;
    out << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 16)
        << "\" style=\"font:10px sans-serif;text-anchor:middle\">" << tick_label(xv) << "</text>\n";
    out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 3)
        << "\" style=\"font:10px sans-serif;text-anchor:end\">" << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(o.height - 10.0)
      << "\" style=\"font:12px sans-serif;text-anchor:middle\">" << escape(o.x_label) << "</text>\n";
  out << "<text x=\"14\" y=\"" << num(top + ph / 2) << "\" transform=\"rotate(-90 14 " << num(top + ph / 2)
      << ")\" style=\"font:12px sans-serif;text-anchor:middle\">" << escape(o.y_label) << "</text>\n";

  for (const auto& m : o.markers) {
    if (m.x < x_lo || m.x > x_hi) continue;
    out << "<line x1=\"" << num(sx(m.x)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(sx(m.x))
        << "\" y2=\"" << num(top + ph) << "\" style=\"stroke:#888888;stroke-dasharray:4,3\"/>\n";
    out << "<text x=\"" << num(sx(m.x) + 3) << "\" y=\"" << num(top + 12)
        << "\" style=\"font:10px sans-serif;fill:#555555\">" << escape(m.label) << "</text>\n";
  }

  int legend = 0;
  for (const auto& s : series) {
    out << "<polyline style=\"fill:none;stroke:" << s.color << ";stroke-width:1.5"
        << (s.dashed ? ";stroke-dasharray:6,3" : "") << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (i) out << ' ';
      out << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
    }
    out << "\"/>\n";
    if (!s.label.empty()) {
      const double ly = top + 14 + 14 * legend++;
      out << "<line x1=\"" << num(left + pw - 120) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
          << num(left + pw - 100) << "\" y2=\"" << num(ly - 4) << "\" style=\"stroke:" << s.color
          << ";stroke-width:1.5\"/>\n";
      out << "<text x=\"" << num(left + pw - 95) << "\" y=\"" << num(ly)
          << "\" style=\"font:10px sans-serif\">" << escape(s.label) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

Series pmf_series(const Pmf& pmf, std::string label, std::string color) {
  Series s;
  s.label = std::move(label);
  s.color = std::move(color);
  s.x.assign(pmf.support().begin(), pmf.support().end());
  s.y.assign(pmf.mass().begin(), pmf.mass().end());
  return s;
}

}  // namespace sebayes::svg
