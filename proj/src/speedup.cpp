#include "sebayes/speedup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "sebayes/error.hpp"

namespace sebayes::speedup {

namespace {

// Every measurement of one (language, task), keyed by (size, variant).
using TaskTable = std::map<std::pair<double, std::string>, double>;

std::map<std::string, TaskTable, std::less<>> tasks_of(const BenchmarkDataset& d,
                                                       std::string_view language) {
  std::map<std::string, TaskTable, std::less<>> out;
  for (const auto& r : d.records()) {
    if (r.language == language) out[r.task][{r.input_size, r.variant}] = r.value;
  }
  return out;
}

std::set<double> sizes_of(const TaskTable& t) {
  std::set<double> out;
  for (const auto& [key, value] : t) out.insert(key.first);
  return out;
}

double best_at(const TaskTable& t, double size) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [key, value] : t) {
    if (key.first == size) best = std::min(best, value);
  }
  return best;
}

std::optional<double> largest_shared_size(const TaskTable& a, const TaskTable& b) {
  const auto sa = sizes_of(a);
  const auto sb = sizes_of(b);
  std::optional<double> out;
  for (double s : sa) {
    if (sb.count(s)) out = s;
  }
  return out;
}

double max_abs(std::span<const double> xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string_view to_string(Metric m) { return m == Metric::Time ? "time" : "memory"; }

Metric parse_metric(std::string_view name) {
  if (name == "time") return Metric::Time;
  if (name == "memory") return Metric::Memory;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

void BenchmarkDataset::add(Measurement m) {
  if (!(std::isfinite(m.value) && m.value > 0.0)) {
    throw Error(ErrorCode::InvalidValue, "measurement must be positive, got " + std::to_string(m.value));
  }
  for (const auto& r : records_) {
    if (std::tie(r.language, r.task, r.input_size, r.variant) ==
        std::tie(m.language, m.task, m.input_size, m.variant)) {
      throw Error(ErrorCode::DuplicateKey, "duplicate measurement for " + m.language + "/" + m.task);
    }
  }
  records_.push_back(std::move(m));
}

std::vector<std::string> BenchmarkDataset::languages() const {
  std::set<std::string> names;
  for (const auto& r : records_) names.insert(r.language);
  return {names.begin(), names.end()};
}

double ratio(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorCode::NonPositiveInput, "speedup ratio needs positive measurements");
  const double magnitude = std::max(a, b) / std::min(a, b);
  return a - b > 0.0 ? magnitude : -magnitude;
}

std::vector<double> primary_speedups(const BenchmarkDataset& d, std::string_view l1,
                                     std::string_view l2) {
  const auto t1 = tasks_of(d, l1);
  const auto t2 = tasks_of(d, l2);
  std::vector<double> out;
  for (const auto& [task, table1] : t1) {
    const auto it = t2.find(task);
    if (it == t2.end()) continue;
    auto best = [](const TaskTable& t) {
      double b = std::numeric_limits<double>::infinity();
      for (const auto& [key, v] : t) b = std::min(b, v);
      return b;
    };
    out.push_back(ratio(best(table1), best(it->second)));
  }
  return out;
}

std::vector<double> calib_speedups(const BenchmarkDataset& d, std::string_view l1,
                                   std::string_view l2) {
  const auto t1 = tasks_of(d, l1);
  const auto t2 = tasks_of(d, l2);
  std::vector<double> out;
  for (const auto& [task, table1] : t1) {
    const auto it = t2.find(task);
    if (it == t2.end()) continue;
    const auto size = largest_shared_size(table1, it->second);
    if (!size) continue;
    out.push_back(ratio(best_at(table1, *size), best_at(it->second, *size)));
  }
  return out;
}

std::vector<double> calib_deltas(const BenchmarkDataset& d, std::string_view l1,
                                  std::string_view l2) {
  const auto t1 = tasks_of(d, l1);
  const auto t2 = tasks_of(d, l2);
  std::vector<double> out;
  for (const auto& [task, table1] : t1) {
    const auto it = t2.find(task);
    if (it == t2.end()) continue;
    const TaskTable& table2 = it->second;
    const auto size = largest_shared_size(table1, table2);
    if (!size) continue;
    const double reference = ratio(best_at(table1, *size), best_at(table2, *size));
    const auto s2 = sizes_of(table2);
    for (const auto& [k1, v1] : table1) {
      if (!s2.count(k1.first)) continue;
      for (const auto& [k2, v2] : table2) {
        if (k2.first == k1.first) out.push_back(ratio(v1, v2) - reference);
      }
    }
  }
  return out;
}

GridSpec posterior_grid(std::span<const double> primary, std::span<const double> calib,
                        std::span<const double> deltas, double prior_bandwidth,
                        double delta_bandwidth, std::size_t points) {
  const double span = std::max(max_abs(primary), max_abs(calib)) + max_abs(deltas) +
                      3.0 * std::max(prior_bandwidth, delta_bandwidth);
  return {-span, span, points};
}

Pmf speedup_posterior(std::span<const double> primary, std::span<const double> calib,
                      std::span<const double> deltas, const PosteriorOptions& options) {
  if (calib.empty()) throw Error(ErrorCode::EmptyCalibration, "no calibration speedups");
  if (deltas.empty()) throw Error(ErrorCode::EmptyCalibration, "no calibration deltas");
  if (primary.empty()) throw Error(ErrorCode::EmptyPrimary, "no primary speedups");

  const GaussianKde prior_kernel({calib.begin(), calib.end()}, options.prior_bandwidth);
  const GaussianKde delta_kernel({deltas.begin(), deltas.end()}, options.delta_bandwidth);
  const GridSpec grid =
      options.grid ? *options.grid
                   : posterior_grid(primary, calib, deltas, prior_kernel.bandwidth(),
                                    delta_kernel.bandwidth(), options.grid_points);

  const DensityGrid prior_density =
      exclude_interval(kde(calib, prior_kernel.bandwidth(), grid), -1.0, 1.0, /*half_open=*/true);
  const Pmf prior = to_pmf(prior_density);
  return update_log(prior, [&](double h) {
    double acc = 0.0;
    for (double d : primary) acc += delta_kernel.log_density(d - h);
    return acc;
  });
}

std::string_view to_string(Significance s) {
  switch (s) {
    case Significance::Significant: return "significant";
    case Significance::Weak: return "weak";
    case Significance::Not: return "not";
  }
  return "?";
}

Significance parse_significance(std::string_view name) {
  for (auto s : {Significance::Significant, Significance::Weak, Significance::Not}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown significance '" + std::string(name) + "'");
}

Significance classify(const CredibleInterval& ci, double mean, double median) {
  if ((ci.low < 0.0 && 0.0 < ci.high) || (-1.1 < mean && mean < 1.1)) return Significance::Not;
  const double width = ci.high - ci.low;
  const double near = std::min(std::abs(ci.low), std::abs(ci.high));
  if (width >= near && near <= 2.0 && std::abs(median) <= 2.0) return Significance::Weak;
  return Significance::Significant;
}

ComparisonSummary summarize(std::string first, std::string second, const Pmf& posterior,
                            double ci_mass) {
  ComparisonSummary s;
  s.first = std::move(first);
  s.second = std::move(second);
  s.ci = credible_interval(posterior, ci_mass);
  s.median = median(posterior);
  s.mean = mean(posterior);
  s.significance = classify(s.ci, s.mean, s.median);
  return s;
}

RelationshipGraph relationship_graph(const std::vector<ComparisonSummary>& summaries) {
  // Speed score: log-speedups won minus log-speedups lost, over all pairs.
  std::map<std::string, double> score;
  for (const auto& s : summaries) {
    const double signed_log = (s.median > 0.0 ? 1.0 : -1.0) * std::log(std::abs(s.median));
    score[s.first] -= signed_log;
    score[s.second] += signed_log;
  }
  RelationshipGraph g;
  if (score.empty()) return g;
  double lo = score.begin()->second, hi = lo;
  for (const auto& [lang, v] : score) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (const auto& [lang, v] : score) {
    g.nodes.push_back({lang, hi > lo ? 10.0 * (v - lo) / (hi - lo) : 0.0});
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& s : summaries) {
    if (s.significance == Significance::Not || s.first == s.second) continue;
    const bool second_faster = s.median > 0.0;
    GraphEdge e{second_faster ? s.first : s.second, second_faster ? s.second : s.first,
                s.significance == Significance::Weak ? EdgeStyle::Dotted : EdgeStyle::Solid};
    const auto key = std::minmax(e.from, e.to);
    if (!seen.insert({key.first, key.second}).second) continue;
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::string to_dot(const RelationshipGraph& graph, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n";
  out << "  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    char pos[64];
    std::snprintf(pos, sizeof pos, "%.4f,%zu!", graph.nodes[i].x, i % 3);
    out << "  " << quote(graph.nodes[i].language) << " [pos=\"" << pos << "\"];\n";
  }
  for (const auto& e : graph.edges) {
    out << "  " << quote(e.from) << " -> " << quote(e.to);
    if (e.style == EdgeStyle::Dotted) out << " [style=dotted]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sebayes::speedup
