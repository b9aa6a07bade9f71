#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sebayes/density.hpp"
#include "sebayes/pmf.hpp"

namespace sebayes::speedup {

enum class Metric { Time, Memory };

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view name);

struct Measurement {
  std::string language;
  std::string task;
  double input_size = 0.0;
  std::string variant;
  double value = 0.0;
};

// Measurements of one metric keyed by (language, task, input_size, variant).
// Primary datasets leave input_size and variant at their defaults.
class BenchmarkDataset {
 public:
  explicit BenchmarkDataset(Metric metric = Metric::Time) : metric_(metric) {}

  // Rejects nonpositive values and duplicate keys.
  void add(Measurement m);

  Metric metric() const { return metric_; }
  const std::vector<Measurement>& records() const { return records_; }
  // Sorted, deduplicated language names.
  std::vector<std::string> languages() const;

 private:
  Metric metric_;
  std::vector<Measurement> records_;
};

// sgn(a - b) * max(a, b) / min(a, b), with sgn(0) = -1. Positive when b is
// the smaller (faster) measurement.
double ratio(double a, double b);

// One ratio per task measured in both languages, using the best (smallest)
// value per (language, task). Tasks are visited in lexicographic order.
std::vector<double> primary_speedups(const BenchmarkDataset& d, std::string_view l1,
                                     std::string_view l2);

// Per common task: ratio of the best variants at the largest input size
// measured for both languages. Tasks without a shared size are skipped.
std::vector<double> calib_speedups(const BenchmarkDataset& d, std::string_view l1,
                                   std::string_view l2);

// Per common task, for every shared size n and variant pair (v1, v2) measured
// at n: ratio(l1 at (n, v1), l2 at (n, v2)) minus that task's calibration
// speedup. Pooled across tasks.
std::vector<double> calib_deltas(const BenchmarkDataset& d, std::string_view l1,
                                 std::string_view l2);

struct PosteriorOptions {
  // Bandwidths for the prior and the delta kernels; empty selects Scott's rule.
  std::optional<double> prior_bandwidth;
  std::optional<double> delta_bandwidth;
  std::size_t grid_points = 4096;
  // Overrides the automatic symmetric grid when set.
  std::optional<GridSpec> grid;
};

inline constexpr std::size_t kDefaultPosteriorPoints = 4096;

// Symmetric grid [-L, L] with L covering every observed ratio and delta plus
// three kernel bandwidths.
GridSpec posterior_grid(std::span<const double> primary, std::span<const double> calib,
                        std::span<const double> deltas, double prior_bandwidth,
                        double delta_bandwidth, std::size_t points);

// Prior: KDE of the calibration speedups with (-1, 1] removed. Likelihood of
// each primary ratio d under hypothesis h: KDE of the deltas at d - h.
Pmf speedup_posterior(std::span<const double> primary, std::span<const double> calib,
                      std::span<const double> deltas, const PosteriorOptions& options = {});

enum class Significance { Significant, Weak, Not };

std::string_view to_string(Significance s);
Significance parse_significance(std::string_view name);

Significance classify(const CredibleInterval& ci, double mean, double median);

struct ComparisonSummary {
  std::string first;   // l1
  std::string second;  // l2
  CredibleInterval ci;
  double median = 0.0;
  double mean = 0.0;
  Significance significance = Significance::Not;
};

ComparisonSummary summarize(std::string first, std::string second, const Pmf& posterior,
                            double ci_mass);

enum class EdgeStyle { Solid, Dotted };

struct GraphNode {
  std::string language;
  double x = 0.0;  // 0 = slowest, 10 = fastest
};

struct GraphEdge {
  std::string from;  // slower
  std::string to;    // faster
  EdgeStyle style = EdgeStyle::Solid;
};

struct RelationshipGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

RelationshipGraph relationship_graph(const std::vector<ComparisonSummary>& summaries);

// Graphviz digraph; weak edges carry style=dotted.
std::string to_dot(const RelationshipGraph& graph, std::string_view name = "speedup");

}  // namespace sebayes::speedup
