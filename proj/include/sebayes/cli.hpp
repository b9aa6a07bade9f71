#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sebayes/defects.hpp"
#include "sebayes/outcomes.hpp"
#include "sebayes/speedup.hpp"

namespace sebayes::cli {

using Report = nlohmann::ordered_json;

struct CompareOutcomesConfig {
  std::filesystem::path data;
  std::filesystem::path baselines;
  // Names from the baseline file, or concatenations of single-letter
  // categories (e.g. "AIL") averaged on the fly. Empty selects every name.
  std::vector<std::string> baseline_set;
  std::vector<outcomes::WeightScheme> schemes{std::begin(outcomes::kAllSchemes),
                                              std::end(outcomes::kAllSchemes)};
  std::optional<double> simplex_step;
  int rescale_b = 1;
  int rescale_r = 2;
  // Group hypothesized to do better; defaults to the first group in the data.
  std::optional<std::string> treatment;
  std::filesystem::path out = "out";
};

struct ComparePerformanceConfig {
  std::filesystem::path primary;
  std::filesystem::path calib;
  speedup::Metric metric = speedup::Metric::Time;
  std::optional<double> bandwidth;  // empty = Scott's rule
  double ci = 0.95;
  std::size_t grid_points = speedup::kDefaultPosteriorPoints;
  bool plots = false;
  std::filesystem::path out = "out";
};

enum class CountColumn { Strong, Simple };

struct FitDefectsConfig {
  std::filesystem::path data;
  defects::PriorKind prior = defects::PriorKind::Uniform;
  defects::WeibullGrid grid;
  CountColumn column = CountColumn::Strong;
  double ci = 0.9;
  std::optional<double> x_max;
  std::filesystem::path out = "out";
};

struct EstimateTotalBugsConfig {
  std::filesystem::path data;
  defects::PriorKind prior = defects::PriorKind::Uniform;
  defects::WeibullGrid grid;
  defects::EffectivenessGrid effectiveness;
  std::optional<long> n_max;  // empty = max(100, 10 d) per class
  double ci = 0.9;
  std::filesystem::path out = "out";
};

struct DerivedPlotsConfig {
  std::filesystem::path data;
  defects::PriorKind prior = defects::PriorKind::Uniform;
  defects::WeibullGrid grid;
  long at_most = 5;
  // The (alpha, beta) joint is restricted to the box of marginal credible
  // intervals of this mass before deriving; 1 keeps the whole joint.
  double ci = 0.9;
  std::size_t bins = 101;
  std::filesystem::path out = "out";
};

double default_simplex_step(std::size_t categories);

// Each subcommand writes its files under `out` and returns the report that is
// also stored there as report.json.
Report compare_outcomes(const CompareOutcomesConfig& config);
Report compare_performance(const ComparePerformanceConfig& config);
Report fit_defects(const FitDefectsConfig& config);
Report estimate_total_bugs(const EstimateTotalBugsConfig& config);
Report derived_plots(const DerivedPlotsConfig& config);

// Full command-line entry point; returns the process exit code.
int main(int argc, char** argv);

}  // namespace sebayes::cli
