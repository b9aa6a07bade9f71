#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sebayes::outcomes {

// Probability vector over K ordered outcome categories 0..K-1.
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  // Probabilities must be nonnegative and sum to 1 within 1e-9.
  explicit OutcomeDistribution(std::vector<double> probs);

  std::span<const double> probs() const { return probs_; }
  std::size_t categories() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  // sum_k k * p[k]
  double mean() const;

  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;

 private:
  std::vector<double> probs_;
};

using Counts = std::vector<unsigned>;

// Per-category counts for the treatment group (hypothesized better) and the
// control group.
struct OutcomeCounts {
  Counts treatment;
  Counts control;
};

enum class WeightScheme { Uniform, Triangle, Power, Exp };

std::string_view to_string(WeightScheme scheme);
WeightScheme parse_weight_scheme(std::string_view name);
inline constexpr WeightScheme kAllSchemes[] = {WeightScheme::Uniform, WeightScheme::Triangle,
                                               WeightScheme::Power, WeightScheme::Exp};

// Maps a raw 1..10 score onto 0..range by nearest uniformly spaced point over
// [lower_bound, 10]; ties go to the smaller category.
unsigned rescale_outcome(int raw, int lower_bound, int range);

// Unweighted per-category average of the named singleton distributions.
OutcomeDistribution baseline_distribution(
    std::span<const std::string> categories,
    const std::map<std::string, OutcomeDistribution, std::less<>>& singletons);

// mean(p) > mean(q); means closer than 1e-12 count as a tie.
bool better_than(const OutcomeDistribution& p, const OutcomeDistribution& q);

double multinomial_pmf(std::span<const unsigned> counts, const OutcomeDistribution& p);
double log_multinomial_pmf(std::span<const unsigned> counts, const OutcomeDistribution& p);

// All distributions over K categories whose components are multiples of
// `step`, in lexicographically decreasing order of the first component.
std::vector<OutcomeDistribution> enumerate_simplex(std::size_t categories, double step);

double scheme_weight(const OutcomeDistribution& p, const OutcomeDistribution& baseline,
                     WeightScheme scheme);

// Likelihood of the data under "treatment is better than the baseline and
// control is not", averaged over the simplex with scheme weights.
double likelihood_better(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                         WeightScheme scheme, double step);
// Likelihood of the data when both groups draw from the same family.
double likelihood_equal(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                        WeightScheme scheme, double step);
double bayes_factor(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                    WeightScheme scheme, double step);

// Log-space variants used by bayes_factor to stay finite on large samples.
double log_likelihood_better(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                             WeightScheme scheme, double step);
double log_likelihood_equal(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                            WeightScheme scheme, double step);

enum class Evidence { Negative, Barely, Substantial, Strong, VeryStrong, Decisive };

std::string_view to_string(Evidence e);
// Jeffreys' interpretation bands: (0,1], (1,3], (3,10], (10,32], (32,100], (100,inf).
Evidence jeffreys_label(double k);

}  // namespace sebayes::outcomes
