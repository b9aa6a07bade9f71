#include "sebayes/outcomes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "sebayes/error.hpp"

namespace sebayes::outcomes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;

void require_same_k(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": " + std::to_string(a) +
                                                  " vs " + std::to_string(b) + " categories");
  }
}

double log_sum_exp(std::span<const double> xs) {
  double top = kNegInf;
  for (double x : xs) top = std::max(top, x);
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

void compositions(std::size_t parts, unsigned total, std::vector<unsigned>& prefix,
                  std::vector<std::vector<unsigned>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned first = total + 1; first-- > 0;) {
    prefix.push_back(first);
    compositions(parts - 1, total - first, prefix, out);
    prefix.pop_back();
  }
}

struct SimplexTerms {
  // log(w_p) + log M(D; p) for each simplex point, split by family.
  std::vector<double> better;
  std::vector<double> not_better;
  std::vector<double> all;
};

SimplexTerms simplex_terms(std::span<const unsigned> counts, const OutcomeDistribution& baseline,
                           WeightScheme scheme, double step) {
  require_same_k(counts.size(), baseline.categories(), "counts vs baseline");
  SimplexTerms terms;
  for (const auto& p : enumerate_simplex(baseline.categories(), step)) {
    const double w = scheme_weight(p, baseline, scheme);
    const double term = w > 0.0 ? std::log(w) + log_multinomial_pmf(counts, p) : kNegInf;
    terms.all.push_back(term);
    (better_than(p, baseline) ? terms.better : terms.not_better).push_back(term);
  }
  return terms;
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorCode::InvalidArgument, "outcome distribution needs categories");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw Error(ErrorCode::InvalidProbability, "negative outcome probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidProbability, "outcome probabilities sum to " + std::to_string(total));
  }
}

double OutcomeDistribution::mean() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) acc += static_cast<double>(k) * probs_[k];
  return acc;
}

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::Uniform: return "uniform";
    case WeightScheme::Triangle: return "triangle";
    case WeightScheme::Power: return "power";
    case WeightScheme::Exp: return "exp";
  }
  return "?";
}

WeightScheme parse_weight_scheme(std::string_view name) {
  for (auto s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown weight scheme '" + std::string(name) + "'");
}

unsigned rescale_outcome(int raw, int lower_bound, int range) {
  if (raw < 1 || raw > 10) throw Error(ErrorCode::OutOfRange, "raw outcome " + std::to_string(raw) + " outside 1..10");
  if (lower_bound < 1 || lower_bound >= 10) {
    throw Error(ErrorCode::OutOfRange, "rescale lower bound " + std::to_string(lower_bound) + " outside 1..9");
  }
  if (range < 1) throw Error(ErrorCode::OutOfRange, "rescale range must be at least 1");
  // Distances scaled by range stay integral, so ties are exact and go to the smaller k.
  unsigned best = 0;
  long long best_gap = std::numeric_limits<long long>::max();
  for (int k = 0; k <= range; ++k) {
    const long long gap = std::llabs(static_cast<long long>(lower_bound) * range +
                                     static_cast<long long>(k) * (10 - lower_bound) - static_cast<long long>(raw) * range);
    if (gap < best_gap) {
      best_gap = gap;
      best = static_cast<unsigned>(k);
    }
  }
  return best;
}

OutcomeDistribution baseline_distribution(
    std::span<const std::string> categories,
    const std::map<std::string, OutcomeDistribution, std::less<>>& singletons) {
  if (categories.empty()) throw Error(ErrorCode::EmptyCategorySet, "baseline needs at least one category");
  std::vector<double> acc;
  for (const auto& c : categories) {
    const auto it = singletons.find(c);
    if (it == singletons.end()) throw Error(ErrorCode::InvalidArgument, "unknown process category '" + c + "'");
    if (acc.empty()) acc.assign(it->second.categories(), 0.0);
    require_same_k(acc.size(), it->second.categories(), "baseline singletons");
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += it->second[k];
  }
  for (double& a : acc) a /= static_cast<double>(categories.size());
  return OutcomeDistribution(std::move(acc));
}

bool better_than(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  require_same_k(p.categories(), q.categories(), "better_than");
  return p.mean() > q.mean() + kTieTolerance;
}

double log_multinomial_pmf(std::span<const unsigned> counts, const OutcomeDistribution& p) {
  require_same_k(counts.size(), p.categories(), "multinomial");
  unsigned n = 0;
  double acc = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;  // 0^0 = 1
    if (p[k] == 0.0) return kNegInf;
    n += counts[k];
    acc += counts[k] * std::log(p[k]) - std::lgamma(counts[k] + 1.0);
  }
  return acc + std::lgamma(n + 1.0);
}

double multinomial_pmf(std::span<const unsigned> counts, const OutcomeDistribution& p) {
  return std::exp(log_multinomial_pmf(counts, p));
}

std::vector<OutcomeDistribution> enumerate_simplex(std::size_t categories, double step) {
  if (categories == 0) throw Error(ErrorCode::InvalidArgument, "simplex needs at least one category");
  if (!(step > 0.0 && step <= 1.0)) throw Error(ErrorCode::InvalidStep, "simplex step must lie in (0,1]");
  const double divisions = std::round(1.0 / step);
  if (std::abs(divisions * step - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidStep, "simplex step " + std::to_string(step) + " does not divide 1");
  }
  const auto n = static_cast<unsigned>(divisions);
  std::vector<std::vector<unsigned>> parts;
  std::vector<unsigned> prefix;
  compositions(categories, n, prefix, parts);

  std::vector<OutcomeDistribution> out;
  out.reserve(parts.size());
  for (const auto& c : parts) {
    std::vector<double> probs(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) probs[k] = static_cast<double>(c[k]) / n;
    out.emplace_back(std::move(probs));
  }
  return out;
}

double scheme_weight(const OutcomeDistribution& p, const OutcomeDistribution& baseline,
                     WeightScheme scheme) {
  require_same_k(p.categories(), baseline.categories(), "scheme_weight");
  const double delta = std::abs(p.mean() - baseline.mean());
  switch (scheme) {
    case WeightScheme::Uniform: return 1.0;
    case WeightScheme::Triangle: {
      const double delta_max = static_cast<double>(p.categories() - 1);
      if (delta_max == 0.0) return 1.0;
      return std::max(0.0, 1.0 - delta / delta_max);
    }
    case WeightScheme::Power: return 1.0 / (1.0 + delta);
    case WeightScheme::Exp: return std::exp(-delta);
  }
  return 1.0;
}

double log_likelihood_better(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                             WeightScheme scheme, double step) {
  const auto t = simplex_terms(data.treatment, baseline, scheme, step);
  const auto c = simplex_terms(data.control, baseline, scheme, step);
  return log_sum_exp(t.better) + log_sum_exp(c.not_better);
}

double log_likelihood_equal(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                            WeightScheme scheme, double step) {
  const auto t = simplex_terms(data.treatment, baseline, scheme, step);
  const auto c = simplex_terms(data.control, baseline, scheme, step);
  return log_sum_exp(t.all) + log_sum_exp(c.all);
}

double likelihood_better(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                         WeightScheme scheme, double step) {
  return std::exp(log_likelihood_better(data, baseline, scheme, step));
}

double likelihood_equal(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                        WeightScheme scheme, double step) {
  return std::exp(log_likelihood_equal(data, baseline, scheme, step));
}

double bayes_factor(const OutcomeCounts& data, const OutcomeDistribution& baseline,
                    WeightScheme scheme, double step) {
  const double denominator = log_likelihood_equal(data, baseline, scheme, step);
  if (denominator == kNegInf) {
    throw Error(ErrorCode::ZeroDenominator, "data has zero likelihood under the no-difference hypothesis");
  }
  return std::exp(log_likelihood_better(data, baseline, scheme, step) - denominator);
}

std::string_view to_string(Evidence e) {
  switch (e) {
    case Evidence::Negative: return "negative";
    case Evidence::Barely: return "barely";
    case Evidence::Substantial: return "substantial";
    case Evidence::Strong: return "strong";
    case Evidence::VeryStrong: return "very strong";
    case Evidence::Decisive: return "decisive";
  }
  return "?";
}

Evidence jeffreys_label(double k) {
  if (!(k > 0.0)) throw Error(ErrorCode::NonPositiveK, "Bayes factor must be positive");
  if (k <= 1.0) return Evidence::Negative;
  if (k <= 3.0) return Evidence::Barely;
  if (k <= 10.0) return Evidence::Substantial;
  if (k <= 32.0) return Evidence::Strong;
  if (k <= 100.0) return Evidence::VeryStrong;
  return Evidence::Decisive;
}

}  // namespace sebayes::outcomes
