#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sebayes/pmf.hpp"

namespace sebayes::defects {

struct WeibullParams {
  double alpha = 1.0;  // scale
  double beta = 1.0;   // shape
};

// w(x) = (beta/alpha) (x/alpha)^(beta-1) exp(-(x/alpha)^beta). At x = 0 the
// limit is returned: 0 for beta > 1, 1/alpha for beta = 1, +inf for beta < 1.
double weibull_pdf(double x, WeibullParams p);
double weibull_log_pdf(double x, WeibullParams p);
// W(x) = 1 - exp(-(x/alpha)^beta)
double weibull_cdf(double x, WeibullParams p);

enum class PriorKind { Uniform, Jeffreys };

std::string_view to_string(PriorKind k);
PriorKind parse_prior_kind(std::string_view name);

enum class AxisSpacing { Linear, Log };

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 1;
  AxisSpacing spacing = AxisSpacing::Linear;

  std::vector<double> points() const;
};

struct WeibullGrid {
  Axis alpha{0.1, 40.0, 400, AxisSpacing::Log};
  Axis beta{0.1, 3.0, 300, AxisSpacing::Linear};
};

// Joint posterior over (alpha, beta): each count d contributes w(d + 1).
// The uniform prior is uniform in density, so points on a log-spaced axis are
// weighted by their value; Jeffreys additionally divides by alpha * beta.
JointPmf2D fit_weibull_posterior(std::span<const double> counts, PriorKind prior,
                                 const WeibullGrid& grid = {});

// Fraction b / x_max where W(b) = 0.8, with b found by bisection to 1e-9.
double pareto_fraction(WeibullParams p, double x_max);

// C(h, d) e^d (1 - e)^(h - d); zero when d > h.
double binomial_pmf(long h, double e, long d);

// Guard for the scaled-Weibull prior at zero total bugs when beta < 1.
inline constexpr double kZeroCountEpsilon = 1e-3;

// Posterior over total bugs 0..n_max in a class where testing with
// effectiveness e found d bugs. Prior mass at h is w(h * E).
Pmf total_bugs_posterior(WeibullParams p, long d, double e, double E, long n_max);

struct EffectivenessGrid {
  Axis e{0.15, 0.5, 8, AxisSpacing::Linear};
  Axis E{0.7, 0.95, 6, AxisSpacing::Linear};
};

void validate(const EffectivenessGrid& grid);

// Posterior over (e, E) cells from a uniform prior, with likelihood
// sum_h B(h, e)[d] * total_bugs_posterior(p, d, e, E)[h].
JointPmf2D effectiveness_posterior(WeibullParams p, long d, const EffectivenessGrid& grid,
                                   long n_max);

// Mixture of total_bugs_posterior over the (e, E) cells, weighted by
// effectiveness_posterior.
Pmf class_total_bugs(WeibullParams p, long d, const EffectivenessGrid& grid, long n_max);

inline long default_n_max(long d) { return std::max(100L, 10 * d); }

struct ClassSummary {
  std::string class_id;
  double median = 0.0;
  CredibleInterval ci;
  std::optional<double> per_method;
};

ClassSummary summarize_class(std::string class_id, const Pmf& total_bugs, double ci_mass,
                             std::optional<long> public_methods);

// Distribution of W(n + 1) over the (alpha, beta) joint, binned onto
// `bins` evenly spaced probability values in [0, 1].
Pmf derived_prob_at_most(long n, const JointPmf2D& joint, std::size_t bins = 101);

}  // namespace sebayes::defects
