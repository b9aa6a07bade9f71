#include "sebayes/defects.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sebayes/density.hpp"
#include "sebayes/error.hpp"

namespace sebayes::defects {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_params(WeibullParams p) {
  if (!(p.alpha > 0.0 && p.beta > 0.0 && std::isfinite(p.alpha) && std::isfinite(p.beta))) {
    throw Error(ErrorCode::NonPositiveParams, "Weibull parameters must be positive");
  }
}

void check_axis(const Axis& a, std::string_view name, double upper = kInf) {
  if (a.steps == 0) throw Error(ErrorCode::InvalidGrid, std::string(name) + " axis needs at least one step");
  const bool ok = a.lo > 0.0 && a.hi <= upper && (a.steps == 1 ? a.lo <= a.hi : a.lo < a.hi);
  if (!ok) {
    throw Error(ErrorCode::InvalidGrid, std::string(name) + " axis range [" + std::to_string(a.lo) +
                                            ", " + std::to_string(a.hi) + "] is invalid");
  }
}

// Prior weight per axis point that makes a flat density uniform: equal on a
// linear axis, proportional to the point on a log axis (d alpha = alpha d log alpha).
std::vector<double> cell_widths(const Axis& axis, std::span<const double> pts) {
  if (axis.spacing == AxisSpacing::Linear) return std::vector<double>(pts.size(), 1.0);
  return {pts.begin(), pts.end()};
}

double log_binomial_pmf(long h, double e, long d) {
  if (d < 0 || d > h) return kNegInf;
  double acc = std::lgamma(h + 1.0) - std::lgamma(d + 1.0) - std::lgamma(h - d + 1.0);
  if (d > 0) acc += d * std::log(e);
  if (h - d > 0) {
    if (e == 1.0) return kNegInf;
    acc += (h - d) * std::log1p(-e);
  }
  return acc;
}

}  // namespace

double weibull_log_pdf(double x, WeibullParams p) {
  check_params(p);
  if (x < 0.0) return kNegInf;
  if (x == 0.0) {
    if (p.beta > 1.0) return kNegInf;
    if (p.beta == 1.0) return -std::log(p.alpha);
    return kInf;
  }
  const double log_ratio = std::log(x) - std::log(p.alpha);
  return std::log(p.beta) - std::log(p.alpha) + (p.beta - 1.0) * log_ratio -
         std::exp(p.beta * log_ratio);
}

double weibull_pdf(double x, WeibullParams p) { return std::exp(weibull_log_pdf(x, p)); }

double weibull_cdf(double x, WeibullParams p) {
  check_params(p);
  if (x <= 0.0) return 0.0;
  return -std::expm1(-std::pow(x / p.alpha, p.beta));
}

std::string_view to_string(PriorKind k) { return k == PriorKind::Uniform ? "uniform" : "jeffreys"; }

PriorKind parse_prior_kind(std::string_view name) {
  if (name == "uniform") return PriorKind::Uniform;
  if (name == "jeffreys") return PriorKind::Jeffreys;
  throw Error(ErrorCode::InvalidArgument, "unknown prior '" + std::string(name) + "'");
}

std::vector<double> Axis::points() const {
  if (steps == 1) return {lo};
  if (spacing == AxisSpacing::Linear) return linspace(lo, hi, steps);
  std::vector<double> out = linspace(std::log(lo), std::log(hi), steps);
  for (double& v : out) v = std::exp(v);
  out.front() = lo;
  out.back() = hi;
  return out;
}

JointPmf2D fit_weibull_posterior(std::span<const double> counts, PriorKind prior,
                                 const WeibullGrid& grid) {
  if (counts.empty()) throw Error(ErrorCode::InvalidArgument, "Weibull fit needs at least one count");
  for (double c : counts) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidValue, "bug counts must be nonnegative");
  }
  check_axis(grid.alpha, "alpha");
  check_axis(grid.beta, "beta");
  const auto alphas = grid.alpha.points();
  const auto betas = grid.beta.points();
  const auto alpha_w = cell_widths(grid.alpha, alphas);
  const auto beta_w = cell_widths(grid.beta, betas);

  std::vector<double> log_shifted(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) log_shifted[k] = std::log(counts[k] + 1.0);

  std::vector<double> log_post(alphas.size() * betas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double log_alpha = std::log(alphas[i]);
    for (std::size_t j = 0; j < betas.size(); ++j) {
      const double beta = betas[j];
      double ll = std::log(alpha_w[i]) + std::log(beta_w[j]);
      if (prior == PriorKind::Jeffreys) ll -= log_alpha + std::log(beta);
      const double log_norm = std::log(beta) - log_alpha;
      for (double lx : log_shifted) {
        const double r = lx - log_alpha;
        ll += log_norm + (beta - 1.0) * r - std::exp(beta * r);
      }
      log_post[i * betas.size() + j] = ll;
    }
  }
  return JointPmf2D(alphas, betas, detail::normalize_log_weights(log_post));
}

double pareto_fraction(WeibullParams p, double x_max) {
  check_params(p);
  if (!(x_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "x_max must be positive");
  double lo = 0.0;
  double hi = p.alpha;
  while (weibull_cdf(hi, p) < 0.8) hi *= 2.0;
  while (hi - lo > 1e-9 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (weibull_cdf(mid, p) < 0.8 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) / x_max;
}

double binomial_pmf(long h, double e, long d) {
  if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::InvalidProbability, "effectiveness must lie in (0,1]");
  if (h < 0 || d < 0) throw Error(ErrorCode::InvalidArgument, "binomial counts must be nonnegative");
  return std::exp(log_binomial_pmf(h, e, d));
}

Pmf total_bugs_posterior(WeibullParams p, long d, double e, double E, long n_max) {
  check_params(p);
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "found bugs must be nonnegative");
  if (n_max < d) throw Error(ErrorCode::InvalidArgument, "n_max must be at least the found bugs");
  if (!(e > 0.0 && e <= 1.0) || !(E > 0.0 && E <= 1.0)) {
    throw Error(ErrorCode::InvalidProbability, "effectiveness must lie in (0,1]");
  }
  std::vector<double> support(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> log_post(support.size());
  for (long h = 0; h <= n_max; ++h) {
    support[static_cast<std::size_t>(h)] = static_cast<double>(h);
    double log_prior = weibull_log_pdf(static_cast<double>(h) * E, p);
    if (log_prior == kInf) log_prior = weibull_log_pdf(kZeroCountEpsilon, p);
    const double ll = log_binomial_pmf(h, e, d);
    log_post[static_cast<std::size_t>(h)] =
        (log_prior == kNegInf || ll == kNegInf) ? kNegInf : log_prior + ll;
  }
  return Pmf(std::move(support), detail::normalize_log_weights(log_post));
}

void validate(const EffectivenessGrid& grid) {
  check_axis(grid.e, "e", 1.0);
  check_axis(grid.E, "E", 1.0);
}

namespace {

struct CellPosteriors {
  std::vector<double> es;
  std::vector<double> Es;
  std::vector<std::optional<Pmf>> bugs;  // row-major over (e, E)
  std::vector<double> log_likelihood;
};

CellPosteriors cell_posteriors(WeibullParams p, long d, const EffectivenessGrid& grid, long n_max) {
  validate(grid);
  CellPosteriors c{grid.e.points(), grid.E.points(), {}, {}};
  for (double e : c.es) {
    for (double E : c.Es) {
      std::optional<Pmf> b;
      try {
        b = total_bugs_posterior(p, d, e, E, n_max);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::AllZeroMass) throw;
      }
      double like = 0.0;
      if (b) {
        for (std::size_t h = 0; h < b->size(); ++h) {
          like += binomial_pmf(static_cast<long>(h), e, d) * b->mass()[h];
        }
      }
      c.log_likelihood.push_back(like > 0.0 ? std::log(like) : kNegInf);
      c.bugs.push_back(std::move(b));
    }
  }
  return c;
}

}  // namespace

JointPmf2D effectiveness_posterior(WeibullParams p, long d, const EffectivenessGrid& grid,
                                   long n_max) {
  auto cells = cell_posteriors(p, d, grid, n_max);
  return JointPmf2D(std::move(cells.es), std::move(cells.Es),
                    detail::normalize_log_weights(cells.log_likelihood));
}

Pmf class_total_bugs(WeibullParams p, long d, const EffectivenessGrid& grid, long n_max) {
  const auto cells = cell_posteriors(p, d, grid, n_max);
  const auto weights = detail::normalize_log_weights(cells.log_likelihood);
  std::vector<WeightedPmf> components;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 0.0 && cells.bugs[k]) components.push_back({weights[k], *cells.bugs[k]});
  }
  return mixture(components);
}

ClassSummary summarize_class(std::string class_id, const Pmf& total_bugs, double ci_mass,
                             std::optional<long> public_methods) {
  ClassSummary s;
  s.class_id = std::move(class_id);
  s.median = median(total_bugs);
  s.ci = credible_interval(total_bugs, ci_mass);
  if (public_methods) {
    if (*public_methods <= 0) throw Error(ErrorCode::InvalidValue, "public method count must be positive");
    s.per_method = s.median / static_cast<double>(*public_methods);
  }
  return s;
}

Pmf derived_prob_at_most(long n, const JointPmf2D& joint, std::size_t bins) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "bug bound must be nonnegative");
  if (bins < 2) throw Error(ErrorCode::InvalidGrid, "need at least two probability bins");
  std::vector<double> support = linspace(0.0, 1.0, bins);
  std::vector<double> mass(bins, 0.0);
  const double scale = static_cast<double>(bins - 1);
  for (std::size_t i = 0; i < joint.x_grid().size(); ++i) {
    for (std::size_t j = 0; j < joint.y_grid().size(); ++j) {
      const double m = joint.at(i, j);
      if (m == 0.0) continue;
      const double w = weibull_cdf(static_cast<double>(n) + 1.0, {joint.x_grid()[i], joint.y_grid()[j]});
      mass[static_cast<std::size_t>(std::lround(w * scale))] += m;
    }
  }
  return normalize(Pmf(std::move(support), std::move(mass)));
}

}  // namespace sebayes::defects
