#include "sebayes/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sebayes/error.hpp"

namespace sebayes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Slack for cumulative-sum comparisons so that a tail holding exactly the
// allowed mass is not rejected because of rounding.
constexpr double kCumulativeSlack = 1e-12;

void check_masses(std::span<const double> mass) {
  for (double m : mass) {
    if (!std::isfinite(m) || m < 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "pmf masses must be finite and nonnegative, got " + std::to_string(m));
    }
  }
}

double sum(std::span<const double> xs) { return std::accumulate(xs.begin(), xs.end(), 0.0); }

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AllZeroMass: return "AllZeroMass";
    case ErrorCode::InvalidMass: return "InvalidMass";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::EverythingExcluded: return "EverythingExcluded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyCategorySet: return "EmptyCategorySet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NonPositiveK: return "NonPositiveK";
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::EmptyCalibration: return "EmptyCalibration";
    case ErrorCode::EmptyPrimary: return "EmptyPrimary";
    case ErrorCode::NonPositiveParams: return "NonPositiveParams";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Pmf::Pmf(std::vector<double> support, std::vector<double> mass) {
  if (support.size() != mass.size()) {
    throw Error(ErrorCode::DimensionMismatch, "support and mass lengths differ");
  }
  check_masses(mass);
  std::vector<std::size_t> order(support.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
  support_.reserve(order.size());
  mass_.reserve(order.size());
  for (std::size_t i : order) {
    if (!std::isfinite(support[i])) {
      throw Error(ErrorCode::InvalidArgument, "support points must be finite");
    }
    if (!support_.empty() && support_.back() == support[i]) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate support point " + std::to_string(support[i]));
    }
    support_.push_back(support[i]);
    mass_.push_back(mass[i]);
  }
}

Pmf Pmf::uniform(std::vector<double> support) {
  const std::size_t n = support.size();
  if (n == 0) throw Error(ErrorCode::AllZeroMass, "uniform pmf over an empty support");
  return Pmf(std::move(support), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point_mass(double at) { return Pmf({at}, {1.0}); }

double Pmf::total() const { return sum(mass_); }

double Pmf::at(double x) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), x);
  if (it == support_.end() || *it != x) return 0.0;
  return mass_[static_cast<std::size_t>(it - support_.begin())];
}

namespace detail {

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  double top = kNegInf;
  for (double lw : log_weights) {
    if (std::isnan(lw)) throw Error(ErrorCode::InvalidArgument, "NaN log-weight");
    top = std::max(top, lw);
  }
  if (top == kNegInf) {
    throw Error(ErrorCode::AllZeroMass, "every hypothesis has zero weight");
  }
  if (top == std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::InvalidArgument, "infinite weight");
  }
  std::vector<double> out(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = log_weights[i] == kNegInf ? 0.0 : std::exp(log_weights[i] - top);
    total += out[i];
  }
  for (double& w : out) w /= total;
  return out;
}

}  // namespace detail

Pmf normalize(const Pmf& pmf) {
  const double total = pmf.total();
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroMass, "cannot normalize a pmf with zero mass");
  std::vector<double> mass(pmf.mass().begin(), pmf.mass().end());
  for (double& m : mass) m /= total;
  return Pmf(std::vector<double>(pmf.support().begin(), pmf.support().end()), std::move(mass));
}

Pmf update_log(const Pmf& prior, const LogLikelihood& log_likelihood) {
  const auto support = prior.support();
  const auto mass = prior.mass();
  std::vector<double> log_post(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (mass[i] == 0.0) {
      log_post[i] = kNegInf;
      continue;
    }
    const double ll = log_likelihood(support[i]);
    log_post[i] = ll == kNegInf ? kNegInf : std::log(mass[i]) + ll;
  }
  return Pmf(std::vector<double>(support.begin(), support.end()),
             detail::normalize_log_weights(log_post));
}

Pmf update(const Pmf& prior, const Likelihood& likelihood) {
  return update_log(prior, [&](double h) {
    const double l = likelihood(h);
    if (std::isnan(l) || l < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "likelihood must be nonnegative");
    }
    return l == 0.0 ? kNegInf : std::log(l);
  });
}

double mean(const Pmf& pmf) {
  const double total = pmf.total();
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroMass, "mean of a zero-mass pmf");
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) acc += pmf.support()[i] * pmf.mass()[i];
  return acc / total;
}

double quantile(const Pmf& pmf, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidMass, "quantile outside [0,1]");
  const double total = pmf.total();
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroMass, "quantile of a zero-mass pmf");
  double cum = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    cum += pmf.mass()[i] / total;
    if (pmf.mass()[i] > 0.0 && cum >= q - kCumulativeSlack) return pmf.support()[i];
  }
  // Rounding left the running sum just short of q; the last positive point wins.
  for (std::size_t i = pmf.size(); i-- > 0;) {
    if (pmf.mass()[i] > 0.0) return pmf.support()[i];
  }
  return pmf.support().back();
}

double median(const Pmf& pmf) { return quantile(pmf, 0.5); }

CredibleInterval credible_interval(const Pmf& pmf, double mass) {
  if (!(mass > 0.0 && mass < 1.0)) {
    throw Error(ErrorCode::InvalidMass, "credible mass must lie in (0,1), got " + std::to_string(mass));
  }
  const double total = pmf.total();
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroMass, "interval of a zero-mass pmf");
  const double tail = (1.0 - mass) / 2.0;
  const auto s = pmf.support();
  const auto m = pmf.mass();
  const std::size_t n = s.size();

  std::size_t lo = 0;
  double prefix = 0.0;
  while (lo < n && prefix + m[lo] / total <= tail + kCumulativeSlack) prefix += m[lo++] / total;
  std::size_t hi = n;
  double suffix = 0.0;
  while (hi > lo + 1 && suffix + m[hi - 1] / total <= tail + kCumulativeSlack) suffix += m[--hi] / total;
  if (lo >= n) lo = n - 1;
  return {s[lo], s[hi - 1], mass};
}

Pmf mixture(std::span<const WeightedPmf> components) {
  std::vector<double> points;
  double weight_total = 0.0;
  for (const auto& c : components) {
    if (!std::isfinite(c.weight) || c.weight < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "mixture weights must be nonnegative");
    }
    weight_total += c.weight;
    points.insert(points.end(), c.pmf.support().begin(), c.pmf.support().end());
  }
  if (!(weight_total > 0.0)) throw Error(ErrorCode::AllZeroMass, "all mixture weights are zero");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<double> mass(points.size(), 0.0);
  for (const auto& c : components) {
    if (c.weight == 0.0) continue;
    const double total = c.pmf.total();
    if (!(total > 0.0)) throw Error(ErrorCode::AllZeroMass, "mixture component has zero mass");
    for (std::size_t i = 0; i < c.pmf.size(); ++i) {
      const auto it = std::lower_bound(points.begin(), points.end(), c.pmf.support()[i]);
      mass[static_cast<std::size_t>(it - points.begin())] += c.weight * c.pmf.mass()[i] / total;
    }
  }
  return normalize(Pmf(std::move(points), std::move(mass)));
}

JointPmf2D::JointPmf2D(std::vector<double> x_grid, std::vector<double> y_grid,
                       std::vector<double> mass)
    : x_(std::move(x_grid)), y_(std::move(y_grid)), mass_(std::move(mass)) {
  if (x_.empty() || y_.empty()) throw Error(ErrorCode::InvalidGrid, "joint grid axes must be nonempty");
  if (mass_.size() != x_.size() * y_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "joint mass size does not match grid");
  }
  if (!std::is_sorted(x_.begin(), x_.end()) || !std::is_sorted(y_.begin(), y_.end()) ||
      std::adjacent_find(x_.begin(), x_.end()) != x_.end() ||
      std::adjacent_find(y_.begin(), y_.end()) != y_.end()) {
    throw Error(ErrorCode::InvalidGrid, "joint grid axes must be strictly increasing");
  }
  check_masses(mass_);
}

double JointPmf2D::total() const { return sum(mass_); }

JointPmf2D normalize(const JointPmf2D& joint) {
  const double total = joint.total();
  if (!(total > 0.0)) throw Error(ErrorCode::AllZeroMass, "cannot normalize a joint with zero mass");
  std::vector<double> mass(joint.mass().begin(), joint.mass().end());
  for (double& m : mass) m /= total;
  return JointPmf2D({joint.x_grid().begin(), joint.x_grid().end()},
                    {joint.y_grid().begin(), joint.y_grid().end()}, std::move(mass));
}

Pmf marginal_x(const JointPmf2D& joint) {
  const std::size_t nx = joint.x_grid().size();
  const std::size_t ny = joint.y_grid().size();
  std::vector<double> mass(nx, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) mass[i] += joint.at(i, j);
  return normalize(Pmf({joint.x_grid().begin(), joint.x_grid().end()}, std::move(mass)));
}

Pmf marginal_y(const JointPmf2D& joint) {
  const std::size_t nx = joint.x_grid().size();
  const std::size_t ny = joint.y_grid().size();
  std::vector<double> mass(ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) mass[j] += joint.at(i, j);
  return normalize(Pmf({joint.y_grid().begin(), joint.y_grid().end()}, std::move(mass)));
}

std::pair<double, double> map_point(const JointPmf2D& joint) {
  std::size_t best_i = 0, best_j = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < joint.x_grid().size(); ++i) {
    for (std::size_t j = 0; j < joint.y_grid().size(); ++j) {
      if (joint.at(i, j) > best) {
        best = joint.at(i, j);
        best_i = i;
        best_j = j;
      }
    }
  }
  return {joint.x_grid()[best_i], joint.y_grid()[best_j]};
}

}  // namespace sebayes
