#include "sebayes/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "sebayes/error.hpp"

namespace sebayes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_samples(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySamples, "kernel density needs at least one sample");
  for (double s : samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "samples must be finite");
  }
}

void check_grid(const GridSpec& g) {
  if (!(std::isfinite(g.lo) && std::isfinite(g.hi) && g.lo < g.hi) || g.points < 2) {
    throw Error(ErrorCode::InvalidGrid, "grid needs lo < hi and at least two points");
  }
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  if (points == 1) return {lo};
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

DensityGrid::DensityGrid(std::vector<double> grid, std::vector<double> density)
    : grid_(std::move(grid)), density_(std::move(density)) {
  if (grid_.size() < 2 || grid_.size() != density_.size()) {
    throw Error(ErrorCode::InvalidGrid, "density grid needs matching grid and values, at least two points");
  }
  spacing_ = (grid_.back() - grid_.front()) / static_cast<double>(grid_.size() - 1);
  if (!(spacing_ > 0.0)) throw Error(ErrorCode::InvalidGrid, "grid spacing must be positive");
  for (double v : density_) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidArgument, "density must be finite and nonnegative");
  }
}

double DensityGrid::riemann_sum() const {
  return std::accumulate(density_.begin(), density_.end(), 0.0) * spacing_;
}

double scott_bandwidth(std::span<const double> samples) {
  check_samples(samples);
  const double n = static_cast<double>(samples.size());
  double sigma = 0.0;
  if (samples.size() > 1) {
    const double mu = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double s : samples) ss += (s - mu) * (s - mu);
    sigma = std::sqrt(ss / (n - 1.0));
  }
  return std::max(std::pow(n, -0.2) * sigma, kBandwidthFloor);
}

GaussianKde::GaussianKde(std::vector<double> samples, std::optional<double> bandwidth)
    : samples_(std::move(samples)) {
  check_samples(samples_);
  // Sorted storage makes every evaluation independent of the input order.
  std::sort(samples_.begin(), samples_.end());
  if (bandwidth) {
    if (!(std::isfinite(*bandwidth) && *bandwidth > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "bandwidth must be positive");
    }
    bandwidth_ = *bandwidth;
  } else {
    bandwidth_ = scott_bandwidth(samples_);
  }
}

double GaussianKde::log_density(double x) const {
  // log( (1/n) sum_i phi((x - s_i)/h) / h ), via log-sum-exp.
  double top = kNegInf;
  for (double s : samples_) {
    const double z = (x - s) / bandwidth_;
    top = std::max(top, -0.5 * z * z);
  }
  double acc = 0.0;
  for (double s : samples_) {
    const double z = (x - s) / bandwidth_;
    acc += std::exp(-0.5 * z * z - top);
  }
  const double n = static_cast<double>(samples_.size());
  return top + std::log(acc) - std::log(n * bandwidth_) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double GaussianKde::density(double x) const { return std::exp(log_density(x)); }

GridSpec default_grid(std::span<const double> samples, double bandwidth) {
  check_samples(samples);
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  return {*mn - 3.0 * bandwidth, *mx + 3.0 * bandwidth, kDefaultKdePoints};
}

DensityGrid kde(std::span<const double> samples, std::optional<double> bandwidth,
                std::optional<GridSpec> grid) {
  const GaussianKde estimator(std::vector<double>(samples.begin(), samples.end()), bandwidth);
  const GridSpec spec = grid ? *grid : default_grid(samples, estimator.bandwidth());
  check_grid(spec);
  std::vector<double> points = linspace(spec.lo, spec.hi, spec.points);
  std::vector<double> log_values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) log_values[i] = estimator.log_density(points[i]);

  // Normalizing in log space keeps a kernel much narrower than the grid
  // spacing from vanishing: its mass lands on the nearest grid point.
  std::vector<double> density = detail::normalize_log_weights(log_values);
  const double spacing = (spec.hi - spec.lo) / static_cast<double>(spec.points - 1);
  for (double& v : density) v /= spacing;
  return DensityGrid(std::move(points), std::move(density));
}

DensityGrid exclude_interval(const DensityGrid& d, double lo, double hi, bool half_open) {
  if (!(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "exclusion interval needs lo <= hi");
  std::vector<double> density(d.density().begin(), d.density().end());
  double kept = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    const double x = d.grid()[i];
    const bool inside = (half_open ? x > lo : x >= lo) && x <= hi;
    if (inside) density[i] = 0.0;
    kept += density[i];
  }
  if (!(kept > 0.0)) {
    throw Error(ErrorCode::EverythingExcluded,
                "no density left outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const double scale = 1.0 / (kept * d.spacing());
  for (double& v : density) v *= scale;
  return DensityGrid(std::vector<double>(d.grid().begin(), d.grid().end()), std::move(density));
}

Pmf to_pmf(const DensityGrid& d) {
  std::vector<double> mass(d.density().begin(), d.density().end());
  for (double& m : mass) m *= d.spacing();
  return Pmf(std::vector<double>(d.grid().begin(), d.grid().end()), std::move(mass));
}

}  // namespace sebayes
