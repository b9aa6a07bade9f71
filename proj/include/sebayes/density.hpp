#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sebayes/pmf.hpp"

namespace sebayes {

// Uniformly spaced evaluation grid.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 2048;
};

inline constexpr std::size_t kDefaultKdePoints = 2048;
inline constexpr double kBandwidthFloor = 1e-6;

// Density values on a uniform grid. The Riemann sum density * spacing is 1
// for every grid produced by kde() and exclude_interval().
class DensityGrid {
 public:
  DensityGrid(std::vector<double> grid, std::vector<double> density);

  std::span<const double> grid() const { return grid_; }
  std::span<const double> density() const { return density_; }
  double spacing() const { return spacing_; }
  double riemann_sum() const;

 private:
  std::vector<double> grid_;
  std::vector<double> density_;
  double spacing_ = 0.0;
};

std::vector<double> linspace(double lo, double hi, std::size_t points);

// Scott's rule n^(-1/5) * sample standard deviation, floored at kBandwidthFloor.
double scott_bandwidth(std::span<const double> samples);

// Gaussian kernel density estimate evaluated pointwise. Works in log space so
// that narrow kernels far from a query point yield a finite log-density.
class GaussianKde {
 public:
  // `bandwidth` empty selects Scott's rule.
  explicit GaussianKde(std::vector<double> samples, std::optional<double> bandwidth = std::nullopt);

  double bandwidth() const { return bandwidth_; }
  std::span<const double> samples() const { return samples_; }
  double log_density(double x) const;
  double density(double x) const;

 private:
  std::vector<double> samples_;
  double bandwidth_ = 0.0;
};

// Default grid: [min - 3h, max + 3h] with kDefaultKdePoints points.
GridSpec default_grid(std::span<const double> samples, double bandwidth);

DensityGrid kde(std::span<const double> samples, std::optional<double> bandwidth = std::nullopt,
                std::optional<GridSpec> grid = std::nullopt);

// Zeroes the density on [lo, hi] (or (lo, hi] when half_open) and
// renormalizes the remainder.
DensityGrid exclude_interval(const DensityGrid& d, double lo, double hi, bool half_open);

Pmf to_pmf(const DensityGrid& d);

}  // namespace sebayes
