#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace sebayes {

// Discrete probability mass function over an ordered set of real-valued
// support points. Categorical domains use category indices as points.
//
// A Pmf is immutable after construction: support points are unique and
// strictly increasing, and masses are finite and nonnegative. Masses are not
// required to sum to one; use normalize() for that.
class Pmf {
 public:
  Pmf() = default;

  // Points need not be sorted; duplicates are rejected.
  Pmf(std::vector<double> support, std::vector<double> mass);

  static Pmf uniform(std::vector<double> support);
  static Pmf point_mass(double at);

  std::span<const double> support() const { return support_; }
  std::span<const double> mass() const { return mass_; }
  std::size_t size() const { return support_.size(); }
  bool empty() const { return support_.empty(); }

  double total() const;
  // Mass at `x`, or zero when `x` is not a support point.
  double at(double x) const;

 private:
  std::vector<double> support_;
  std::vector<double> mass_;
};

struct CredibleInterval {
  double low = 0.0;
  double high = 0.0;
  double mass = 0.0;
};

using Likelihood = std::function<double(double hypothesis)>;
using LogLikelihood = std::function<double(double hypothesis)>;

Pmf normalize(const Pmf& pmf);

// posterior[h] ∝ prior[h] * likelihood(h). Products are formed in log space.
Pmf update(const Pmf& prior, const Likelihood& likelihood);
Pmf update_log(const Pmf& prior, const LogLikelihood& log_likelihood);

// Folds update() over `data`. The log-likelihoods of all data are summed per
// hypothesis before a single normalization, so the result does not depend on
// the order of `data`.
template <typename Range, typename Fn>
Pmf iterate_update(const Pmf& prior, const Range& data, Fn&& likelihood);

double mean(const Pmf& pmf);
// Smallest support point whose cumulative mass reaches q.
double quantile(const Pmf& pmf, double q);
double median(const Pmf& pmf);
// Equal-tailed interval: drops the longest prefix and the longest suffix that
// each hold at most (1 - mass) / 2.
CredibleInterval credible_interval(const Pmf& pmf, double mass);

struct WeightedPmf {
  double weight = 0.0;
  Pmf pmf;
};

Pmf mixture(std::span<const WeightedPmf> components);

// Probability mass over a 2-D grid, stored row-major with x as the row index.
class JointPmf2D {
 public:
  JointPmf2D() = default;
  JointPmf2D(std::vector<double> x_grid, std::vector<double> y_grid,
             std::vector<double> mass);

  std::span<const double> x_grid() const { return x_; }
  std::span<const double> y_grid() const { return y_; }
  std::span<const double> mass() const { return mass_; }
  double at(std::size_t ix, std::size_t iy) const { return mass_[ix * y_.size() + iy]; }
  double total() const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> mass_;
};

JointPmf2D normalize(const JointPmf2D& joint);
Pmf marginal_x(const JointPmf2D& joint);
Pmf marginal_y(const JointPmf2D& joint);
// Highest-mass cell; ties go to the smallest x, then the smallest y.
std::pair<double, double> map_point(const JointPmf2D& joint);

namespace detail {
// Normalizes exp(log_weights) in place of a log-sum-exp; throws AllZeroMass
// when every entry is -inf.
std::vector<double> normalize_log_weights(std::span<const double> log_weights);
}  // namespace detail

template <typename Range, typename Fn>
Pmf iterate_update(const Pmf& prior, const Range& data, Fn&& likelihood) {
  if (std::empty(data)) return normalize(prior);
  return update_log(prior, [&](double h) {
    double acc = 0.0;
    for (const auto& d : data) {
      const double l = likelihood(d, h);
      if (!(l > 0.0)) return -std::numeric_limits<double>::infinity();
      acc += std::log(l);
    }
    return acc;
  });
}

}  // namespace sebayes

