#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "sebayes/error.hpp"
#include "sebayes/pmf.hpp"

using namespace sebayes;

namespace {

void expect_mass(const Pmf& p, std::vector<std::pair<double, double>> expected, double tol = 1e-12) {
  ASSERT_EQ(p.size(), expected.size());
  for (const auto& [x, m] : expected) EXPECT_NEAR(p.at(x), m, tol) << "at " << x;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no sebayes::Error thrown";
  return ErrorCode::IoError;
}

// Equal-tailed interval by explicit cumulative sums from both ends.
std::pair<double, double> interval_oracle(const std::vector<double>& xs, const std::vector<double>& ps,
                                          double mass) {
  const double tail = (1.0 - mass) / 2.0;
  std::size_t lo = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i <= k; ++i) c += ps[i];
    if (c <= tail + 1e-12) lo = k + 1;
  }
  std::size_t hi = xs.size() - 1;
  for (std::size_t k = xs.size(); k-- > lo + 1;) {
    double c = 0.0;
    for (std::size_t i = k; i < xs.size(); ++i) c += ps[i];
    if (c <= tail + 1e-12) hi = k - 1;
  }
  return {xs[lo], xs[hi]};
}

}  // namespace

TEST(Pmf, ConstructionSortsAndValidates) {
  Pmf p({3, 1, 2}, {0.5, 0.25, 0.25});
  EXPECT_EQ(p.support()[0], 1);
  EXPECT_EQ(p.support()[2], 3);
  EXPECT_DOUBLE_EQ(p.at(3), 0.5);
  EXPECT_EQ(p.at(2.5), 0.0);
  EXPECT_EQ(code_of([] { Pmf({1, 1}, {0.5, 0.5}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Pmf({1, 2}, {-0.5, 1.5}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Pmf({1, 2}, {1.0}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { Pmf({NAN}, {1.0}); }), ErrorCode::InvalidArgument);
}

TEST(Pmf, NormalizeExamples) {
  expect_mass(normalize(Pmf({1, 2}, {2, 2})), {{1, 0.5}, {2, 0.5}});
  expect_mass(normalize(Pmf({0}, {1})), {{0, 1}});
  expect_mass(normalize(Pmf({1, 2}, {1, 3})), {{1, 0.25}, {2, 0.75}});
  EXPECT_EQ(code_of([] { normalize(Pmf({1, 2}, {0, 0})); }), ErrorCode::AllZeroMass);
}

TEST(Pmf, UpdateStaticAnalyzerExample) {
  // 0 = error-free, 1 = has error; the analyzer flags the program.
  const Pmf prior({0, 1}, {0.01, 0.99});
  const Pmf post = update(prior, [](double h) { return h == 0 ? 0.99 : 0.01; });
  EXPECT_NEAR(post.at(0), 0.5, 1e-12);
  EXPECT_NEAR(post.at(1), 0.5, 1e-12);
}

TEST(Pmf, UpdateExamples) {
  const Pmf u = Pmf::uniform({1, 2, 3});
  expect_mass(update(u, [](double) { return 7.0; }), {{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}});
  expect_mass(update(u, [](double h) { return h; }), {{1, 1.0 / 6}, {2, 2.0 / 6}, {3, 3.0 / 6}});
  EXPECT_EQ(code_of([&] { update(u, [](double) { return 0.0; }); }), ErrorCode::AllZeroMass);
  EXPECT_EQ(code_of([&] { update(u, [](double) { return -1.0; }); }), ErrorCode::InvalidArgument);
}

TEST(Pmf, IterateUpdateCoin) {
  const Pmf prior = Pmf::uniform({0.25, 0.5, 0.75});
  auto coin = [](int heads, double bias) { return heads ? bias : 1.0 - bias; };
  expect_mass(iterate_update(prior, std::vector<int>{1}, coin), {{0.25, 1.0 / 6}, {0.5, 2.0 / 6}, {0.75, 3.0 / 6}});
  const Pmf none = iterate_update(prior, std::vector<int>{}, coin);
  expect_mass(none, {{0.25, 1.0 / 3}, {0.5, 1.0 / 3}, {0.75, 1.0 / 3}});
  const Pmf ab = iterate_update(prior, std::vector<int>{1, 0}, coin);
  const Pmf ba = iterate_update(prior, std::vector<int>{0, 1}, coin);
  for (double h : {0.25, 0.5, 0.75}) EXPECT_NEAR(ab.at(h), ba.at(h), 1e-15);
}

TEST(Pmf, IterateUpdateManySmallLikelihoodsStaysFinite) {
  const Pmf prior = Pmf::uniform({1, 2});
  std::vector<int> data(2000, 0);
  const Pmf post = iterate_update(prior, data, [](int, double h) { return h == 1 ? 1e-3 : 2e-3; });
  EXPECT_NEAR(post.total(), 1.0, 1e-12);
  EXPECT_GT(post.at(2), 0.999999);
}

TEST(Pmf, BatchEqualsSequential) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs, ws;
    for (int i = 0; i < 12; ++i) xs.push_back(i), ws.push_back(u(rng));
    const Pmf prior = normalize(Pmf(xs, ws));
    std::vector<double> d1, d2;
    for (int i = 0; i < 5; ++i) d1.push_back(u(rng)), d2.push_back(u(rng));
    auto like = [](double d, double h) { return std::exp(-(h - 10 * d) * (h - 10 * d) / 8.0) + 1e-9; };
    std::vector<double> all = d1;
    all.insert(all.end(), d2.begin(), d2.end());
    const Pmf batch = iterate_update(prior, all, like);
    const Pmf seq = iterate_update(iterate_update(prior, d1, like), d2, like);
    for (double x : xs) EXPECT_NEAR(batch.at(x), seq.at(x), 1e-9);
    EXPECT_NEAR(batch.total(), 1.0, 1e-9);
  }
}

TEST(Pmf, MeanExamples) {
  EXPECT_DOUBLE_EQ(mean(Pmf({0}, {1})), 0.0);
  EXPECT_NEAR(mean(Pmf({0, 1, 2}, {0.07, 0.30, 0.63})), 1.56, 1e-12);
  EXPECT_DOUBLE_EQ(mean(Pmf({-1, 1}, {0.5, 0.5})), 0.0);
}

TEST(Pmf, MedianAndIntervalExamples) {
  const Pmf point = Pmf::point_mass(3);
  for (double m : {0.1, 0.5, 0.95}) {
    const auto ci = credible_interval(point, m);
    EXPECT_EQ(ci.low, 3);
    EXPECT_EQ(ci.high, 3);
  }
  EXPECT_EQ(median(point), 3);

  std::vector<double> xs(100), ps(100, 0.01);
  std::iota(xs.begin(), xs.end(), 1.0);
  const auto ci = credible_interval(Pmf(xs, ps), 0.95);
  const auto [lo, hi] = interval_oracle(xs, ps, 0.95);
  EXPECT_EQ(ci.low, lo);
  EXPECT_EQ(ci.high, hi);
  EXPECT_EQ(ci.low, 3);
  EXPECT_EQ(ci.high, 98);
  EXPECT_EQ(ci.mass, 0.95);

  EXPECT_EQ(median(Pmf({-2, -1, 0, 1, 2}, {0.1, 0.2, 0.4, 0.2, 0.1})), 0);
  EXPECT_EQ(code_of([&] { credible_interval(point, 0.0); }), ErrorCode::InvalidMass);
  EXPECT_EQ(code_of([&] { credible_interval(point, 1.0); }), ErrorCode::InvalidMass);
}

TEST(Pmf, QuantileConvention) {
  const Pmf p({1, 2, 3, 4}, {0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(quantile(p, 0.5), 2);   // cumulative 0.5 reached at 2
  EXPECT_EQ(quantile(p, 0.51), 3);
  EXPECT_EQ(quantile(p, 0.0), 1);
  EXPECT_EQ(quantile(p, 1.0), 4);
}

TEST(Pmf, IntervalPropertiesOnRandomPmfs) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(u(rng) * 40);
    std::vector<double> xs, ws;
    for (int i = 0; i < n; ++i) xs.push_back(i * 0.5), ws.push_back(u(rng) < 0.2 ? 0.0 : u(rng));
    if (std::accumulate(ws.begin(), ws.end(), 0.0) == 0.0) ws[0] = 1.0;
    const Pmf p = normalize(Pmf(xs, ws));
    std::vector<double> ps(p.mass().begin(), p.mass().end());
    double prev_width = INFINITY;
    for (double m : {0.99, 0.95, 0.9, 0.8, 0.5, 0.2}) {
      const auto ci = credible_interval(p, m);
      const auto [lo, hi] = interval_oracle(xs, ps, m);
      EXPECT_EQ(ci.low, lo);
      EXPECT_EQ(ci.high, hi);
      EXPECT_LE(ci.low, ci.high);
      double covered = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] >= ci.low && xs[i] <= ci.high) covered += ps[i];
      }
      EXPECT_GE(covered, m - 1e-9);
      EXPECT_LE(ci.high - ci.low, prev_width + 1e-12);
      prev_width = ci.high - ci.low;
    }
  }
}

TEST(Pmf, MixtureExamples) {
  const Pmf a = Pmf::point_mass(0), b = Pmf::point_mass(1);
  const std::vector<WeightedPmf> one{{1.0, Pmf({1, 2}, {0.3, 0.7})}};
  expect_mass(mixture(one), {{1, 0.3}, {2, 0.7}});
  const std::vector<WeightedPmf> eq{{1.0, a}, {1.0, b}};
  expect_mass(mixture(eq), {{0, 0.5}, {1, 0.5}});
  const std::vector<WeightedPmf> skew{{0.25, Pmf::point_mass(0)}, {0.75, Pmf::point_mass(4)}};
  EXPECT_NEAR(mean(mixture(skew)), 3.0, 1e-12);
  const std::vector<WeightedPmf> zero{{0.0, a}, {0.0, b}};
  EXPECT_EQ(code_of([&] { mixture(zero); }), ErrorCode::AllZeroMass);
}

TEST(Pmf, MixtureOfIdenticalIsIdentity) {
  const Pmf p({1, 2, 5}, {0.2, 0.5, 0.3});
  for (double w : {0.1, 3.0, 100.0}) {
    const std::vector<WeightedPmf> parts{{w, p}, {1.0, p}, {0.5 * w, p}};
    const Pmf m = mixture(parts);
    for (double x : {1.0, 2.0, 5.0}) EXPECT_NEAR(m.at(x), p.at(x), 1e-12);
  }
}

TEST(Joint, MarginalsOfProduct) {
  const std::vector<double> fx{0.2, 0.3, 0.5}, fy{0.6, 0.4};
  std::vector<double> mass;
  for (double a : fx)
    for (double b : fy) mass.push_back(a * b);
  const JointPmf2D j({1, 2, 3}, {10, 20}, mass);
  const Pmf mx = marginal_x(j), my = marginal_y(j);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(mx.mass()[i], fx[i], 1e-12);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(my.mass()[i], fy[i], 1e-12);
  EXPECT_EQ(map_point(j), std::make_pair(3.0, 10.0));
}

TEST(Joint, PointMassUniformAndTies) {
  const JointPmf2D point({1, 2, 3}, {2, 3}, {0, 0, 0, 0, 0, 1});
  EXPECT_EQ(map_point(point), std::make_pair(3.0, 3.0));
  const JointPmf2D u({1, 2}, {5, 6, 7}, std::vector<double>(6, 1.0 / 6));
  EXPECT_EQ(map_point(u), std::make_pair(1.0, 5.0));
  const Pmf ux = marginal_x(u), uy = marginal_y(u);
  for (double m : ux.mass()) EXPECT_NEAR(m, 0.5, 1e-12);
  for (double m : uy.mass()) EXPECT_NEAR(m, 1.0 / 3, 1e-12);
  EXPECT_EQ(code_of([] { JointPmf2D({1, 2}, {1}, {1.0}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { normalize(JointPmf2D({1}, {1}, {0.0})); }), ErrorCode::AllZeroMass);
}

TEST(Joint, RandomMarginalsSumToOne) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> mass(7 * 5);
    for (double& m : mass) m = u(rng);
    const auto j = normalize(JointPmf2D({0, 1, 2, 3, 4, 5, 6}, {0, 1, 2, 3, 4}, mass));
    EXPECT_NEAR(j.total(), 1.0, 1e-9);
    EXPECT_NEAR(marginal_x(j).total(), 1.0, 1e-9);
    EXPECT_NEAR(marginal_y(j).total(), 1.0, 1e-9);
    for (std::size_t i = 0; i < 7; ++i) {
      double row = 0.0;
      for (std::size_t k = 0; k < 5; ++k) row += j.at(i, k);
      EXPECT_NEAR(marginal_x(j).mass()[i], row, 1e-12);
    }
  }
}
