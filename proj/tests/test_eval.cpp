#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vmafc/errors.hpp"
#include "vmafc/eval.hpp"

using namespace vmafc;

namespace {

// Rank by counting smaller and equal elements.
std::vector<double> count_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      less += w < v[i];
      equal += w == v[i];
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

double covariance_corr(const std::vector<double>& x, const std::vector<double>& y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

}  // namespace

TEST(Ranks, TiesAverage) {
  const std::vector<double> v{3, 1, 3, 2};
  EXPECT_EQ(fractional_ranks(v), (std::vector<double>{3.5, 1, 3.5, 2}));
}

TEST(Srocc, Examples) {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> y{1, 3, 2, 4};
  EXPECT_NEAR(srocc(x, y), 0.8, 1e-15);
  const std::vector<double> sq{1, 4, 9, 16};
  EXPECT_EQ(srocc(x, sq), 1.0);
  const std::vector<double> rev{4, 3, 2, 1};
  EXPECT_EQ(srocc(x, rev), -1.0);
  const std::vector<double> three{1, 2, 3};
  EXPECT_THROW(srocc(three, three), DomainError);
  const std::vector<double> flat{2, 2, 2, 2};
  EXPECT_THROW(srocc(x, flat), DomainError);
  EXPECT_THROW(srocc(x, three), DomainError);
}

TEST(Srocc, MatchesRankOracleAndMonotoneInvariance) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> small(0, 9);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> x(50), y(50);
    for (int i = 0; i < 50; ++i) {
      x[i] = trial % 2 ? small(rng) : u(rng);
      y[i] = x[i] + u(rng);
    }
    const double s = srocc(x, y);
    EXPECT_NEAR(s, covariance_corr(count_ranks(x), count_ranks(y)), 1e-12);
    std::vector<double> tx(50);
    for (int i = 0; i < 50; ++i) tx[i] = std::exp(3 * x[i]) - 7;
    EXPECT_NEAR(srocc(tx, y), s, 1e-12);
    EXPECT_NEAR(pearson(x, y), covariance_corr(x, y), 1e-12);
  }
}

TEST(Plcc, IdentityAndAffine) {
  std::vector<double> mos{10, 25, 30, 48, 52, 60, 71, 80, 90, 95};
  auto same = plcc_logistic(mos, mos);
  EXPECT_NEAR(same.plcc, 1.0, 1e-9);
  EXPECT_NEAR(same.fit.residual_sigma, 0.0, 1e-6);

  std::vector<double> pred;
  for (double m : mos) pred.push_back(0.01 * m + 0.2);
  auto affine = plcc_logistic(pred, mos);
  EXPECT_NEAR(affine.plcc, 1.0, 1e-6);
  EXPECT_FALSE(affine.fallback);
}

TEST(Plcc, NeverBelowRawPearson) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::normal_distribution<double> n(0, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pred(40), mos(40);
    for (int i = 0; i < 40; ++i) {
      pred[i] = u(rng);
      mos[i] = 100.0 / (1 + std::exp(-(pred[i] - 0.5) * 8)) + n(rng);
    }
    const auto r = plcc_logistic(pred, mos);
    EXPECT_GE(r.plcc, pearson(pred, mos) - 1e-6);
    EXPECT_LE(r.plcc, 1.0);
    // The fitted curve is monotone over the data range.
    double prev = r.fit(0.0);
    for (int k = 1; k <= 20; ++k) {
      const double v = r.fit(k / 20.0);
      EXPECT_GE(v - prev, -1e-12 * std::abs(prev));
      prev = v;
    }
  }
}

TEST(Plcc, ConstantMosIsAnError) {
  std::vector<double> pred{1, 2, 3, 4, 5};
  std::vector<double> mos(5, 50.0);
  EXPECT_THROW(plcc_logistic(pred, mos), DomainError);
}

TEST(Fisher, Examples) {
  EXPECT_NEAR(fisher_z(0.5), 0.549306, 1e-6);
  const std::vector<double> same{0.42, 0.42, 0.42};
  EXPECT_EQ(fisher_overall(same).r, 0.42);
  const std::vector<double> pair{0.3, 0.9};
  EXPECT_NEAR(fisher_overall(pair).r, std::tanh((std::atanh(0.3) + std::atanh(0.9)) / 2), 1e-15);
  EXPECT_NEAR(fisher_overall(pair).r, 0.711823, 1e-6);
  const std::vector<double> one{1.0, 0.5};
  auto clamped = fisher_overall(one);
  EXPECT_TRUE(clamped.clamped);
  EXPECT_TRUE(std::isfinite(clamped.r));
}

TEST(Fisher, WithinInputRange) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.99, 0.99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> r(1 + trial % 6);
    for (auto& v : r) v = u(rng);
    const double f = fisher_overall(r).r;
    EXPECT_GE(f, *std::min_element(r.begin(), r.end()) - 1e-15);
    EXPECT_LE(f, *std::max_element(r.begin(), r.end()) + 1e-15);
  }
}

TEST(Fisher, Weights) {
  const std::vector<double> r{0.3, 0.9};
  const std::vector<double> w{1.0, 0.0};
  EXPECT_NEAR(fisher_overall(r, std::span<const double>(w)).r, 0.3, 1e-15);
}

TEST(Significance, Examples) {
  const std::vector<CorrelationSample> same{{0.8, 100}, {0.8, 100}};
  auto m = significance_matrix(same);
  EXPECT_EQ(m[0][1], Significance::kIndistinguishable);
  const std::vector<CorrelationSample> far{{0.99, 200}, {0.10, 200}};
  m = significance_matrix(far);
  EXPECT_EQ(m[0][1], Significance::kBetter);
  EXPECT_EQ(m[1][0], Significance::kWorse);
  EXPECT_EQ(significance_symbol(Significance::kBetter), "1");
  EXPECT_EQ(significance_symbol(Significance::kWorse), "0");
  EXPECT_EQ(significance_symbol(Significance::kIndistinguishable), "-");
}

TEST(Significance, AntisymmetricWithNeutralDiagonal) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-0.95, 0.99);
  std::uniform_int_distribution<int> n(10, 300);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<CorrelationSample> s(2 + trial % 5);
    for (auto& c : s) c = {u(rng), static_cast<std::size_t>(n(rng))};
    const auto m = significance_matrix(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_EQ(m[i][i], Significance::kIndistinguishable);
      for (std::size_t j = 0; j < s.size(); ++j) {
        EXPECT_EQ(m[i][j] == Significance::kBetter, m[j][i] == Significance::kWorse);
        EXPECT_EQ(m[i][j] == Significance::kIndistinguishable,
                  m[j][i] == Significance::kIndistinguishable);
      }
    }
  }
}
