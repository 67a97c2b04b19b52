// Copyright 2026 The AIDG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aidg/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "aidg/error.hpp"
#include "test_support.hpp"

namespace aidg::stats {
namespace {

// Composite Simpson rule; the oracles below integrate densities directly so
// they share no code with the library's distribution functions.
double Simpson(const std::function<double(double)>& f, double lo, double hi, int n = 20000) {
  const double h = (hi - lo) / n;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3;
}

double NormalTwoSidedOracle(double z) {
  const double pi = std::acos(-1.0);
  const double body = Simpson([&](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * pi); },
                              0, std::fabs(z));
  return 1 - 2 * body;
}

double StudentTwoSidedOracle(double t, double df) {
  const double pi = std::acos(-1.0);
  const double norm = std::tgamma((df + 1) / 2) / (std::sqrt(df * pi) * std::tgamma(df / 2));
  const double body = Simpson(
      [&](double x) { return norm * std::pow(1 + x * x / df, -(df + 1) / 2); }, 0, std::fabs(t));
  return 1 - 2 * body;
}

// Hypergeometric probabilities by the ratio recurrence, starting from the
// smallest feasible top-left cell.
double FisherOracle(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const std::int64_t r1 = a + b, c1 = a + c, n = a + b + c + d;
  const std::int64_t lo = std::max<std::int64_t>(0, r1 + c1 - n), hi = std::min(r1, c1);
  std::vector<double> w(hi - lo + 1);
  w[0] = 1;
  for (std::int64_t x = lo; x < hi; ++x) {
    const double up = static_cast<double>(r1 - x) * (c1 - x);
    const double down = static_cast<double>(x + 1) * (n - r1 - c1 + x + 1);
    w[x - lo + 1] = w[x - lo] * up / down;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double observed = w[a - lo];
  double p = 0;
  for (double v : w) {
    if (v <= observed * (1 + 1e-7)) p += v;
  }
  return p / total;
}

const ContingencyTable2x2 kModes{32, 114, 5, 138};

TEST(Descriptive, MeanAndSampleSd) {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(Mean(xs), 5);
  EXPECT_NEAR(SampleStdDev(xs), std::sqrt(32.0 / 7), 1e-12);
  EXPECT_THROW(Mean(std::vector<double>{}), StatsError);
  EXPECT_THROW(SampleStdDev(std::vector<double>{1}), StatsError);
}

TEST(CohensD, PublishedGaps) {
  const EloTable t = testing::PublishedRatings();
  GapSample first, second;
  for (const auto& row : t.rows) {
    first.emplace_back(row.model, row.aidg1->v_elo - row.aidg1->c_elo);
    second.emplace_back(row.model, row.aidg2->v_elo - row.aidg2->c_elo);
  }
  const double d1 = CohensDGap(first);
  const double d2 = CohensDGap(second);
  EXPECT_NEAR(d1, 5.47, 0.01);
  EXPECT_NEAR(d2, 2.67, 0.01);
  EXPECT_NEAR(CombinedEffect(d1, d2), 4.07, 0.01);

  std::vector<double> raw;
  for (const auto& [m, g] : first) raw.push_back(g);
  EXPECT_NEAR(Mean(raw), 349.6, 0.1);
}

TEST(CohensD, Errors) {
  EXPECT_THROW(CohensDGap({{"a", 1}}), StatsError);
  EXPECT_THROW(CohensDGap({{"a", 3}, {"b", 3}}), StatsError);
  EXPECT_DOUBLE_EQ(CohensDGap({{"a", 1}, {"b", 3}}), 2 / std::sqrt(2.0));
}

TEST(OddsRatio, ModeCounts) {
  const OddsRatio r = OddsRatioCi(kModes);
  EXPECT_NEAR(r.odds_ratio, 7.75, 0.05);
  EXPECT_NEAR(r.lower, 2.92, 0.05);
  EXPECT_NEAR(r.upper, 20.53, 0.05);
  EXPECT_FALSE(r.haldane_corrected);

  const double se = std::sqrt(1.0 / 32 + 1.0 / 114 + 1.0 / 5 + 1.0 / 138);
  const double log_or = std::log(32.0 * 138 / (114.0 * 5));
  EXPECT_NEAR(r.lower, std::exp(log_or - 1.959963984540054 * se), 1e-9);
  EXPECT_NEAR(r.upper, std::exp(log_or + 1.959963984540054 * se), 1e-9);
}

TEST(OddsRatio, ZeroCellAndErrors) {
  const OddsRatio r = OddsRatioCi({4, 0, 2, 6});
  EXPECT_TRUE(r.haldane_corrected);
  EXPECT_NEAR(r.odds_ratio, (4.5 * 6.5) / (0.5 * 2.5), 1e-12);
  EXPECT_THROW(OddsRatioCi({0, 0, 2, 6}), StatsError);
  EXPECT_THROW(OddsRatioCi({0, 3, 0, 6}), StatsError);
  EXPECT_THROW(OddsRatioCi(kModes, 1.0), StatsError);
}

TEST(Fisher, KnownTables) {
  EXPECT_LT(FisherExact(kModes), 1e-5);
  EXPECT_NEAR(FisherExact(kModes), FisherOracle(32, 114, 5, 138), 1e-12);
  EXPECT_NEAR(FisherExact({5, 5, 5, 5}), 1.0, 1e-12);
  EXPECT_NEAR(FisherExact({3, 0, 0, 3}), 0.1, 1e-12);
  // The tea-tasting table.
  EXPECT_NEAR(FisherExact({3, 1, 1, 3}), 34.0 / 70, 1e-12);
  EXPECT_THROW(FisherExact({-1, 1, 1, 1}), StatsError);
}

TEST(Fisher, MatchesRecurrenceOracle) {
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      for (int c = 0; c < 6; ++c) {
        const int d = (a * 7 + b * 3 + c) % 9;
        EXPECT_NEAR(FisherExact({a, b, c, d}), FisherOracle(a, b, c, d), 1e-10)
            << a << ' ' << b << ' ' << c << ' ' << d;
      }
    }
  }
}

TEST(ChiSquare, ClosedForms) {
  const TestResult plain = ChiSquare2x2({10, 0, 0, 10});
  EXPECT_NEAR(plain.statistic, 20, 1e-12);
  EXPECT_NEAR(plain.p_value, NormalTwoSidedOracle(std::sqrt(20.0)), 1e-8);
  EXPECT_NEAR(ChiSquare2x2({6, 4, 12, 8}).statistic, 0, 1e-12);
  EXPECT_THROW(ChiSquare2x2({0, 0, 3, 4}), StatsError);
}

TEST(ChiSquare, HolderWinsAcrossExperiments) {
  const ContingencyTable2x2 t{252, 37, 128, 22};
  const TestResult yates = ChiSquare2x2(t, ContinuityCorrection::kYates);
  EXPECT_NEAR(yates.statistic, 0.156, 0.01);
  EXPECT_NEAR(yates.p_value, 0.69, 0.01);
  const double n = 439, ad_bc = std::fabs(252.0 * 22 - 37.0 * 128) - n / 2;
  const double oracle = n * ad_bc * ad_bc / (289.0 * 150 * 380 * 59);
  EXPECT_NEAR(yates.statistic, oracle, 1e-9);
  EXPECT_NEAR(yates.p_value, NormalTwoSidedOracle(std::sqrt(oracle)), 1e-8);
  // Without the correction the statistic is larger.
  EXPECT_GT(ChiSquare2x2(t).statistic, yates.statistic);
}

TEST(Ranks, Ties) {
  const std::vector<double> xs{10, 20, 20, 5};
  EXPECT_EQ(Ranks(xs), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(Spearman, PublishedRatings) {
  const EloTable t = testing::PublishedRatings();
  std::vector<double> c1, c2, v1, v2;
  for (const auto& row : t.rows) {
    c1.push_back(row.aidg1->c_elo);
    c2.push_back(row.aidg2->c_elo);
    v1.push_back(row.aidg1->v_elo);
    v2.push_back(row.aidg2->v_elo);
  }
  const TestResult v = SpearmanRho(v1, v2);
  EXPECT_EQ(v.statistic, -1.0);
  EXPECT_NEAR(v.p_value, 2.0 / 720, 1e-12);
  EXPECT_NEAR(SpearmanRho(c1, c2).statistic, 0.6, 0.001);
  EXPECT_EQ(SpearmanRho(c1, c1).statistic, 1.0);
  EXPECT_THROW(SpearmanRho(c1, std::vector<double>{1, 2}), StatsError);
}

TEST(Spearman, ExactPMatchesBruteForce) {
  const std::vector<double> xs{3, 1, 4, 1.5, 9, 2.6, 5};
  const std::vector<double> ys{2, 7, 1, 8, 2.8, 1.8, 9.5};
  const int n = static_cast<int>(xs.size());
  auto rank_of = [&](const std::vector<double>& v) {
    std::vector<int> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[i] = 1 + static_cast<int>(std::count_if(v.begin(), v.end(), [&](double o) { return o < v[i]; }));
    }
    return r;
  };
  const auto rx = rank_of(xs), ry = rank_of(ys);
  auto rho = [&](const std::vector<int>& a, const std::vector<int>& b) {
    double d2 = 0;
    for (int i = 0; i < n; ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return 1 - 6 * d2 / (n * (n * n - 1.0));
  };
  const double observed = rho(rx, ry);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  int extreme = 0, total = 0;
  do {
    ++total;
    if (std::fabs(rho(rx, perm)) >= std::fabs(observed) - 1e-12) ++extreme;
  } while (std::next_permutation(perm.begin(), perm.end()));

  const TestResult r = SpearmanRho(xs, ys);
  EXPECT_NEAR(r.statistic, observed, 1e-12);
  EXPECT_NEAR(r.p_value, static_cast<double>(extreme) / total, 1e-12);
}

TEST(Spearman, LargeSampleUsesT) {
  std::vector<double> xs, ys;
  for (int i = 0; i < 20; ++i) {
    xs.push_back(i);
    ys.push_back((i * 7) % 20);
  }
  const TestResult r = SpearmanRho(xs, ys);
  const double t = r.statistic * std::sqrt(18 / (1 - r.statistic * r.statistic));
  EXPECT_NEAR(r.p_value, StudentTwoSidedOracle(t, 18), 1e-6);
}

TEST(Pearson, DisqualificationVsWinRate) {
  const std::vector<double> disq{0, 8, 32, 64, 72, 72};
  const std::vector<double> win{28, 32, 12, 8, 4, 4};
  EXPECT_NEAR(PearsonR(disq, win), -0.95, 0.01);
  std::vector<double> neg(disq);
  for (double& x : neg) x = -x;
  EXPECT_NEAR(PearsonR(disq, neg), -1.0, 1e-12);
  EXPECT_THROW(PearsonR(disq, std::vector<double>(6, 3.0)), StatsError);
}

TEST(TwoProportionZ, PooledFormula) {
  EXPECT_EQ(TwoProportionZ(50, 100, 50, 100).statistic, 0);
  EXPECT_NEAR(TwoProportionZ(90, 100, 10, 100).statistic, 0.8 / std::sqrt(0.25 * 0.02), 1e-9);
  const TestResult r = TwoProportionZ(22, 100, 11, 103);
  EXPECT_GT(r.statistic, 2.0);
  EXPECT_LT(r.p_value, 0.05);
  EXPECT_NEAR(r.p_value, NormalTwoSidedOracle(r.statistic), 1e-8);
  EXPECT_THROW(TwoProportionZ(5, 4, 1, 2), StatsError);
  EXPECT_THROW(TwoProportionZ(0, 0, 1, 2), StatsError);
}

TEST(OneSampleT, AgainstDensityIntegral) {
  const std::vector<double> xs{1.2, 0.4, 2.2, -0.3, 1.1, 0.9};
  const TestResult r = OneSampleT(xs);
  const double m = Mean(xs), sd = SampleStdDev(xs);
  EXPECT_NEAR(r.statistic, m / (sd / std::sqrt(6.0)), 1e-12);
  EXPECT_NEAR(r.p_value, StudentTwoSidedOracle(r.statistic, 5), 1e-6);
  EXPECT_THROW(OneSampleT(std::vector<double>{2, 2, 2}), StatsError);
}

TEST(NormalQuantile, KnownPoints) {
  EXPECT_NEAR(NormalQuantile(0.975), 1.959964, 1e-6);
  EXPECT_NEAR(NormalQuantile(0.5), 0, 1e-12);
  EXPECT_NEAR(NormalQuantile(0.025), -1.959964, 1e-6);
  EXPECT_THROW(NormalQuantile(0), StatsError);
}

}  // namespace
}  // namespace aidg::stats
