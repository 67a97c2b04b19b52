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

#ifndef AIDG_STATS_HPP_
#define AIDG_STATS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Statistics behind the published tables. All functions are pure.
namespace aidg::stats {

// Rows are groups, columns are (success, failure):
//   | a b |   group 1
//   | c d |   group 2
struct ContingencyTable2x2 {
  std::int64_t a = 0, b = 0, c = 0, d = 0;
};

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

using GapSample = std::vector<std::pair<std::string, double>>;

// mean(gaps) / sd(gaps), sample (n-1) standard deviation.
// Throws StatsError for fewer than two entries or zero variance.
double CohensDGap(const GapSample& sample);
double Mean(std::span<const double> xs);
double SampleStdDev(std::span<const double> xs);

// Arithmetic mean of two per-experiment values.
double CombinedEffect(double first, double second);

struct OddsRatio {
  double odds_ratio = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool haldane_corrected = false;  // 0.5 added to every cell
};

// Woolf log-odds interval. Throws StatsError for a zero row or column total.
OddsRatio OddsRatioCi(const ContingencyTable2x2& t, double level = 0.95);

// Two-sided exact p: total probability of the tables with fixed margins that
// are no more likely than the observed one.
double FisherExact(const ContingencyTable2x2& t);

enum class ContinuityCorrection { kNone, kYates };

// Pearson chi-square with df = 1. Throws StatsError if an expected count is 0.
TestResult ChiSquare2x2(const ContingencyTable2x2& t,
                        ContinuityCorrection correction = ContinuityCorrection::kNone);

// Average ranks for ties, 1-based.
std::vector<double> Ranks(std::span<const double> xs);

// Pearson correlation of ranks. p is exact (full permutation enumeration) for
// n <= 8 and from the t approximation otherwise.
TestResult SpearmanRho(std::span<const double> xs, std::span<const double> ys);

double PearsonR(std::span<const double> xs, std::span<const double> ys);

// Pooled two-proportion z test, two-sided normal p.
TestResult TwoProportionZ(std::int64_t x1, std::int64_t n1, std::int64_t x2,
                          std::int64_t n2);

// One-sample t test of mean != 0, two-sided.
TestResult OneSampleT(std::span<const double> xs);

double NormalQuantile(double p);

}  // namespace aidg::stats

#endif  // AIDG_STATS_HPP_
