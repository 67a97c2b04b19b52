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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "aidg/error.hpp"

namespace aidg::stats {
namespace {

void RequireSameLength(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw StatsError("length mismatch: " + std::to_string(xs.size()) + " vs " +
                     std::to_string(ys.size()));
  }
  if (xs.size() < 2) throw StatsError("need at least two observations");
}

void RequireCounts(const ContingencyTable2x2& t) {
  if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) {
    throw StatsError("contingency counts must be non-negative");
  }
}

double LogChoose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double TwoSidedT(double t, double df) {
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace

double Mean(std::span<const double> xs) {
  if (xs.empty()) throw StatsError("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double SampleStdDev(std::span<const double> xs) {
  if (xs.size() < 2) throw StatsError("standard deviation needs two observations");
  const double m = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double CohensDGap(const GapSample& sample) {
  if (sample.size() < 2) throw StatsError("Cohen's d needs two or more gaps");
  std::vector<double> gaps;
  for (const auto& [model, gap] : sample) gaps.push_back(gap);
  const double sd = SampleStdDev(gaps);
  if (sd == 0.0) throw StatsError("Cohen's d undefined: gaps have zero variance");
  return Mean(gaps) / sd;
}

double CombinedEffect(double first, double second) { return (first + second) / 2.0; }

OddsRatio OddsRatioCi(const ContingencyTable2x2& t, double level) {
  RequireCounts(t);
  if (!(level > 0.0 && level < 1.0)) throw StatsError("level must be in (0, 1)");
  if (t.a + t.b == 0 || t.c + t.d == 0 || t.a + t.c == 0 || t.b + t.d == 0) {
    throw StatsError("odds ratio undefined: a row or column total is zero");
  }
  OddsRatio out;
  double a = t.a, b = t.b, c = t.c, d = t.d;
  if (t.a == 0 || t.b == 0 || t.c == 0 || t.d == 0) {
    a += 0.5, b += 0.5, c += 0.5, d += 0.5;
    out.haldane_corrected = true;
  }
  out.odds_ratio = (a * d) / (b * c);
  const double se = std::sqrt(1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d);
  const double z = NormalQuantile(1.0 - (1.0 - level) / 2.0);
  out.lower = std::exp(std::log(out.odds_ratio) - z * se);
  out.upper = std::exp(std::log(out.odds_ratio) + z * se);
  return out;
}

double FisherExact(const ContingencyTable2x2& t) {
  RequireCounts(t);
  const std::int64_t row1 = t.a + t.b;
  const std::int64_t col1 = t.a + t.c;
  const std::int64_t n = t.a + t.b + t.c + t.d;
  const double log_denom = LogChoose(n, col1);
  const auto log_p = [&](std::int64_t a) {
    return LogChoose(row1, a) + LogChoose(n - row1, col1 - a) - log_denom;
  };
  const std::int64_t lo = std::max<std::int64_t>(0, col1 - (n - row1));
  const std::int64_t hi = std::min(row1, col1);
  const double observed = log_p(t.a);
  // Relative slack so tables tied with the observed one are not lost to
  // rounding in lgamma.
  const double cutoff = observed + 1e-7;
  double p = 0.0;
  for (std::int64_t a = lo; a <= hi; ++a) {
    const double lp = log_p(a);
    if (lp <= cutoff) p += std::exp(lp);
  }
  return std::min(1.0, p);
}

TestResult ChiSquare2x2(const ContingencyTable2x2& t, ContinuityCorrection correction) {
  RequireCounts(t);
  const double r1 = t.a + t.b, r2 = t.c + t.d;
  const double c1 = t.a + t.c, c2 = t.b + t.d;
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) {
    throw StatsError("chi-square undefined: an expected count is zero");
  }
  const double n = r1 + r2;
  double diff = std::fabs(static_cast<double>(t.a) * t.d -
                          static_cast<double>(t.b) * t.c);
  if (correction == ContinuityCorrection::kYates) diff = std::max(0.0, diff - n / 2.0);
  const double x2 = n * diff * diff / (r1 * r2 * c1 * c2);
  return {x2, std::erfc(std::sqrt(x2 / 2.0))};
}

std::vector<double> Ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double average = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = average;
    i = j + 1;
  }
  return ranks;
}

TestResult SpearmanRho(std::span<const double> xs, std::span<const double> ys) {
  RequireSameLength(xs, ys);
  const auto rx = Ranks(xs);
  auto ry = Ranks(ys);
  const double rho = PearsonR(rx, ry);
  const std::size_t n = xs.size();
  TestResult out{rho, 1.0};
  if (n <= 8) {
    // Every arrangement of the y ranks is equally likely under independence.
    std::sort(ry.begin(), ry.end());
    std::int64_t total = 0, extreme = 0;
    do {
      ++total;
      if (std::fabs(PearsonR(rx, ry)) >= std::fabs(rho) - 1e-12) ++extreme;
    } while (std::next_permutation(ry.begin(), ry.end()));
    out.p_value = static_cast<double>(extreme) / static_cast<double>(total);
  } else if (std::fabs(rho) >= 1.0) {
    out.p_value = 0.0;
  } else {
    const double df = static_cast<double>(n) - 2.0;
    out.p_value = TwoSidedT(rho * std::sqrt(df / (1.0 - rho * rho)), df);
  }
  return out;
}

double PearsonR(std::span<const double> xs, std::span<const double> ys) {
  RequireSameLength(xs, ys);
  const double mx = Mean(xs), my = Mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw StatsError("correlation undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

TestResult TwoProportionZ(std::int64_t x1, std::int64_t n1, std::int64_t x2,
                          std::int64_t n2) {
  if (n1 <= 0 || n2 <= 0 || x1 < 0 || x2 < 0 || x1 > n1 || x2 > n2) {
    throw StatsError("two-proportion z needs 0 <= x <= n and n > 0");
  }
  const double p1 = static_cast<double>(x1) / n1;
  const double p2 = static_cast<double>(x2) / n2;
  const double pooled = static_cast<double>(x1 + x2) / (n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
  if (se == 0.0) return {0.0, 1.0};
  const double z = (p1 - p2) / se;
  return {z, std::erfc(std::fabs(z) / std::sqrt(2.0))};
}

TestResult OneSampleT(std::span<const double> xs) {
  const double sd = SampleStdDev(xs);
  if (sd == 0.0) throw StatsError("t test undefined: zero variance");
  const double n = static_cast<double>(xs.size());
  const double t = Mean(xs) / (sd / std::sqrt(n));
  return {t, TwoSidedT(t, n - 1.0)};
}

double NormalQuantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw StatsError("quantile level must be in (0, 1)");
  return boost::math::quantile(boost::math::normal(), p);
}

}  // namespace aidg::stats
