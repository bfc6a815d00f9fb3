/*
 * Copyright (C) 2026 The Happiness Classifier Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HAPPINESS_STATS_HPP_
#define HAPPINESS_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "happiness/matrix.hpp"

// Group-difference tests between the high (HH) and low (LH) happiness groups.
namespace happiness::stats {

// Which group sits higher. For two-sample tests the first sample is the
// HH group.
enum class Direction { kHhHigher, kLhHigher, kTied };
std::string_view to_string(Direction d);

double normal_cdf(double x);

// Upper tail of the chi-square distribution with `df` degrees of freedom.
double chi_square_sf(double x, int df);

struct UTestResult {
  double u = 0.0;  // min(U1, U2)
  double w = 0.0;  // smaller of the two rank sums
  double z = 0.0;  // (u - n1 n2 / 2) / sigma, never positive
  double p = 1.0;  // two-sided, normal approximation
  Direction direction = Direction::kTied;
};

// Mann-Whitney U with midranks for ties, tie-corrected variance
//   sigma^2 = n1 n2 / 12 * ((n + 1) - sum(t^3 - t) / (n (n - 1)))
// and no continuity correction. When every value is tied, z = 0 and p = 1.
// Throws InputError if either sample is empty.
UTestResult mann_whitney_u(std::span<const double> x, std::span<const double> y);

struct ChiSquareResult {
  double chi2 = 0.0;
  int df = 0;
  double p = 1.0;
};

// Pearson chi-square test of independence, no Yates correction. All-zero
// rows and columns are dropped first; fewer than two remaining rows or
// columns throws InputError.
ChiSquareResult chi_square(const std::vector<std::vector<std::uint64_t>>& table);

struct NormalityResult {
  double jb = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double p = 1.0;
  bool is_normal = true;  // p >= alpha
};

// Jarque-Bera: JB = n / 6 * (S^2 + K^2 / 4) from the moment estimates of
// skewness S and excess kurtosis K; p from chi-square with 2 df. A
// zero-variance sample gives JB = 0. Throws InputError when |x| < 8.
NormalityResult normality_test(std::span<const double> x, double alpha = 0.05);

enum class TestKind { kMannWhitney, kChiSquare };
std::string_view to_string(TestKind t);

struct FeatureTest {
  std::string feature;
  FeatureSet set = FeatureSet::kLinguistic;
  TestKind test = TestKind::kMannWhitney;
  double statistic = 0.0;  // U or chi^2
  double z_or_df = 0.0;    // Z or df
  double p = 1.0;
  bool selected = false;
  Direction direction = Direction::kTied;
  double w = 0.0;  // rank-sum tests only
  std::size_t column = 0;
};

struct SelectionReport {
  double alpha = 0.05;
  std::vector<FeatureTest> rows;  // p ascending, ties in column order

  std::size_t selected_count() const;
  std::vector<std::string> selected_features() const;
  const FeatureTest* find(std::string_view feature) const;
};

struct SelectOptions {
  double alpha = 0.05;
  std::string high_label = "HH";
  std::string low_label = "LH";
  std::size_t threads = 0;  // 0: pipeline_threads()
};

// Tests every column between the two groups: numeric columns with
// mann_whitney_u, categorical ones with chi_square on the group x level
// table (a single-level column reports p = 1). Categorical directions
// compare the groups' mean codes. selected <=> p < alpha.
// Throws InputError unless both labels are present and no other label is.
SelectionReport select_features(const FeatureMatrix& matrix, std::span<const std::string> labels,
                                const SelectOptions& options = {});

// `feature,set,test,statistic,z_or_df,p,selected`
void write_selection_csv(std::ostream& out, const SelectionReport& report);
std::string selection_table(const SelectionReport& report);

}  // namespace happiness::stats

#endif  // HAPPINESS_STATS_HPP_
