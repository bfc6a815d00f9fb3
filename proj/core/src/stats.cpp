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

#include "happiness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "happiness/error.hpp"
#include "happiness/format.hpp"
#include "happiness/parallel.hpp"

namespace happiness::stats {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kHhHigher:
      return "HH_higher";
    case Direction::kLhHigher:
      return "LH_higher";
    case Direction::kTied:
      return "tied";
  }
  return "?";
}

std::string_view to_string(TestKind t) {
  return t == TestKind::kMannWhitney ? "mann_whitney_u" : "chi_square";
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double chi_square_sf(double x, int df) {
  if (df <= 0) throw InputError("chi-square df must be positive");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

UTestResult mann_whitney_u(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InputError("Mann-Whitney U needs two nonempty samples");
  const std::size_t n1 = x.size();
  const std::size_t n2 = y.size();
  const std::size_t n = n1 + n2;

  struct Obs {
    double value;
    bool first;
  };
  std::vector<Obs> pooled;
  pooled.reserve(n);
  for (double v : x) pooled.push_back({v, true});
  for (double v : y) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Obs& a, const Obs& b) { return a.value < b.value; });

  // Ranks are 1-based; a tie block spanning positions [i, j) gets the
  // midrank (i + j + 1) / 2. Rank sums stay exact in doubles (halves only).
  double rank_sum_x = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && pooled[j].value == pooled[i].value) ++j;
    const double midrank = 0.5 * static_cast<double>(i + j + 1);
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].first) rank_sum_x += midrank;
    }
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  const double rank_sum_y = dn * (dn + 1.0) / 2.0 - rank_sum_x;
  const double u1 = rank_sum_x - dn1 * (dn1 + 1.0) / 2.0;
  const double u2 = dn1 * dn2 - u1;
  const double center = dn1 * dn2 / 2.0;

  UTestResult r;
  r.u = std::min(u1, u2);
  r.w = std::min(rank_sum_x, rank_sum_y);
  r.direction = u1 > center ? Direction::kHhHigher
                : u1 < center ? Direction::kLhHigher
                              : Direction::kTied;
  const double variance = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (variance <= 0.0 || r.u == center) {
    r.z = 0.0;
    r.p = 1.0;
    return r;
  }
  r.z = (r.u - center) / std::sqrt(variance);
  r.p = std::min(1.0, 2.0 * normal_cdf(-std::abs(r.z)));
  return r;
}

ChiSquareResult chi_square(const std::vector<std::vector<std::uint64_t>>& table) {
  const std::size_t cols = table.empty() ? 0 : table.front().size();
  for (const auto& row : table) {
    if (row.size() != cols) throw InputError("chi-square table rows differ in length");
  }
  std::vector<std::uint64_t> row_sums;
  std::vector<std::size_t> keep_rows;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto s = std::accumulate(table[i].begin(), table[i].end(), std::uint64_t{0});
    if (s > 0) {
      keep_rows.push_back(i);
      row_sums.push_back(s);
    }
  }
  std::vector<std::uint64_t> col_sums;
  std::vector<std::size_t> keep_cols;
  for (std::size_t j = 0; j < cols; ++j) {
    std::uint64_t s = 0;
    for (const auto& row : table) s += row[j];
    if (s > 0) {
      keep_cols.push_back(j);
      col_sums.push_back(s);
    }
  }
  if (keep_rows.size() < 2 || keep_cols.size() < 2) {
    throw InputError("degenerate contingency table: need at least 2 nonzero rows and columns");
  }
  const std::uint64_t total = std::accumulate(row_sums.begin(), row_sums.end(), std::uint64_t{0});

  ChiSquareResult r;
  for (std::size_t a = 0; a < keep_rows.size(); ++a) {
    for (std::size_t b = 0; b < keep_cols.size(); ++b) {
      // Integer numerator keeps E exact whenever it is an integer, so
      // proportional tables give exactly 0.
      const double expected =
          static_cast<double>(row_sums[a] * col_sums[b]) / static_cast<double>(total);
      const double diff = static_cast<double>(table[keep_rows[a]][keep_cols[b]]) - expected;
      r.chi2 += diff * diff / expected;
    }
  }
  r.df = static_cast<int>((keep_rows.size() - 1) * (keep_cols.size() - 1));
  r.p = chi_square_sf(r.chi2, r.df);
  return r;
}

NormalityResult normality_test(std::span<const double> x, double alpha) {
  if (x.size() < 8) throw InputError("sample too small for JB (need at least 8, got " +
                                     std::to_string(x.size()) + ")");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  NormalityResult r;
  if (m2 > 0.0) {
    r.skewness = m3 / std::pow(m2, 1.5);
    r.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  r.jb = n / 6.0 * (r.skewness * r.skewness + r.excess_kurtosis * r.excess_kurtosis / 4.0);
  r.p = std::exp(-r.jb / 2.0);  // chi-square survival, 2 df
  r.is_normal = r.p >= alpha;
  return r;
}

std::size_t SelectionReport::selected_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const FeatureTest& t) { return t.selected; }));
}

std::vector<std::string> SelectionReport::selected_features() const {
  std::vector<std::string> out;
  for (const FeatureTest& t : rows) {
    if (t.selected) out.push_back(t.feature);
  }
  return out;
}

const FeatureTest* SelectionReport::find(std::string_view feature) const {
  for (const FeatureTest& t : rows) {
    if (t.feature == feature) return &t;
  }
  return nullptr;
}

namespace {

FeatureTest test_categorical(std::span<const double> high, std::span<const double> low) {
  FeatureTest t;
  t.test = TestKind::kChiSquare;
  std::map<double, std::size_t> levels;
  for (double v : high) levels.emplace(v, 0);
  for (double v : low) levels.emplace(v, 0);
  std::size_t idx = 0;
  for (auto& [value, slot] : levels) slot = idx++;

  const double mean_high = std::accumulate(high.begin(), high.end(), 0.0) / high.size();
  const double mean_low = std::accumulate(low.begin(), low.end(), 0.0) / low.size();
  t.direction = mean_high > mean_low   ? Direction::kHhHigher
                : mean_high < mean_low ? Direction::kLhHigher
                                       : Direction::kTied;
  if (levels.size() < 2) {
    t.statistic = 0.0;
    t.z_or_df = 0.0;
    t.p = 1.0;
    return t;
  }
  std::vector<std::vector<std::uint64_t>> table(2, std::vector<std::uint64_t>(levels.size(), 0));
  for (double v : high) ++table[0][levels.at(v)];
  for (double v : low) ++table[1][levels.at(v)];
  const ChiSquareResult r = chi_square(table);
  t.statistic = r.chi2;
  t.z_or_df = r.df;
  t.p = r.p;
  return t;
}

}  // namespace

SelectionReport select_features(const FeatureMatrix& matrix, std::span<const std::string> labels,
                                const SelectOptions& options) {
  if (labels.size() != matrix.rows()) {
    throw InputError("label count " + std::to_string(labels.size()) + " does not match " +
                     std::to_string(matrix.rows()) + " rows");
  }
  if (matrix.rows() == 0 || matrix.cols() == 0) throw InputError("empty feature matrix");
  std::vector<std::size_t> high_rows;
  std::vector<std::size_t> low_rows;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] == options.high_label) {
      high_rows.push_back(r);
    } else if (labels[r] == options.low_label) {
      low_rows.push_back(r);
    } else {
      throw InputError("row " + std::to_string(r) + " has unexpected label '" + labels[r] + "'");
    }
  }
  if (high_rows.empty() || low_rows.empty()) {
    throw InputError("feature selection needs both '" + options.high_label + "' and '" +
                     options.low_label + "' rows");
  }

  SelectionReport report;
  report.alpha = options.alpha;
  report.rows.resize(matrix.cols());
  parallel_for(
      matrix.cols(),
      [&](std::size_t c) {
        std::vector<double> high(high_rows.size());
        std::vector<double> low(low_rows.size());
        for (std::size_t i = 0; i < high_rows.size(); ++i) high[i] = matrix.at(high_rows[i], c);
        for (std::size_t i = 0; i < low_rows.size(); ++i) low[i] = matrix.at(low_rows[i], c);
        const Column& col = matrix.column(c);
        FeatureTest t;
        if (col.kind == FeatureKind::kCategorical) {
          t = test_categorical(high, low);
        } else {
          const UTestResult u = mann_whitney_u(high, low);
          t.test = TestKind::kMannWhitney;
          t.statistic = u.u;
          t.z_or_df = u.z;
          t.p = u.p;
          t.w = u.w;
          t.direction = u.direction;
        }
        t.feature = col.name;
        t.set = col.set;
        t.column = c;
        t.selected = t.p < options.alpha;
        report.rows[c] = std::move(t);
      },
      options.threads ? options.threads : pipeline_threads());

  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const FeatureTest& a, const FeatureTest& b) { return a.p < b.p; });
  return report;
}

void write_selection_csv(std::ostream& out, const SelectionReport& report) {
  out << "feature,set,test,statistic,z_or_df,p,selected\n";
  for (const FeatureTest& t : report.rows) {
    out << t.feature << ',' << set_tag(t.set) << ',' << to_string(t.test) << ','
        << format_number(t.statistic) << ',' << format_number(t.z_or_df) << ','
        << format_number(t.p) << ',' << (t.selected ? "true" : "false") << '\n';
  }
}

std::string selection_table(const SelectionReport& report) {
  std::size_t width = 7;
  for (const FeatureTest& t : report.rows) width = std::max(width, t.feature.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width) + 2) << "Feature" << std::right
      << std::setw(4) << "Set" << std::setw(14) << "U / chi2" << std::setw(14) << "W"
      << std::setw(10) << "Z / df" << std::setw(12) << "P" << std::setw(11) << "Direction"
      << std::setw(10) << "Selected" << '\n';
  for (const FeatureTest& t : report.rows) {
    const bool rank = t.test == TestKind::kMannWhitney;
    out << std::left << std::setw(static_cast<int>(width) + 2) << t.feature << std::right
        << std::setw(4) << set_tag(t.set) << std::setw(14) << format_fixed(t.statistic, 3)
        << std::setw(14) << (rank ? format_fixed(t.w, 3) : std::string("-")) << std::setw(10)
        << (rank ? format_fixed(t.z_or_df, 3) : format_fixed(t.z_or_df, 0)) << std::setw(12)
        << format_fixed(t.p, 6) << std::setw(11) << to_string(t.direction) << std::setw(10)
        << (t.selected ? "*" : "") << '\n';
  }
  out << "alpha = " << format_number(report.alpha) << ", selected " << report.selected_count()
      << " of " << report.rows.size() << '\n';
  return out.str();
}

}  // namespace happiness::stats
