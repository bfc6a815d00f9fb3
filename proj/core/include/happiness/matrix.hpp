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

#ifndef HAPPINESS_MATRIX_HPP_
#define HAPPINESS_MATRIX_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace happiness {

// Which family a feature column belongs to.
enum class FeatureSet { kLinguistic, kBehavior, kDemographic };

// 'L', 'B' or 'D'.
char set_tag(FeatureSet set) noexcept;
std::optional<FeatureSet> parse_set_tag(char tag) noexcept;

// Numeric columns are compared with rank tests and split by threshold;
// categorical columns hold integer codes and are compared with a
// contingency test.
enum class FeatureKind { kNumeric, kCategorical };

struct Column {
  std::string name;
  FeatureSet set = FeatureSet::kLinguistic;
  FeatureKind kind = FeatureKind::kNumeric;

  friend bool operator==(const Column&, const Column&) = default;
};

// Dense row-major user x feature table with an optional class label per row.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(std::vector<Column> columns);

  // Throws InputError if values.size() != cols().
  void add_row(std::string user_id, std::span<const double> values, std::string label = {});

  std::size_t rows() const noexcept { return ids_.size(); }
  std::size_t cols() const noexcept { return columns_.size(); }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t c) const { return columns_.at(c); }
  std::optional<std::size_t> find_column(std::string_view name) const;

  // Column indexes whose set is one of `sets`, in column order.
  std::vector<std::size_t> columns_in(std::span<const FeatureSet> sets) const;

  double at(std::size_t r, std::size_t c) const { return data_[r * columns_.size() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * columns_.size(), columns_.size()};
  }
  std::vector<double> column_values(std::size_t c) const;

  const std::string& user_id(std::size_t r) const { return ids_.at(r); }
  const std::string& label(std::size_t r) const { return labels_.at(r); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_label(std::size_t r, std::string label) { labels_.at(r) = std::move(label); }

  FeatureMatrix select_columns(std::span<const std::size_t> cols) const;
  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::vector<Column> columns_;
  std::vector<std::string> ids_;
  std::vector<std::string> labels_;
  std::vector<double> data_;
};

}  // namespace happiness

#endif  // HAPPINESS_MATRIX_HPP_
