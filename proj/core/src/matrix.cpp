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

#include "happiness/matrix.hpp"

#include <algorithm>
#include <unordered_set>

#include "happiness/error.hpp"

namespace happiness {

char set_tag(FeatureSet set) noexcept {
  switch (set) {
    case FeatureSet::kLinguistic:
      return 'L';
    case FeatureSet::kBehavior:
      return 'B';
    case FeatureSet::kDemographic:
      return 'D';
  }
  return '?';
}

std::optional<FeatureSet> parse_set_tag(char tag) noexcept {
  switch (tag) {
    case 'L':
      return FeatureSet::kLinguistic;
    case 'B':
      return FeatureSet::kBehavior;
    case 'D':
      return FeatureSet::kDemographic;
    default:
      return std::nullopt;
  }
}

FeatureMatrix::FeatureMatrix(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::unordered_set<std::string_view> seen;
  for (const Column& c : columns_) {
    if (!seen.insert(c.name).second) {
      throw InputError("duplicate column name '" + c.name + "'");
    }
  }
}

void FeatureMatrix::add_row(std::string user_id, std::span<const double> values,
                            std::string label) {
  if (values.size() != columns_.size()) {
    throw InputError("row for '" + user_id + "' has " + std::to_string(values.size()) +
                     " values, expected " + std::to_string(columns_.size()));
  }
  ids_.push_back(std::move(user_id));
  labels_.push_back(std::move(label));
  data_.insert(data_.end(), values.begin(), values.end());
}

std::optional<std::size_t> FeatureMatrix::find_column(std::string_view name) const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].name == name) return c;
  }
  return std::nullopt;
}

std::vector<std::size_t> FeatureMatrix::columns_in(std::span<const FeatureSet> sets) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (std::find(sets.begin(), sets.end(), columns_[c].set) != sets.end()) out.push_back(c);
  }
  return out;
}

std::vector<double> FeatureMatrix::column_values(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

FeatureMatrix FeatureMatrix::select_columns(std::span<const std::size_t> cols) const {
  std::vector<Column> picked;
  picked.reserve(cols.size());
  for (std::size_t c : cols) picked.push_back(columns_.at(c));
  FeatureMatrix out(std::move(picked));
  std::vector<double> values(cols.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) values[j] = at(r, cols[j]);
    out.add_row(ids_[r], values, labels_[r]);
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
  FeatureMatrix out(columns_);
  for (std::size_t r : rows) out.add_row(ids_.at(r), row(r), labels_[r]);
  return out;
}

}  // namespace happiness
