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

#ifndef HAPPINESS_TREE_HPP_
#define HAPPINESS_TREE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "happiness/matrix.hpp"

// Binary CART classification tree with Gini impurity and threshold splits.
namespace happiness::tree {

struct TreeParams {
  int max_depth = 4;
  std::size_t min_leaf = 5;
  std::size_t min_split = 10;
  std::string negative_label = "HH";
  std::string positive_label = "LH";

  // Throws InputError unless max_depth >= 1, 1 <= min_leaf <= min_split and
  // the two labels differ.
  void validate() const;
};

// 1 - sum(p_i^2) over the two classes. Throws InputError if both are 0.
double gini(std::uint64_t negative, std::uint64_t positive);

struct Split {
  double threshold = 0.0;  // rows with value < threshold go left
  double weighted_gini = 0.0;
  std::size_t left_count = 0;
  std::size_t right_count = 0;
};

// Best threshold for one feature: candidates are midpoints between
// consecutive distinct sorted values whose children both hold at least
// `min_leaf` rows; the lowest child-size-weighted Gini wins, ties going to
// the smaller threshold. std::nullopt if no candidate qualifies (including
// a constant feature). `positive` is 1 for positive-class rows, else 0.
std::optional<Split> best_split(std::span<const double> values,
                                std::span<const std::uint8_t> positive,
                                std::size_t min_leaf = 1);

struct Node {
  // Split nodes have both children; leaves have left == right == -1.
  std::string feature;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::array<std::uint64_t, 2> counts{};  // {negative, positive} rows reaching the node
  int depth = 0;

  bool is_leaf() const noexcept { return left < 0; }
  // Positive wins ties.
  bool predicts_positive() const noexcept { return counts[1] >= counts[0]; }

  friend bool operator==(const Node&, const Node&) = default;
};

struct Prediction {
  std::string label;
  double positive_probability = 0.0;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<Node> nodes, std::string negative_label, std::string positive_label);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& root() const { return nodes_.at(0); }
  const std::string& negative_label() const noexcept { return negative_label_; }
  const std::string& positive_label() const noexcept { return positive_label_; }
  const std::string& label_of(const Node& leaf) const {
    return leaf.predicts_positive() ? positive_label_ : negative_label_;
  }

  // Longest root-to-leaf path, in edges.
  int depth() const;
  std::size_t leaf_count() const;
  // Distinct split features in first-use (preorder) order.
  std::vector<std::string> features() const;

  // Throws InputError naming the first feature the row lacks.
  Prediction predict(const std::map<std::string, double, std::less<>>& row) const;

  // Node array with explicit child indexes; round-trips bit-exactly.
  std::string to_json() const;
  static DecisionTree from_json(std::string_view json);

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<Node> nodes_;
  std::string negative_label_;
  std::string positive_label_;
};

// Resolves a tree's feature names against a column layout once, for fast
// prediction over matrix rows.
class BoundTree {
 public:
  // Throws InputError naming the first feature missing from `columns`.
  BoundTree(const DecisionTree& tree, std::span<const Column> columns);

  Prediction predict(std::span<const double> row) const;

 private:
  const DecisionTree* tree_;
  std::vector<std::size_t> column_of_node_;
};

// Recursive CART: each node takes the (feature, threshold) with the lowest
// weighted Gini over all columns, earlier columns winning ties. A node
// becomes a leaf at max_depth, when pure, with fewer than min_split rows,
// or when no split leaves min_leaf rows on both sides. Labels must be the
// params' two labels; a single-class input yields a single leaf.
// Throws InputError for an empty matrix or foreign labels.
DecisionTree train_tree(const FeatureMatrix& matrix, std::span<const std::string> labels,
                        const TreeParams& params = {});

enum class ExportFormat { kText, kDot };

std::string export_tree(const DecisionTree& tree, ExportFormat format);

}  // namespace happiness::tree

#endif  // HAPPINESS_TREE_HPP_
