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

#include "happiness/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <json.hpp>

#include "happiness/error.hpp"
#include "happiness/format.hpp"

namespace happiness::tree {
namespace {

using u128 = unsigned __int128;

// Weighted Gini of a split is (2/n) * S with S = aL bL / nL + aR bR / nR,
// where a and b are the negative and positive counts on each side. Within
// one node n is fixed, so candidates are ranked by S, kept as an exact
// fraction so that ties are real ties and not rounding accidents.
struct Score {
  u128 num = 0;
  u128 den = 1;

  bool operator<(const Score& o) const { return num * o.den < o.num * den; }
};

Score score_of(std::uint64_t al, std::uint64_t bl, std::uint64_t ar, std::uint64_t br) {
  const u128 nl = al + bl;
  const u128 nr = ar + br;
  return {u128{al} * bl * nr + u128{ar} * br * nl, nl * nr};
}

double weighted_gini_of(const Score& s, std::uint64_t n) {
  return 2.0 * static_cast<double>(s.num) / static_cast<double>(s.den) / static_cast<double>(n);
}

// Threshold strictly between a < b such that a goes left and b goes right.
double threshold_between(double a, double b) {
  const double mid = std::midpoint(a, b);
  return mid > a ? mid : b;
}

struct Candidate {
  Score score;
  Split split;
};

// Scans `order` (row ids sorted by value) for the best boundary.
std::optional<Candidate> scan(std::span<const std::size_t> order, std::span<const double> values,
                              std::span<const std::uint8_t> positive, std::size_t min_leaf) {
  const std::size_t n = order.size();
  if (n < 2) return std::nullopt;
  std::uint64_t total_pos = 0;
  for (std::size_t i : order) total_pos += positive[i];
  const std::uint64_t total_neg = n - total_pos;

  std::optional<Candidate> best;
  std::uint64_t left_pos = 0;
  for (std::size_t k = 1; k < n; ++k) {
    left_pos += positive[order[k - 1]];
    const double lo = values[order[k - 1]];
    const double hi = values[order[k]];
    if (!(lo < hi)) continue;
    if (k < min_leaf || n - k < min_leaf) continue;
    const std::uint64_t left_neg = k - left_pos;
    const Score s = score_of(left_neg, left_pos, total_neg - left_neg, total_pos - left_pos);
    if (!best || s < best->score) {
      best = Candidate{s, Split{threshold_between(lo, hi), weighted_gini_of(s, n), k, n - k}};
    }
  }
  return best;
}

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("tree input contains a non-finite value");
  }
}

class Builder {
 public:
  Builder(const FeatureMatrix& matrix, std::vector<std::uint8_t> positive, const TreeParams& params)
      : matrix_(matrix), positive_(std::move(positive)), params_(params) {
    columns_.reserve(matrix.cols());
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      columns_.push_back(matrix.column_values(c));
      check_finite(columns_.back());
    }
  }

  std::vector<Node> build() {
    std::vector<std::size_t> rows(matrix_.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<std::size_t>& rows, int depth) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Node node;
    node.depth = depth;
    for (std::size_t r : rows) ++node.counts[positive_[r]];

    const bool pure = node.counts[0] == 0 || node.counts[1] == 0;
    if (depth < params_.max_depth && !pure && rows.size() >= params_.min_split) {
      if (auto choice = choose(rows)) {
        const auto& [column, split] = *choice;
        const auto& values = columns_[column];
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t r : rows) (values[r] < split.threshold ? left : right).push_back(r);
        rows.clear();
        rows.shrink_to_fit();
        node.feature = matrix_.column(column).name;
        node.threshold = split.threshold;
        node.left = grow(left, depth + 1);
        node.right = grow(right, depth + 1);
      }
    }
    nodes_[static_cast<std::size_t>(id)] = std::move(node);
    return id;
  }

  std::optional<std::pair<std::size_t, Split>> choose(std::span<const std::size_t> rows) const {
    std::optional<std::pair<std::size_t, Candidate>> best;
    std::vector<std::size_t> order(rows.begin(), rows.end());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      const auto& values = columns_[c];
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b] || (values[a] == values[b] && a < b);
      });
      auto cand = scan(order, values, positive_, params_.min_leaf);
      if (cand && (!best || cand->score < best->second.score)) best.emplace(c, *cand);
    }
    if (!best) return std::nullopt;
    return std::pair{best->first, best->second.split};
  }

  const FeatureMatrix& matrix_;
  std::vector<std::vector<double>> columns_;
  std::vector<std::uint8_t> positive_;
  const TreeParams& params_;
  std::vector<Node> nodes_;
};

Prediction leaf_prediction(const DecisionTree& tree, const Node& leaf) {
  const double total = static_cast<double>(leaf.counts[0] + leaf.counts[1]);
  return {tree.label_of(leaf), total > 0 ? static_cast<double>(leaf.counts[1]) / total : 0.0};
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string leaf_text(const DecisionTree& tree, const Node& node) {
  return "leaf " + tree.label_of(node) + " (" + tree.negative_label() + "=" +
         std::to_string(node.counts[0]) + ", " + tree.positive_label() + "=" +
         std::to_string(node.counts[1]) + ")";
}

std::string split_text(const Node& node) {
  return node.feature + " < " + format_number(node.threshold) + "?";
}

void render_text(const DecisionTree& tree, int id, int indent, std::string_view prefix,
                 std::string& out) {
  const Node& node = tree.nodes()[static_cast<std::size_t>(id)];
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += prefix;
  out += node.is_leaf() ? leaf_text(tree, node) : split_text(node);
  out += '\n';
  if (node.is_leaf()) return;
  render_text(tree, node.left, indent + 1, "yes: ", out);
  render_text(tree, node.right, indent + 1, "no: ", out);
}

}  // namespace

void TreeParams::validate() const {
  if (max_depth < 1) throw InputError("max_depth must be at least 1");
  if (min_leaf < 1) throw InputError("min_leaf must be at least 1");
  if (min_leaf > min_split) throw InputError("min_leaf must not exceed min_split");
  if (negative_label == positive_label) throw InputError("class labels must differ");
}

double gini(std::uint64_t negative, std::uint64_t positive) {
  const std::uint64_t n = negative + positive;
  if (n == 0) throw InputError("gini of an empty node");
  const double p = static_cast<double>(positive) / static_cast<double>(n);
  const double q = static_cast<double>(negative) / static_cast<double>(n);
  return 1.0 - (p * p + q * q);
}

std::optional<Split> best_split(std::span<const double> values,
                                std::span<const std::uint8_t> positive, std::size_t min_leaf) {
  if (values.size() != positive.size()) throw InputError("values and labels differ in length");
  check_finite(values);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  auto best = scan(order, values, positive, std::max<std::size_t>(min_leaf, 1));
  if (!best) return std::nullopt;
  return best->split;
}

DecisionTree::DecisionTree(std::vector<Node> nodes, std::string negative_label,
                           std::string positive_label)
    : nodes_(std::move(nodes)),
      negative_label_(std::move(negative_label)),
      positive_label_(std::move(positive_label)) {
  if (nodes_.empty()) throw ValidationError("tree has no nodes");
  if (negative_label_ == positive_label_) throw ValidationError("tree class labels must differ");
  const int n = static_cast<int>(nodes_.size());
  std::vector<int> parents(nodes_.size(), 0);
  for (int i = 0; i < n; ++i) {
    const Node& node = nodes_[static_cast<std::size_t>(i)];
    if ((node.left < 0) != (node.right < 0)) {
      throw ValidationError("node " + std::to_string(i) + " has exactly one child");
    }
    if (node.is_leaf()) continue;
    for (int child : {node.left, node.right}) {
      if (child <= i || child >= n) {
        throw ValidationError("node " + std::to_string(i) + " has an invalid child index");
      }
      ++parents[static_cast<std::size_t>(child)];
      if (nodes_[static_cast<std::size_t>(child)].depth != node.depth + 1) {
        throw ValidationError("node " + std::to_string(child) + " has an inconsistent depth");
      }
    }
    if (node.feature.empty()) throw ValidationError("split node " + std::to_string(i) + " has no feature");
    if (!std::isfinite(node.threshold)) {
      throw ValidationError("split node " + std::to_string(i) + " has a non-finite threshold");
    }
  }
  if (nodes_[0].depth != 0) throw ValidationError("root depth must be 0");
  for (int i = 1; i < n; ++i) {
    if (parents[static_cast<std::size_t>(i)] != 1) {
      throw ValidationError("node " + std::to_string(i) + " is not reachable exactly once");
    }
  }
}

int DecisionTree::depth() const {
  int d = 0;
  for (const Node& node : nodes_) d = std::max(d, node.depth);
  return d;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

std::vector<std::string> DecisionTree::features() const {
  std::vector<std::string> out;
  for (const Node& node : nodes_) {
    if (!node.is_leaf() && std::find(out.begin(), out.end(), node.feature) == out.end()) {
      out.push_back(node.feature);
    }
  }
  return out;
}

Prediction DecisionTree::predict(const std::map<std::string, double, std::less<>>& row) const {
  const Node* node = &root();
  while (!node->is_leaf()) {
    auto it = row.find(node->feature);
    if (it == row.end()) throw InputError("row is missing feature " + node->feature);
    node = &nodes_[static_cast<std::size_t>(it->second < node->threshold ? node->left : node->right)];
  }
  return leaf_prediction(*this, *node);
}

std::string DecisionTree::to_json() const {
  using Json = nlohmann::ordered_json;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& node = nodes_[i];
    Json j;
    j["id"] = i;
    j["depth"] = node.depth;
    if (node.is_leaf()) {
      j["label"] = label_of(node);
    } else {
      j["feature"] = node.feature;
      j["threshold"] = node.threshold;
      j["left"] = node.left;
      j["right"] = node.right;
    }
    j["counts"] = {node.counts[0], node.counts[1]};
    nodes.push_back(std::move(j));
  }
  Json doc;
  doc["negative_label"] = negative_label_;
  doc["positive_label"] = positive_label_;
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

DecisionTree DecisionTree::from_json(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("tree JSON: ") + e.what());
  }
  try {
    std::vector<Node> nodes;
    const auto& arr = doc.at("nodes");
    if (!arr.is_array()) throw InputError("tree JSON: nodes must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& j = arr[i];
      if (j.at("id").get<std::size_t>() != i) throw InputError("tree JSON: node ids must be 0..n-1 in order");
      Node node;
      node.depth = j.at("depth").get<int>();
      const auto& counts = j.at("counts");
      if (!counts.is_array() || counts.size() != 2) throw InputError("tree JSON: counts must be a pair");
      node.counts = {counts[0].get<std::uint64_t>(), counts[1].get<std::uint64_t>()};
      if (j.contains("feature")) {
        node.feature = j.at("feature").get<std::string>();
        node.threshold = j.at("threshold").get<double>();
        node.left = j.at("left").get<int>();
        node.right = j.at("right").get<int>();
      }
      nodes.push_back(std::move(node));
    }
    return DecisionTree(std::move(nodes), doc.at("negative_label").get<std::string>(),
                        doc.at("positive_label").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("tree JSON: ") + e.what());
  }
}

BoundTree::BoundTree(const DecisionTree& tree, std::span<const Column> columns)
    : tree_(&tree), column_of_node_(tree.nodes().size(), 0) {
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const Node& node = tree.nodes()[i];
    if (node.is_leaf()) continue;
    auto it = std::find_if(columns.begin(), columns.end(),
                           [&](const Column& c) { return c.name == node.feature; });
    if (it == columns.end()) throw InputError("matrix is missing feature " + node.feature);
    column_of_node_[i] = static_cast<std::size_t>(it - columns.begin());
  }
}

Prediction BoundTree::predict(std::span<const double> row) const {
  std::size_t i = 0;
  const auto& nodes = tree_->nodes();
  while (!nodes[i].is_leaf()) {
    const Node& node = nodes[i];
    const double v = row[column_of_node_[i]];
    i = static_cast<std::size_t>(v < node.threshold ? node.left : node.right);
  }
  return leaf_prediction(*tree_, nodes[i]);
}

DecisionTree train_tree(const FeatureMatrix& matrix, std::span<const std::string> labels,
                        const TreeParams& params) {
  params.validate();
  if (matrix.rows() == 0) throw InputError("cannot train a tree on an empty matrix");
  if (labels.size() != matrix.rows()) throw InputError("label count does not match matrix rows");
  std::vector<std::uint8_t> positive(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == params.positive_label) {
      positive[i] = 1;
    } else if (labels[i] != params.negative_label) {
      throw InputError("unexpected class label '" + labels[i] + "'");
    }
  }
  Builder builder(matrix, std::move(positive), params);
  return DecisionTree(builder.build(), params.negative_label, params.positive_label);
}

std::string export_tree(const DecisionTree& tree, ExportFormat format) {
  std::string out;
  if (format == ExportFormat::kText) {
    render_text(tree, 0, 0, "", out);
    return out;
  }
  out = "digraph tree {\n  node [shape=box];\n";
  const auto& nodes = tree.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    out += "  n" + std::to_string(i) + " [label=\"" +
           dot_escape(node.is_leaf() ? leaf_text(tree, node) : split_text(node)) + "\"];\n";
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    if (node.is_leaf()) continue;
    out += "  n" + std::to_string(i) + " -> n" + std::to_string(node.left) + " [label=\"yes\"];\n";
    out += "  n" + std::to_string(i) + " -> n" + std::to_string(node.right) + " [label=\"no\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace happiness::tree
