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

#ifndef HAPPINESS_EVAL_HPP_
#define HAPPINESS_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "happiness/matrix.hpp"
#include "happiness/tree.hpp"

namespace happiness::eval {

using Folds = std::vector<std::vector<std::size_t>>;

// Shuffles each class with a seeded generator and deals its members
// round-robin over the folds, carrying the fold offset from one class to
// the next (classes in sorted label order). Folds come back sorted.
// Throws InputError if k < 2 or a class has fewer than k members.
Folds stratified_kfold(std::span<const std::string> labels, std::size_t k, std::uint64_t seed);

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double accuracy = 0.0;
  std::string positive_label;
  Confusion confusion;
};

// Metrics from a confusion matrix; every zero denominator yields 0.
Metrics metrics_from(const Confusion& confusion, std::string positive_label);

// Throws InputError on a length mismatch or empty input.
Metrics compute_metrics(std::span<const std::string> predictions,
                        std::span<const std::string> truth, std::string_view positive_label);

struct CrossValidation {
  std::vector<Metrics> folds;  // in fold order
  // Unweighted mean of the fold metrics; its confusion is the pooled sum.
  Metrics mean;
};

// Trains on all folds but one, restricted to `columns`, and scores the
// held-out fold, for every fold. Folds run in parallel; results are
// independent of the thread count. Training errors are rethrown as
// InputError prefixed with "fold N: " (1-based).
CrossValidation cross_validate(const FeatureMatrix& matrix, std::span<const std::string> labels,
                               std::span<const std::size_t> columns, const Folds& folds,
                               const tree::TreeParams& params, std::size_t threads = 0);

// Same, over the columns in `sets` and stratified folds from (k, seed).
// Throws InputError if no column belongs to `sets`.
CrossValidation cross_validate(const FeatureMatrix& matrix, std::span<const std::string> labels,
                               std::span<const FeatureSet> sets, const tree::TreeParams& params,
                               std::size_t k, std::uint64_t seed, std::size_t threads = 0);

struct AblationRow {
  std::string name;  // "L", "B", "L+B" or "L+B+D"
  std::vector<FeatureSet> sets;
  CrossValidation result;
};

struct AblationReport {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<AblationRow> rows;

  const AblationRow* find(std::string_view name) const;
};

// Cross-validates L, B, L+B and L+B+D on one shared set of folds.
AblationReport run_ablation(const FeatureMatrix& matrix, std::span<const std::string> labels,
                            const tree::TreeParams& params, std::size_t k, std::uint64_t seed,
                            std::size_t threads = 0);

// `feature_set,fold,precision,recall,f_measure,accuracy,tp,fp,fn,tn`, the
// folds of each row followed by a `mean` line.
void write_ablation_csv(std::ostream& out, const AblationReport& report);

// Aligned Precision / Recall / F-Measure / Accuracy table, one line per row.
std::string ablation_table(const AblationReport& report);

}  // namespace happiness::eval

#endif  // HAPPINESS_EVAL_HPP_
