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

#include "happiness/eval.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <ostream>

#include "happiness/error.hpp"
#include "happiness/format.hpp"
#include "happiness/parallel.hpp"
#include "happiness/random.hpp"

namespace happiness::eval {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string set_name(std::span<const FeatureSet> sets) {
  std::string name;
  for (FeatureSet s : sets) {
    if (!name.empty()) name += '+';
    name += set_tag(s);
  }
  return name;
}

}  // namespace

Folds stratified_kfold(std::span<const std::string> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw InputError("k must be at least 2");
  std::map<std::string, std::vector<std::size_t>, std::less<>> classes;
  for (std::size_t i = 0; i < labels.size(); ++i) classes[labels[i]].push_back(i);
  for (const auto& [label, members] : classes) {
    if (members.size() < k) {
      throw InputError("class '" + label + "' has " + std::to_string(members.size()) +
                       " members, fewer than k = " + std::to_string(k));
    }
  }
  Rng rng(seed);
  Folds folds(k);
  std::size_t offset = 0;
  for (auto& [label, members] : classes) {
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t i = 0; i < members.size(); ++i) folds[(offset + i) % k].push_back(members[i]);
    offset = (offset + members.size()) % k;
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

Metrics metrics_from(const Confusion& c, std::string positive_label) {
  Metrics m;
  m.positive_label = std::move(positive_label);
  m.confusion = c;
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  const double pr = m.precision + m.recall;
  m.f_measure = pr > 0.0 ? 2.0 * m.precision * m.recall / pr : 0.0;
  m.accuracy = ratio(c.tp + c.tn, c.total());
  return m;
}

Metrics compute_metrics(std::span<const std::string> predictions,
                        std::span<const std::string> truth, std::string_view positive_label) {
  if (predictions.size() != truth.size()) {
    throw InputError("predictions and truth differ in length (" +
                     std::to_string(predictions.size()) + " vs " + std::to_string(truth.size()) + ")");
  }
  if (truth.empty()) throw InputError("cannot score an empty prediction set");
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool predicted = predictions[i] == positive_label;
    const bool actual = truth[i] == positive_label;
    if (predicted && actual) {
      ++c.tp;
    } else if (predicted) {
      ++c.fp;
    } else if (actual) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return metrics_from(c, std::string(positive_label));
}

CrossValidation cross_validate(const FeatureMatrix& matrix, std::span<const std::string> labels,
                               std::span<const std::size_t> columns, const Folds& folds,
                               const tree::TreeParams& params, std::size_t threads) {
  params.validate();
  if (labels.size() != matrix.rows()) throw InputError("label count does not match matrix rows");
  if (columns.empty()) throw InputError("no feature columns to train on");
  const FeatureMatrix view = matrix.select_columns(columns);

  std::vector<std::size_t> fold_of(matrix.rows(), folds.size());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (std::size_t r : folds[f]) {
      if (r >= matrix.rows() || fold_of[r] != folds.size()) {
        throw InputError("folds must partition the matrix rows");
      }
      fold_of[r] = f;
    }
  }
  if (std::count(fold_of.begin(), fold_of.end(), folds.size()) != 0) {
    throw InputError("folds must partition the matrix rows");
  }

  std::vector<std::optional<Metrics>> results(folds.size());
  parallel_for(
      folds.size(),
      [&](std::size_t f) {
        std::vector<std::size_t> train_rows;
        std::vector<std::string> train_labels;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
          if (fold_of[r] == f) continue;
          train_rows.push_back(r);
          train_labels.push_back(labels[r]);
        }
        try {
          const tree::DecisionTree model =
              tree::train_tree(view.select_rows(train_rows), train_labels, params);
          const tree::BoundTree bound(model, view.columns());
          std::vector<std::string> predicted;
          std::vector<std::string> truth;
          for (std::size_t r : folds[f]) {
            predicted.push_back(bound.predict(view.row(r)).label);
            truth.push_back(labels[r]);
          }
          results[f] = compute_metrics(predicted, truth, params.positive_label);
        } catch (const std::exception& e) {
          throw InputError("fold " + std::to_string(f + 1) + ": " + e.what());
        }
      },
      threads == 0 ? pipeline_threads() : threads);

  CrossValidation cv;
  Confusion pooled;
  std::array<double, 4> sums{};
  for (auto& r : results) {
    const Metrics& m = *r;
    sums[0] += m.precision;
    sums[1] += m.recall;
    sums[2] += m.f_measure;
    sums[3] += m.accuracy;
    pooled.tp += m.confusion.tp;
    pooled.fp += m.confusion.fp;
    pooled.fn += m.confusion.fn;
    pooled.tn += m.confusion.tn;
    cv.folds.push_back(std::move(*r));
  }
  const auto k = static_cast<double>(folds.size());
  cv.mean.positive_label = params.positive_label;
  cv.mean.confusion = pooled;
  cv.mean.precision = sums[0] / k;
  cv.mean.recall = sums[1] / k;
  cv.mean.f_measure = sums[2] / k;
  cv.mean.accuracy = sums[3] / k;
  return cv;
}

CrossValidation cross_validate(const FeatureMatrix& matrix, std::span<const std::string> labels,
                               std::span<const FeatureSet> sets, const tree::TreeParams& params,
                               std::size_t k, std::uint64_t seed, std::size_t threads) {
  const auto columns = matrix.columns_in(sets);
  if (columns.empty()) throw InputError("matrix has no columns in feature set " + set_name(sets));
  return cross_validate(matrix, labels, columns, stratified_kfold(labels, k, seed), params, threads);
}

const AblationRow* AblationReport::find(std::string_view name) const {
  for (const auto& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

AblationReport run_ablation(const FeatureMatrix& matrix, std::span<const std::string> labels,
                            const tree::TreeParams& params, std::size_t k, std::uint64_t seed,
                            std::size_t threads) {
  using enum FeatureSet;
  const std::vector<std::vector<FeatureSet>> plans = {
      {kLinguistic}, {kBehavior}, {kLinguistic, kBehavior}, {kLinguistic, kBehavior, kDemographic}};
  const Folds folds = stratified_kfold(labels, k, seed);
  AblationReport report;
  report.k = k;
  report.seed = seed;
  for (const auto& sets : plans) {
    const auto columns = matrix.columns_in(sets);
    const std::string name = set_name(sets);
    if (columns.empty()) throw InputError("matrix has no columns in feature set " + name);
    report.rows.push_back({name, sets, cross_validate(matrix, labels, columns, folds, params, threads)});
  }
  return report;
}

void write_ablation_csv(std::ostream& out, const AblationReport& report) {
  out << "feature_set,fold,precision,recall,f_measure,accuracy,tp,fp,fn,tn\n";
  auto line = [&](const std::string& name, const std::string& fold, const Metrics& m) {
    out << name << ',' << fold << ',' << format_number(m.precision) << ','
        << format_number(m.recall) << ',' << format_number(m.f_measure) << ','
        << format_number(m.accuracy) << ',' << m.confusion.tp << ',' << m.confusion.fp << ','
        << m.confusion.fn << ',' << m.confusion.tn << '\n';
  };
  for (const auto& row : report.rows) {
    for (std::size_t f = 0; f < row.result.folds.size(); ++f) {
      line(row.name, std::to_string(f + 1), row.result.folds[f]);
    }
    line(row.name, "mean", row.result.mean);
  }
}

std::string ablation_table(const AblationReport& report) {
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  std::string out = pad("Feature set", 13) + pad("Precision", 11) + pad("Recall", 9) +
                    pad("F-Measure", 11) + "Accuracy\n";
  for (const auto& row : report.rows) {
    const Metrics& m = row.result.mean;
    out += pad(row.name, 13) + pad(format_fixed(m.precision, 3), 11) +
           pad(format_fixed(m.recall, 3), 9) + pad(format_fixed(m.f_measure, 3), 11) +
           format_fixed(m.accuracy, 3) + "\n";
  }
  out += std::to_string(report.k) + "-fold cross-validation, seed " + std::to_string(report.seed) +
         ", positive class " +
         (report.rows.empty() ? std::string("?") : report.rows.front().result.mean.positive_label) +
         "\n";
  return out;
}

}  // namespace happiness::eval
