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

#include "bench_data.hpp"

#include "happiness/behavior.hpp"
#include "happiness/synth.hpp"

namespace happiness::bench {
namespace {

struct Data {
  lexicon::Lexicon lex = lexicon::demo_lexicon();
  std::vector<corpus::UserRecord> users;
  FeatureMatrix matrix;

  Data() {
    synth::CohortSpec spec;
    spec.posts_per_user = 100;
    const auto cohort = synth::generate_cohort(spec, lex);
    std::vector<std::string> labels;
    for (const auto& r : cohort.records) {
      const bool hh = cohort.hh_ids.count(r.user_id) > 0;
      if (!hh && !cohort.lh_ids.count(r.user_id)) continue;
      users.push_back(r);
      labels.push_back(hh ? "HH" : "LH");
    }
    matrix = behavior::assemble_matrix(users, lex);
    for (std::size_t i = 0; i < labels.size(); ++i) matrix.set_label(i, labels[i]);
  }
};

const Data& data() {
  static const Data d;
  return d;
}

}  // namespace

const lexicon::Lexicon& lexicon() { return data().lex; }
const std::vector<corpus::UserRecord>& grouped_users() { return data().users; }
const FeatureMatrix& matrix() { return data().matrix; }

}  // namespace happiness::bench
