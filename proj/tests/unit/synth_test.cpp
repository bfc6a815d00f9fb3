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

#include "happiness/synth.hpp"

#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "happiness/behavior.hpp"
#include "happiness/error.hpp"
#include "happiness/stats.hpp"

namespace happiness::synth {
namespace {

CohortSpec small_spec() {
  CohortSpec spec;
  spec.n_hh = 40;
  spec.n_lh = 30;
  spec.posts_per_user = 20;
  spec.seed = 77;
  return spec;
}

std::string as_jsonl(const Cohort& c) {
  std::ostringstream out;
  corpus::write_records(out, c.records);
  return out.str();
}

TEST(DefaultEffects, TwentyFourDistinctColumns) {
  const auto effects = default_effects();
  EXPECT_EQ(effects.size(), 24u);
  std::set<std::string> names;
  std::map<char, int> per_set;
  for (const auto& e : effects) {
    names.insert(e.feature);
    ++per_set[e.feature[0]];
    EXPECT_GT(e.hh_shift, 0.0);
  }
  EXPECT_EQ(names.size(), 24u);
  EXPECT_EQ(per_set['L'], 13);
  EXPECT_EQ(per_set['B'], 5);
  EXPECT_EQ(per_set['D'], 6);
}

TEST(GenerateCohort, SameSeedSameBytes) {
  const auto lex = lexicon::demo_lexicon();
  const auto a = generate_cohort(small_spec(), lex);
  const auto b = generate_cohort(small_spec(), lex);
  EXPECT_EQ(as_jsonl(a), as_jsonl(b));
  EXPECT_EQ(manifest_json(small_spec(), a), manifest_json(small_spec(), b));
  CohortSpec other = small_spec();
  other.seed = 78;
  EXPECT_NE(as_jsonl(generate_cohort(other, lex)), as_jsonl(a));
}

TEST(GenerateCohort, RecordsPassIngestAndSplitExactly) {
  const auto lex = lexicon::demo_lexicon();
  const auto spec = small_spec();
  const auto cohort = generate_cohort(spec, lex);
  const auto reparsed = corpus::parse_records(as_jsonl(cohort));
  EXPECT_EQ(reparsed, cohort.records);
  const auto split = corpus::split_records(reparsed);
  EXPECT_EQ(split.hh_ids, cohort.hh_ids);
  EXPECT_EQ(split.lh_ids, cohort.lh_ids);
  EXPECT_EQ(cohort.hh_ids.size(), spec.n_hh);
  EXPECT_EQ(cohort.lh_ids.size(), spec.n_lh);
  for (const auto& r : cohort.records) EXPECT_EQ(r.posts.size(), spec.posts_per_user);

  const auto manifest = nlohmann::json::parse(manifest_json(spec, cohort));
  EXPECT_EQ(manifest["seed"], 77);
  EXPECT_EQ(manifest["planted_effects"].size(), 24u);
  EXPECT_EQ(manifest["hh_ids"].size(), spec.n_hh);
}

TEST(GenerateCohort, RejectsBadSpecs) {
  const auto lex = lexicon::demo_lexicon();
  CohortSpec spec = small_spec();
  spec.planted_effects = {{"L.nonexistent", 1.0}};
  EXPECT_THROW(generate_cohort(spec, lex), InputError);
  spec.planted_effects = {{"B.mut_followers_over_followers", 1.0}};
  EXPECT_THROW(generate_cohort(spec, lex), InputError);
  spec.planted_effects = {{"Q.work", 1.0}};
  EXPECT_THROW(generate_cohort(spec, lex), InputError);
  spec.planted_effects = {{"L.work", 1.0}, {"L.work", 0.5}};
  EXPECT_THROW(generate_cohort(spec, lex), InputError);
  spec = small_spec();
  spec.n_hh = 10;
  spec.n_lh = 9;
  EXPECT_THROW(generate_cohort(spec, lex), InputError);
}

// With strong planted shifts, the planted features are selected with the
// planted direction even on a small cohort. Coupled columns (follower
// ratios, for one) may be selected alongside.
TEST(GenerateCohort, StrongEffectsAreRecovered) {
  const auto lex = lexicon::demo_lexicon();
  CohortSpec spec = small_spec();
  spec.n_hh = 60;
  spec.n_lh = 60;
  spec.posts_per_user = 100;
  spec.planted_effects = {{"L.work", 2.0}, {"B.followers_count", 2.0}, {"D.health", 2.0}};
  const auto cohort = generate_cohort(spec, lex);
  std::vector<corpus::UserRecord> grouped;
  std::vector<std::string> labels;
  for (const auto& r : cohort.records) {
    if (cohort.hh_ids.count(r.user_id)) labels.push_back("HH");
    else if (cohort.lh_ids.count(r.user_id)) labels.push_back("LH");
    else continue;
    grouped.push_back(r);
  }
  const auto m = behavior::assemble_matrix(grouped, lex);
  const auto report = stats::select_features(m, labels);
  for (const auto& e : spec.planted_effects) {
    const auto* row = report.find(e.feature);
    ASSERT_NE(row, nullptr) << e.feature;
    EXPECT_TRUE(row->selected) << e.feature;
    EXPECT_EQ(row->direction, stats::Direction::kHhHigher) << e.feature;
  }
}

}  // namespace
}  // namespace happiness::synth
