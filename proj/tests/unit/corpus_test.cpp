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

#include "happiness/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "happiness/error.hpp"
#include "happiness/random.hpp"

namespace happiness::corpus {
namespace {

std::string record_json(std::string_view id, std::string_view ohi = "",
                        std::string_view profile_extra = "") {
  std::string responses;
  if (ohi.empty()) {
    for (std::size_t i = 0; i < kOhiItems; ++i) responses += (i ? ",3" : "3");
  } else {
    responses = ohi;
  }
  std::string profile =
      R"({"followers_count":10,"following_count":8,"mutual_followers_count":5,"statuses_count":3,)"
      R"("favorites_count":0,"description":"","allow_all_messages":true,"allow_all_comments":false,)"
      R"("has_custom_avatar":true,"geo_enabled":false,"verified":false)";
  profile += profile_extra;
  profile += "}";
  return std::string(R"({"user_id":")") + std::string(id) + R"(","profile":)" + profile +
         R"(,"posts":[{"text":"你好 world","is_original":true,"timestamp":"2013-01-01T00:00:00Z"},)"
         R"({"text":"","is_original":false,"timestamp":null}],)"
         R"("demographics":{"age":30,"gender":"male","education":"master","marital":"married",)"
         R"("residence":"town","income_band":"over_10000","health":"unhealthy","religion":"believer"},)"
         R"("ohi_responses":[)" +
         responses + "]}";
}

UserRecord sample_record(std::string id) { return parse_records(record_json(id)).at(0); }

TEST(ParseRecords, EmptyStreamGivesNoRecords) {
  EXPECT_TRUE(parse_records("").empty());
  EXPECT_TRUE(parse_records("\n\n").empty());
}

TEST(ParseRecords, ReadsEveryField) {
  const UserRecord r = sample_record("alice");
  EXPECT_EQ(r.user_id, "alice");
  EXPECT_EQ(r.profile.followers_count, 10u);
  EXPECT_EQ(r.profile.mutual_followers_count, 5u);
  EXPECT_TRUE(r.profile.allow_all_messages);
  EXPECT_FALSE(r.profile.allow_all_comments);
  ASSERT_EQ(r.posts.size(), 2u);
  EXPECT_EQ(r.posts[0].text, "你好 world");
  EXPECT_EQ(r.posts[0].timestamp, "2013-01-01T00:00:00Z");
  EXPECT_FALSE(r.posts[1].is_original);
  EXPECT_FALSE(r.posts[1].timestamp.has_value());
  EXPECT_EQ(r.demographics.education, Education::kMaster);
  EXPECT_EQ(r.demographics.residence, Residence::kTown);
  EXPECT_EQ(r.demographics.income_band, IncomeBand::kOver10000);
  EXPECT_EQ(r.demographics.religion, Religion::kBeliever);
  EXPECT_EQ(score_ohi(r.ohi_responses), 87);
}

TEST(ParseRecords, ShortQuestionnaireNamesLineAndLength) {
  std::string ohi;
  for (int i = 0; i < 28; ++i) ohi += (i ? ",2" : "2");
  try {
    parse_records(record_json("bob", ohi));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_STREQ(e.what(), "line 1: ohi_responses length 28 ≠ 29");
  }
}

TEST(ParseRecords, RejectsResponseOutsideScale) {
  std::string ohi = "5";
  for (int i = 1; i < 29; ++i) ohi += ",1";
  EXPECT_THROW(parse_records(record_json("c", ohi)), ParseError);
}

TEST(ParseRecords, RejectsMutualAboveFollowCounts) {
  const std::string line = record_json("d", "", R"(,"extra_field":1)");
  EXPECT_NO_THROW(parse_records(line));  // unknown fields are ignored
  std::string bad = record_json("d");
  bad.replace(bad.find("\"mutual_followers_count\":5"), 26, "\"mutual_followers_count\":9");
  try {
    parse_records(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("mutual_followers_count"), std::string::npos);
  }
}

TEST(ParseRecords, ReportsLineOfMalformedJson) {
  const std::string text = record_json("a") + "\n" + record_json("b") + "\n{not json\n";
  try {
    parse_records(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseRecords, RejectsDuplicateIds) {
  EXPECT_THROW(parse_records(record_json("a") + "\n" + record_json("a")), ParseError);
}

TEST(ParseRecords, RejectsMissingFieldAndBadEnum) {
  std::string missing = record_json("a");
  missing.replace(missing.find("\"verified\":false"), 16, "\"verifiedx\":false");
  EXPECT_THROW(parse_records(missing), ParseError);
  std::string bad_enum = record_json("a");
  bad_enum.replace(bad_enum.find("\"town\""), 6, "\"city\"");
  EXPECT_THROW(parse_records(bad_enum), ParseError);
}

TEST(ParseRecords, RoundTripsThroughSerialization) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    UserRecord r = sample_record("u" + std::to_string(trial));
    r.profile.following_count = rng.below(1000);
    r.profile.followers_count = rng.below(1000);
    r.profile.mutual_followers_count = rng.below(std::min(r.profile.following_count, r.profile.followers_count) + 1);
    r.profile.description = trial % 2 ? "我 \"quoted\" \\ tab\t" : "";
    r.demographics.education = static_cast<Education>(rng.below(8));
    r.demographics.income_band = static_cast<IncomeBand>(rng.below(6));
    r.demographics.age = 18 + static_cast<int>(rng.below(50));
    for (auto& v : r.ohi_responses) v = 1 + static_cast<int>(rng.below(4));
    r.posts.push_back({"post " + std::to_string(trial), trial % 3 == 0, std::nullopt});
    const auto back = parse_records(serialize_record(r));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], r);
  }
}

TEST(ParseRecords, FixtureCorpusLoads) {
  std::ifstream in(std::string(HAPPINESS_TEST_DATA) + "/fixture_records.jsonl");
  ASSERT_TRUE(in);
  const auto records = parse_records(in);
  EXPECT_EQ(records.size(), 12u);
  std::ostringstream out;
  write_records(out, records);
  EXPECT_EQ(parse_records(out.str()), records);
}

TEST(FilterActive, KeepsUsersWithAtLeastMinPosts) {
  UserRecord a = sample_record("a");
  UserRecord b = sample_record("b");
  UserRecord c = sample_record("c");
  a.posts.assign(499, Post{});
  b.posts.assign(500, Post{});
  c.posts.assign(501, Post{});
  const std::vector<UserRecord> all{a, b, c};
  const auto kept = filter_active(all, 500);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].user_id, "b");
  EXPECT_EQ(kept[1].user_id, "c");
  EXPECT_EQ(filter_active(all, 0).size(), 3u);
}

TEST(ScoreOhi, SumsItems) {
  std::array<int, kOhiItems> r{};
  r.fill(1);
  EXPECT_EQ(score_ohi(r), 29);
  r.fill(4);
  EXPECT_EQ(score_ohi(r), 116);
  for (std::size_t i = 0; i < kOhiItems; ++i) r[i] = i < 15 ? 4 : 2;
  EXPECT_EQ(score_ohi(r), 88);
  std::reverse(r.begin(), r.end());
  EXPECT_EQ(score_ohi(r), 88);
}

TEST(ScoreOhi, ValidatesInput) {
  std::vector<int> short_list(28, 2);
  EXPECT_THROW(score_ohi(short_list), ValidationError);
  std::vector<int> bad(29, 2);
  bad[3] = 0;
  EXPECT_THROW(score_ohi(bad), ValidationError);
}

std::map<std::string, int> as_map(const std::vector<int>& scores) {
  std::map<std::string, int> m;
  for (std::size_t i = 0; i < scores.size(); ++i) m["s" + std::to_string(i)] = scores[i];
  return m;
}

TEST(SplitCohort, ReproducesPublishedThresholds) {
  // Integer scores cannot hit 87.6 / 21.6 exactly; this set has mean 87.6
  // and sd 21.598.
  const auto split = split_cohort(as_map({59, 60, 64, 77, 87, 97, 97, 107, 113, 115}));
  EXPECT_DOUBLE_EQ(split.mean, 87.6);
  EXPECT_NEAR(split.sd, 21.6, 0.01);
  EXPECT_NEAR(split.upper_threshold(), 109.2, 0.01);
  EXPECT_NEAR(split.lower_threshold(), 66.0, 0.01);
  EXPECT_EQ(split.hh_ids, (std::set<std::string>{"s8", "s9"}));
  EXPECT_EQ(split.lh_ids, (std::set<std::string>{"s0", "s1", "s2"}));
  EXPECT_EQ(split.excluded_ids.size(), 5u);
}

TEST(SplitCohort, BoundaryScoresAreExcluded) {
  // mean 90, sd 20: 110 and 70 sit exactly on the thresholds.
  const auto split = split_cohort(as_map({70, 90, 110}));
  EXPECT_DOUBLE_EQ(split.mean, 90.0);
  EXPECT_DOUBLE_EQ(split.sd, 20.0);
  EXPECT_TRUE(split.hh_ids.empty());
  EXPECT_TRUE(split.lh_ids.empty());
  EXPECT_EQ(split.excluded_ids.size(), 3u);
}

TEST(SplitCohort, TwoExtremeScoresAreBothExcluded) {
  const auto split = split_cohort(as_map({29, 116}));
  EXPECT_DOUBLE_EQ(split.mean, 72.5);
  EXPECT_NEAR(split.sd, 61.5183, 1e-4);
  EXPECT_TRUE(split.hh_ids.empty());
  EXPECT_TRUE(split.lh_ids.empty());
  EXPECT_EQ(split.excluded_ids.size(), 2u);
}

TEST(SplitCohort, DegenerateInputsThrow) {
  EXPECT_THROW(split_cohort(as_map({80})), InputError);
  EXPECT_THROW(split_cohort(as_map({80, 80, 80})), InputError);
  try {
    split_cohort({});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate cohort"), std::string::npos);
  }
}

TEST(SplitCohort, PartitionAndShiftInvariance) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(60);
    std::vector<int> scores(n);
    for (auto& s : scores) s = 29 + static_cast<int>(rng.below(88));
    if (std::all_of(scores.begin(), scores.end(), [&](int s) { return s == scores[0]; })) continue;
    const auto split = split_cohort(as_map(scores));
    std::set<std::string> all;
    all.insert(split.hh_ids.begin(), split.hh_ids.end());
    all.insert(split.lh_ids.begin(), split.lh_ids.end());
    all.insert(split.excluded_ids.begin(), split.excluded_ids.end());
    ASSERT_EQ(all.size(), n);
    ASSERT_EQ(split.hh_ids.size() + split.lh_ids.size() + split.excluded_ids.size(), n);

    std::vector<int> shifted = scores;
    for (auto& s : shifted) s += 17;
    const auto moved = split_cohort(as_map(shifted));
    EXPECT_NEAR(moved.mean, split.mean + 17, 1e-9);
    EXPECT_EQ(moved.hh_ids, split.hh_ids);
    EXPECT_EQ(moved.lh_ids, split.lh_ids);
  }
}

}  // namespace
}  // namespace happiness::corpus
