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

#ifndef HAPPINESS_BEHAVIOR_HPP_
#define HAPPINESS_BEHAVIOR_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "happiness/corpus.hpp"
#include "happiness/lexicon.hpp"
#include "happiness/matrix.hpp"

// Profile-derived behavior features, demographic codes, and assembly of the
// per-user feature matrix.
//
// Matrix columns, in order:
//   L.<category>   one per lexicon category, in lexicon order (percentages)
//   B.<feature>    the 15 behavior features below, in kBehaviorNames order
//   D.<variable>   the 8 demographic codes, in kDemographicNames order
namespace happiness::behavior {

inline constexpr std::size_t kBehaviorCount = 15;
inline constexpr std::size_t kDemographicCount = 8;
inline constexpr std::string_view kDefaultMeToken = "我";

inline constexpr std::array<std::string_view, kBehaviorCount> kBehaviorNames{
    "allow_all_messages",
    "allow_all_comments",
    "avatar",
    "mut_followers_over_followers",
    "mut_followers_over_following",
    "mut_followers_count",
    "description_length",
    "description_me",
    "favorites_count",
    "followers_count",
    "following_count",
    "geo_enabled",
    "statuses_count",
    "verified",
    "ratio_original",
};

inline constexpr std::array<std::string_view, kDemographicCount> kDemographicNames{
    "age", "gender", "education", "marital", "residence", "income_band", "health", "religion",
};

struct BehaviorFeatures {
  int allow_all_messages = 0;
  int allow_all_comments = 0;
  int avatar = 0;
  double mut_followers_over_followers = 0.0;
  double mut_followers_over_following = 0.0;
  std::uint64_t mut_followers_count = 0;
  std::uint64_t description_length = 0;  // code points
  int description_me = 0;
  std::uint64_t favorites_count = 0;
  std::uint64_t followers_count = 0;
  std::uint64_t following_count = 0;
  int geo_enabled = 0;
  std::uint64_t statuses_count = 0;
  int verified = 0;
  double ratio_original = 0.0;

  // Values in kBehaviorNames order.
  std::array<double, kBehaviorCount> values() const;

  friend bool operator==(const BehaviorFeatures&, const BehaviorFeatures&) = default;
};

// Ratios with a zero denominator are 0.0.
BehaviorFeatures extract_behavior(const corpus::Profile& profile,
                                  std::span<const corpus::Post> posts,
                                  std::string_view me_token = kDefaultMeToken);

// Codebook: education 1..8, residence 1..4, income_band 1..6 in ladder
// order; gender male=0/female=1, marital single=0/married=1,
// health unhealthy=0/healthy=1, religion nonbeliever=0/believer=1; age as is.
struct DemographicFeatures {
  int age = 0;
  int gender = 0;
  int education = 0;
  int marital = 0;
  int residence = 0;
  int income_band = 0;
  int health = 0;
  int religion = 0;

  std::array<double, kDemographicCount> values() const;

  friend bool operator==(const DemographicFeatures&, const DemographicFeatures&) = default;
};

DemographicFeatures encode_demographics(const corpus::Demographics& demographics);

// Inverse of encode_demographics; throws InputError on a code outside the
// codebook.
corpus::Demographics decode_demographics(const DemographicFeatures& codes);

// Column metadata for a name following the L./B./D. convention; age is the
// only numeric demographic. Throws InputError for an unrecognized name.
Column describe_column(std::string_view name);

struct AssembleOptions {
  std::string me_token{kDefaultMeToken};
  std::size_t threads = 0;  // 0: pipeline_threads()
};

// One row per user (labels left empty), 15 + 8 + lexicon-category columns.
// Throws InputError for an empty user list.
FeatureMatrix assemble_matrix(std::span<const corpus::UserRecord> users,
                              const lexicon::Lexicon& lexicon,
                              const AssembleOptions& options = {});

// CSV with header `user_id,<feature names...>,label`. Numbers use the
// shortest round-trip decimal form.
void write_matrix_csv(std::ostream& out, const FeatureMatrix& matrix);
FeatureMatrix read_matrix_csv(std::istream& in);

// JSON sidecar describing every column and the demographic codebook.
std::string codebook_json(const FeatureMatrix& matrix);

}  // namespace happiness::behavior

#endif  // HAPPINESS_BEHAVIOR_HPP_
