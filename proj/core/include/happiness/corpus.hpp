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

#ifndef HAPPINESS_CORPUS_HPP_
#define HAPPINESS_CORPUS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Participant records: the JSON-Lines data model, questionnaire scoring and
// the high/low happiness cohort split.
namespace happiness::corpus {

inline constexpr std::size_t kOhiItems = 29;
inline constexpr int kOhiMinItem = 1;
inline constexpr int kOhiMaxItem = 4;
inline constexpr int kDefaultMinPosts = 500;

struct Post {
  std::string text;
  bool is_original = true;
  std::optional<std::string> timestamp;

  friend bool operator==(const Post&, const Post&) = default;
};

struct Profile {
  std::uint64_t followers_count = 0;
  std::uint64_t following_count = 0;
  std::uint64_t mutual_followers_count = 0;
  std::uint64_t statuses_count = 0;
  std::uint64_t favorites_count = 0;
  std::string description;
  bool allow_all_messages = false;
  bool allow_all_comments = false;
  bool has_custom_avatar = false;
  bool geo_enabled = false;
  bool verified = false;

  friend bool operator==(const Profile&, const Profile&) = default;
};

// Enumerators are declared in codebook order; the integer codes used in
// feature matrices come from behavior.hpp.
enum class Gender { kMale, kFemale };
enum class Education {
  kElementary,
  kJuniorSchool,
  kSeniorSchool,
  kSpecializedSecondary,
  kJuniorCollege,
  kBachelor,
  kMaster,
  kDoctor,
};
enum class Marital { kSingle, kMarried };
enum class Residence { kVillage, kTown, kCommonCity, kMunicipality };
enum class IncomeBand {
  kUnder2000,
  k2000To4000,
  k4000To6000,
  k6000To8000,
  k8000To10000,
  kOver10000,
};
enum class Health { kUnhealthy, kHealthy };
enum class Religion { kNonbeliever, kBeliever };

struct Demographics {
  int age = 18;
  Gender gender = Gender::kFemale;
  Education education = Education::kJuniorCollege;
  Marital marital = Marital::kSingle;
  Residence residence = Residence::kCommonCity;
  IncomeBand income_band = IncomeBand::k2000To4000;
  Health health = Health::kHealthy;
  Religion religion = Religion::kNonbeliever;

  friend bool operator==(const Demographics&, const Demographics&) = default;
};

struct UserRecord {
  std::string user_id;
  Profile profile;
  std::vector<Post> posts;
  Demographics demographics;
  std::array<int, kOhiItems> ohi_responses{};

  friend bool operator==(const UserRecord&, const UserRecord&) = default;
};

// JSON spellings of the demographic enums ("bachelor", "common_city", ...).
std::string_view to_string(Gender v);
std::string_view to_string(Education v);
std::string_view to_string(Marital v);
std::string_view to_string(Residence v);
std::string_view to_string(IncomeBand v);
std::string_view to_string(Health v);
std::string_view to_string(Religion v);

// Parses a JSON-Lines stream, one user object per non-blank line. Throws
// ParseError ("line N: ...") on malformed JSON or any schema violation,
// including a duplicate user_id.
std::vector<UserRecord> parse_records(std::istream& in);
std::vector<UserRecord> parse_records(std::string_view text);

// One compact JSON object without trailing newline.
std::string serialize_record(const UserRecord& record);
void write_records(std::ostream& out, std::span<const UserRecord> records);

// Keeps records with at least `min_posts` posts, in order.
std::vector<UserRecord> filter_active(std::span<const UserRecord> records,
                                      std::size_t min_posts = kDefaultMinPosts);

// Sum of the 29 item scores, in [29, 116]. Throws ValidationError on a
// wrong length or an item outside 1..4.
int score_ohi(std::span<const int> responses);

struct CohortSplit {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1)
  std::set<std::string> hh_ids;
  std::set<std::string> lh_ids;
  std::set<std::string> excluded_ids;

  double upper_threshold() const { return mean + sd; }
  double lower_threshold() const { return mean - sd; }
};

// High group: score > mean + sd. Low group: score < mean - sd. Everyone
// else, including scores exactly on a threshold, is excluded. Throws
// InputError("degenerate cohort ...") for fewer than 2 scores or sd == 0.
CohortSplit split_cohort(const std::map<std::string, int>& scores);

// Scores every record and splits the cohort.
CohortSplit split_records(std::span<const UserRecord> records);

}  // namespace happiness::corpus

#endif  // HAPPINESS_CORPUS_HPP_
