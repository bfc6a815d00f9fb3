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
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "happiness/error.hpp"

namespace happiness::corpus {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

template <typename Enum, std::size_t N>
struct EnumTable {
  std::array<std::string_view, N> names;

  std::string_view name(Enum v) const { return names[static_cast<std::size_t>(v)]; }

  std::optional<Enum> parse(std::string_view s) const {
    for (std::size_t i = 0; i < N; ++i) {
      if (names[i] == s) return static_cast<Enum>(i);
    }
    return std::nullopt;
  }

  std::string choices() const {
    std::string out;
    for (std::size_t i = 0; i < N; ++i) {
      if (i) out += '|';
      out += names[i];
    }
    return out;
  }
};

constexpr EnumTable<Gender, 2> kGender{{"male", "female"}};
constexpr EnumTable<Education, 8> kEducation{
    {"elementary", "junior_school", "senior_school", "specialized_secondary",
     "junior_college", "bachelor", "master", "doctor"}};
constexpr EnumTable<Marital, 2> kMarital{{"single", "married"}};
constexpr EnumTable<Residence, 4> kResidence{
    {"village", "town", "common_city", "municipality"}};
constexpr EnumTable<IncomeBand, 6> kIncome{
    {"under_2000", "2000_4000", "4000_6000", "6000_8000", "8000_10000",
     "over_10000"}};
constexpr EnumTable<Health, 2> kHealth{{"unhealthy", "healthy"}};
constexpr EnumTable<Religion, 2> kReligion{{"nonbeliever", "believer"}};

// Field accessors that turn schema problems into ParseErrors naming the
// dotted field path.
class Reader {
 public:
  explicit Reader(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  const Json& field(const Json& obj, const char* key, const std::string& path) const {
    if (!obj.is_object()) fail("field '" + path + "': expected object");
    auto it = obj.find(key);
    if (it == obj.end()) fail("missing field '" + join(path, key) + "'");
    return *it;
  }

  const Json& object(const Json& obj, const char* key, const std::string& path) const {
    const Json& v = field(obj, key, path);
    if (!v.is_object()) fail("field '" + join(path, key) + "': expected object");
    return v;
  }

  std::string string(const Json& obj, const char* key, const std::string& path) const {
    const Json& v = field(obj, key, path);
    if (!v.is_string()) fail("field '" + join(path, key) + "': expected string");
    return v.get<std::string>();
  }

  bool boolean(const Json& obj, const char* key, const std::string& path) const {
    const Json& v = field(obj, key, path);
    if (!v.is_boolean()) fail("field '" + join(path, key) + "': expected boolean");
    return v.get<bool>();
  }

  std::uint64_t count(const Json& obj, const char* key, const std::string& path) const {
    const Json& v = field(obj, key, path);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    fail("field '" + join(path, key) + "': expected nonnegative integer");
  }

  template <typename Enum, std::size_t N>
  Enum enumeration(const Json& obj, const char* key, const std::string& path,
                   const EnumTable<Enum, N>& table) const {
    const std::string s = string(obj, key, path);
    auto v = table.parse(s);
    if (!v) {
      fail("field '" + join(path, key) + "': unknown value '" + s + "' (expected " +
           table.choices() + ")");
    }
    return *v;
  }

 private:
  static std::string join(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
  }

  std::size_t line_;
};

UserRecord record_from_json(const Json& doc, std::size_t line) {
  Reader r(line);
  if (!doc.is_object()) r.fail("expected a JSON object");

  UserRecord rec;
  rec.user_id = r.string(doc, "user_id", "");
  if (rec.user_id.empty()) r.fail("field 'user_id': must not be empty");

  const Json& p = r.object(doc, "profile", "");
  Profile& prof = rec.profile;
  prof.followers_count = r.count(p, "followers_count", "profile");
  prof.following_count = r.count(p, "following_count", "profile");
  prof.mutual_followers_count = r.count(p, "mutual_followers_count", "profile");
  prof.statuses_count = r.count(p, "statuses_count", "profile");
  prof.favorites_count = r.count(p, "favorites_count", "profile");
  prof.description = r.string(p, "description", "profile");
  prof.allow_all_messages = r.boolean(p, "allow_all_messages", "profile");
  prof.allow_all_comments = r.boolean(p, "allow_all_comments", "profile");
  prof.has_custom_avatar = r.boolean(p, "has_custom_avatar", "profile");
  prof.geo_enabled = r.boolean(p, "geo_enabled", "profile");
  prof.verified = r.boolean(p, "verified", "profile");
  const auto cap = std::min(prof.followers_count, prof.following_count);
  if (prof.mutual_followers_count > cap) {
    r.fail("field 'profile.mutual_followers_count': " +
           std::to_string(prof.mutual_followers_count) +
           " exceeds min(followers_count, following_count) = " + std::to_string(cap));
  }

  const Json& posts = r.field(doc, "posts", "");
  if (!posts.is_array()) r.fail("field 'posts': expected array");
  rec.posts.reserve(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const std::string path = "posts[" + std::to_string(i) + "]";
    const Json& pj = posts[i];
    if (!pj.is_object()) r.fail("field '" + path + "': expected object");
    Post post;
    post.text = r.string(pj, "text", path);
    post.is_original = r.boolean(pj, "is_original", path);
    if (auto ts = pj.find("timestamp"); ts != pj.end() && !ts->is_null()) {
      if (!ts->is_string()) r.fail("field '" + path + ".timestamp': expected string or null");
      post.timestamp = ts->get<std::string>();
    }
    rec.posts.push_back(std::move(post));
  }

  const Json& d = r.object(doc, "demographics", "");
  Demographics& demo = rec.demographics;
  const Json& age = r.field(d, "age", "demographics");
  if (!age.is_number_integer() || age.get<std::int64_t>() <= 0 ||
      age.get<std::int64_t>() > 150) {
    r.fail("field 'demographics.age': expected positive integer years");
  }
  demo.age = age.get<int>();
  demo.gender = r.enumeration(d, "gender", "demographics", kGender);
  demo.education = r.enumeration(d, "education", "demographics", kEducation);
  demo.marital = r.enumeration(d, "marital", "demographics", kMarital);
  demo.residence = r.enumeration(d, "residence", "demographics", kResidence);
  demo.income_band = r.enumeration(d, "income_band", "demographics", kIncome);
  demo.health = r.enumeration(d, "health", "demographics", kHealth);
  demo.religion = r.enumeration(d, "religion", "demographics", kReligion);

  const Json& ohi = r.field(doc, "ohi_responses", "");
  if (!ohi.is_array()) r.fail("field 'ohi_responses': expected array");
  if (ohi.size() != kOhiItems) {
    r.fail("ohi_responses length " + std::to_string(ohi.size()) + " ≠ " +
           std::to_string(kOhiItems));
  }
  for (std::size_t i = 0; i < kOhiItems; ++i) {
    const Json& v = ohi[i];
    if (!v.is_number_integer() || v.get<std::int64_t>() < kOhiMinItem ||
        v.get<std::int64_t>() > kOhiMaxItem) {
      r.fail("ohi_responses[" + std::to_string(i) + "] = " + v.dump() + " outside 1..4");
    }
    rec.ohi_responses[i] = v.get<int>();
  }
  return rec;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  });
}

}  // namespace

std::string_view to_string(Gender v) { return kGender.name(v); }
std::string_view to_string(Education v) { return kEducation.name(v); }
std::string_view to_string(Marital v) { return kMarital.name(v); }
std::string_view to_string(Residence v) { return kResidence.name(v); }
std::string_view to_string(IncomeBand v) { return kIncome.name(v); }
std::string_view to_string(Health v) { return kHealth.name(v); }
std::string_view to_string(Religion v) { return kReligion.name(v); }

std::vector<UserRecord> parse_records(std::istream& in) {
  std::vector<UserRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    Json doc;
    try {
      doc = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    UserRecord rec = record_from_json(doc, line_no);
    if (!seen.insert(rec.user_id).second) {
      throw ParseError(line_no, "duplicate user_id '" + rec.user_id + "'");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<UserRecord> parse_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_records(in);
}

std::string serialize_record(const UserRecord& rec) {
  OrderedJson doc;
  doc["user_id"] = rec.user_id;
  const Profile& p = rec.profile;
  doc["profile"] = OrderedJson{
      {"followers_count", p.followers_count},
      {"following_count", p.following_count},
      {"mutual_followers_count", p.mutual_followers_count},
      {"statuses_count", p.statuses_count},
      {"favorites_count", p.favorites_count},
      {"description", p.description},
      {"allow_all_messages", p.allow_all_messages},
      {"allow_all_comments", p.allow_all_comments},
      {"has_custom_avatar", p.has_custom_avatar},
      {"geo_enabled", p.geo_enabled},
      {"verified", p.verified},
  };
  OrderedJson posts = OrderedJson::array();
  for (const Post& post : rec.posts) {
    OrderedJson pj;
    pj["text"] = post.text;
    pj["is_original"] = post.is_original;
    pj["timestamp"] = post.timestamp ? OrderedJson(*post.timestamp) : OrderedJson(nullptr);
    posts.push_back(std::move(pj));
  }
  doc["posts"] = std::move(posts);
  const Demographics& d = rec.demographics;
  doc["demographics"] = OrderedJson{
      {"age", d.age},
      {"gender", to_string(d.gender)},
      {"education", to_string(d.education)},
      {"marital", to_string(d.marital)},
      {"residence", to_string(d.residence)},
      {"income_band", to_string(d.income_band)},
      {"health", to_string(d.health)},
      {"religion", to_string(d.religion)},
  };
  doc["ohi_responses"] = rec.ohi_responses;
  return doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

void write_records(std::ostream& out, std::span<const UserRecord> records) {
  for (const UserRecord& rec : records) out << serialize_record(rec) << '\n';
}

std::vector<UserRecord> filter_active(std::span<const UserRecord> records,
                                      std::size_t min_posts) {
  std::vector<UserRecord> kept;
  for (const UserRecord& rec : records) {
    if (rec.posts.size() >= min_posts) kept.push_back(rec);
  }
  return kept;
}

int score_ohi(std::span<const int> responses) {
  if (responses.size() != kOhiItems) {
    throw ValidationError("ohi_responses length " + std::to_string(responses.size()) +
                          " ≠ " + std::to_string(kOhiItems));
  }
  int total = 0;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const int v = responses[i];
    if (v < kOhiMinItem || v > kOhiMaxItem) {
      throw ValidationError("ohi_responses[" + std::to_string(i) +
                            "] = " + std::to_string(v) + " outside 1..4");
    }
    total += v;
  }
  return total;
}

CohortSplit split_cohort(const std::map<std::string, int>& scores) {
  // Membership is decided with exact integer arithmetic so that thresholds
  // sitting exactly on a score are excluded regardless of rounding:
  //   x > mean + sd  <=>  d > 0 and (n - 1) d^2 > n (n S2 - S1^2),  d = n x - S1
  using Wide = __int128;
  const auto n = static_cast<Wide>(scores.size());
  if (n < 2) {
    throw InputError("degenerate cohort: need at least 2 scores, got " +
                     std::to_string(scores.size()));
  }
  Wide s1 = 0;
  Wide s2 = 0;
  for (const auto& [id, score] : scores) {
    s1 += score;
    s2 += static_cast<Wide>(score) * score;
  }
  const Wide spread = n * s2 - s1 * s1;  // n(n-1) * sample variance
  if (spread == 0) throw InputError("degenerate cohort: standard deviation is 0");

  CohortSplit split;
  split.mean = static_cast<double>(s1) / static_cast<double>(n);
  split.sd = std::sqrt(static_cast<double>(spread) /
                       (static_cast<double>(n) * static_cast<double>(n - 1)));
  const Wide bound = n * spread;
  for (const auto& [id, score] : scores) {
    const Wide d = n * score - s1;
    const bool outside = (n - 1) * d * d > bound;
    if (outside && d > 0) {
      split.hh_ids.insert(id);
    } else if (outside && d < 0) {
      split.lh_ids.insert(id);
    } else {
      split.excluded_ids.insert(id);
    }
  }
  return split;
}

CohortSplit split_records(std::span<const UserRecord> records) {
  std::map<std::string, int> scores;
  for (const UserRecord& rec : records) {
    scores.emplace(rec.user_id, score_ohi(rec.ohi_responses));
  }
  return split_cohort(scores);
}

}  // namespace happiness::corpus
