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

#include "happiness/behavior.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "happiness/error.hpp"
#include "happiness/format.hpp"
#include "happiness/parallel.hpp"
#include "happiness/unicode.hpp"

namespace happiness::behavior {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV record; handles RFC 4180 quoting within a single line.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& names, std::string_view s) {
  return std::find(names.begin(), names.end(), s) != names.end();
}

int checked_code(int code, int lo, int hi, const char* what) {
  if (code < lo || code > hi) {
    throw InputError(std::string("demographic code out of range for ") + what + ": " +
                     std::to_string(code));
  }
  return code;
}

}  // namespace

std::array<double, kBehaviorCount> BehaviorFeatures::values() const {
  return {
      static_cast<double>(allow_all_messages),
      static_cast<double>(allow_all_comments),
      static_cast<double>(avatar),
      mut_followers_over_followers,
      mut_followers_over_following,
      static_cast<double>(mut_followers_count),
      static_cast<double>(description_length),
      static_cast<double>(description_me),
      static_cast<double>(favorites_count),
      static_cast<double>(followers_count),
      static_cast<double>(following_count),
      static_cast<double>(geo_enabled),
      static_cast<double>(statuses_count),
      static_cast<double>(verified),
      ratio_original,
  };
}

BehaviorFeatures extract_behavior(const corpus::Profile& profile,
                                  std::span<const corpus::Post> posts,
                                  std::string_view me_token) {
  BehaviorFeatures f;
  f.allow_all_messages = profile.allow_all_messages ? 1 : 0;
  f.allow_all_comments = profile.allow_all_comments ? 1 : 0;
  f.avatar = profile.has_custom_avatar ? 1 : 0;
  f.mut_followers_over_followers = ratio(profile.mutual_followers_count, profile.followers_count);
  f.mut_followers_over_following = ratio(profile.mutual_followers_count, profile.following_count);
  f.mut_followers_count = profile.mutual_followers_count;
  f.description_length = unicode::length(profile.description);
  f.description_me =
      !me_token.empty() && profile.description.find(me_token) != std::string::npos ? 1 : 0;
  f.favorites_count = profile.favorites_count;
  f.followers_count = profile.followers_count;
  f.following_count = profile.following_count;
  f.geo_enabled = profile.geo_enabled ? 1 : 0;
  f.statuses_count = profile.statuses_count;
  f.verified = profile.verified ? 1 : 0;
  const auto originals = static_cast<std::uint64_t>(
      std::count_if(posts.begin(), posts.end(), [](const corpus::Post& p) { return p.is_original; }));
  f.ratio_original = ratio(originals, posts.size());
  return f;
}

std::array<double, kDemographicCount> DemographicFeatures::values() const {
  return {static_cast<double>(age),       static_cast<double>(gender),
          static_cast<double>(education), static_cast<double>(marital),
          static_cast<double>(residence), static_cast<double>(income_band),
          static_cast<double>(health),    static_cast<double>(religion)};
}

DemographicFeatures encode_demographics(const corpus::Demographics& d) {
  DemographicFeatures f;
  f.age = d.age;
  f.gender = static_cast<int>(d.gender);
  f.education = static_cast<int>(d.education) + 1;
  f.marital = static_cast<int>(d.marital);
  f.residence = static_cast<int>(d.residence) + 1;
  f.income_band = static_cast<int>(d.income_band) + 1;
  f.health = static_cast<int>(d.health);
  f.religion = static_cast<int>(d.religion);
  return f;
}

corpus::Demographics decode_demographics(const DemographicFeatures& f) {
  if (f.age <= 0) throw InputError("demographic age must be positive: " + std::to_string(f.age));
  corpus::Demographics d;
  d.age = f.age;
  d.gender = static_cast<corpus::Gender>(checked_code(f.gender, 0, 1, "gender"));
  d.education = static_cast<corpus::Education>(checked_code(f.education, 1, 8, "education") - 1);
  d.marital = static_cast<corpus::Marital>(checked_code(f.marital, 0, 1, "marital"));
  d.residence = static_cast<corpus::Residence>(checked_code(f.residence, 1, 4, "residence") - 1);
  d.income_band =
      static_cast<corpus::IncomeBand>(checked_code(f.income_band, 1, 6, "income_band") - 1);
  d.health = static_cast<corpus::Health>(checked_code(f.health, 0, 1, "health"));
  d.religion = static_cast<corpus::Religion>(checked_code(f.religion, 0, 1, "religion"));
  return d;
}

Column describe_column(std::string_view name) {
  if (name.size() > 2 && name[1] == '.') {
    const std::string_view base = name.substr(2);
    switch (name[0]) {
      case 'L':
        return {std::string(name), FeatureSet::kLinguistic, FeatureKind::kNumeric};
      case 'B':
        if (contains(kBehaviorNames, base)) {
          return {std::string(name), FeatureSet::kBehavior, FeatureKind::kNumeric};
        }
        break;
      case 'D':
        if (contains(kDemographicNames, base)) {
          return {std::string(name), FeatureSet::kDemographic,
                  base == "age" ? FeatureKind::kNumeric : FeatureKind::kCategorical};
        }
        break;
      default:
        break;
    }
  }
  throw InputError("unrecognized feature column '" + std::string(name) + "'");
}

FeatureMatrix assemble_matrix(std::span<const corpus::UserRecord> users,
                              const lexicon::Lexicon& lexicon, const AssembleOptions& options) {
  if (users.empty()) throw InputError("cannot assemble a feature matrix from zero users");

  std::vector<Column> columns;
  columns.reserve(lexicon.category_count() + kBehaviorCount + kDemographicCount);
  for (const lexicon::Category& c : lexicon.categories()) {
    columns.push_back(describe_column("L." + c.name));
  }
  for (std::string_view n : kBehaviorNames) columns.push_back(describe_column("B." + std::string(n)));
  for (std::string_view n : kDemographicNames) {
    columns.push_back(describe_column("D." + std::string(n)));
  }
  const std::size_t width = columns.size();

  std::vector<std::vector<double>> rows(users.size());
  parallel_for(
      users.size(),
      [&](std::size_t i) {
        const corpus::UserRecord& u = users[i];
        std::vector<double>& row = rows[i];
        row.reserve(width);
        const lexicon::LinguisticFeatures lf = lexicon::extract_linguistic(u, lexicon);
        row.insert(row.end(), lf.percent.begin(), lf.percent.end());
        const auto bf = extract_behavior(u.profile, u.posts, options.me_token).values();
        row.insert(row.end(), bf.begin(), bf.end());
        const auto df = encode_demographics(u.demographics).values();
        row.insert(row.end(), df.begin(), df.end());
      },
      options.threads ? options.threads : pipeline_threads());

  FeatureMatrix matrix(std::move(columns));
  for (std::size_t i = 0; i < users.size(); ++i) matrix.add_row(users[i].user_id, rows[i]);
  return matrix;
}

void write_matrix_csv(std::ostream& out, const FeatureMatrix& m) {
  out << "user_id";
  for (const Column& c : m.columns()) out << ',' << csv_field(c.name);
  out << ",label\n";
  std::string line;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    line = csv_field(m.user_id(r));
    for (double v : m.row(r)) {
      line += ',';
      line += format_number(v);
    }
    line += ',';
    line += csv_field(m.label(r));
    line += '\n';
    out << line;
  }
}

FeatureMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty matrix file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv(line, line_no);
  if (header.size() < 3 || header.front() != "user_id" || header.back() != "label") {
    throw ParseError(1, "matrix header must be 'user_id,<features...>,label'");
  }
  std::vector<Column> columns;
  for (std::size_t i = 1; i + 1 < header.size(); ++i) {
    try {
      columns.push_back(describe_column(header[i]));
    } catch (const InputError& e) {
      throw ParseError(1, e.what());
    }
  }
  FeatureMatrix m(std::move(columns));
  std::vector<double> values(m.cols());
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv(line, line_no);
    if (fields.size() != header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string& f = fields[j + 1];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw ParseError(line_no, "column '" + header[j + 1] + "': not a number '" + f + "'");
      }
      values[j] = v;
    }
    m.add_row(fields.front(), values, fields.back());
  }
  return m;
}

std::string codebook_json(const FeatureMatrix& matrix) {
  using Json = nlohmann::ordered_json;
  Json cols = Json::array();
  for (const Column& c : matrix.columns()) {
    cols.push_back({{"name", c.name},
                    {"set", std::string(1, set_tag(c.set))},
                    {"kind", c.kind == FeatureKind::kNumeric ? "numeric" : "categorical"}});
  }
  Json codes;
  codes["gender"] = {{"0", "male"}, {"1", "female"}};
  codes["education"] = {{"1", "elementary"},     {"2", "junior_school"},
                        {"3", "senior_school"},  {"4", "specialized_secondary"},
                        {"5", "junior_college"}, {"6", "bachelor"},
                        {"7", "master"},         {"8", "doctor"}};
  codes["marital"] = {{"0", "single"}, {"1", "married"}};
  codes["residence"] = {{"1", "village"}, {"2", "town"}, {"3", "common_city"}, {"4", "municipality"}};
  codes["income_band"] = {{"1", "under_2000"}, {"2", "2000_4000"},  {"3", "4000_6000"},
                          {"4", "6000_8000"},  {"5", "8000_10000"}, {"6", "over_10000"}};
  codes["health"] = {{"0", "unhealthy"}, {"1", "healthy"}};
  codes["religion"] = {{"0", "nonbeliever"}, {"1", "believer"}};
  Json doc;
  doc["rows"] = matrix.rows();
  doc["columns"] = std::move(cols);
  doc["demographic_codes"] = std::move(codes);
  doc["labels"] = {"HH", "LH"};
  return doc.dump(2) + "\n";
}

}  // namespace happiness::behavior
