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

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <string_view>

#include <boost/math/distributions/normal.hpp>
#include <json.hpp>

#include "happiness/behavior.hpp"
#include "happiness/error.hpp"
#include "happiness/random.hpp"

namespace happiness::synth {
namespace {

enum class Group { kHigh, kLow, kMiddle };

// Latent slots drawn for every user, in this order, after one slot per
// lexicon category.
enum Latent : std::size_t {
  kAllowMessages,
  kAllowComments,
  kAvatar,
  kMutualOverFollowing,
  kMutualCount,
  kDescriptionLength,
  kDescriptionMe,
  kFavorites,
  kFollowers,
  kFollowing,
  kGeo,
  kStatuses,
  kVerified,
  kRatioOriginal,
  kAge,
  kGender,
  kEducation,
  kMarital,
  kResidence,
  kIncome,
  kHealth,
  kReligion,
  kLatentCount,
};

const std::map<std::string_view, Latent>& fixed_latents() {
  static const std::map<std::string_view, Latent> kMap = {
      {"B.allow_all_messages", kAllowMessages},
      {"B.allow_all_comments", kAllowComments},
      {"B.avatar", kAvatar},
      {"B.mut_followers_over_following", kMutualOverFollowing},
      {"B.mut_followers_count", kMutualCount},
      {"B.description_length", kDescriptionLength},
      {"B.description_me", kDescriptionMe},
      {"B.favorites_count", kFavorites},
      {"B.followers_count", kFollowers},
      {"B.following_count", kFollowing},
      {"B.geo_enabled", kGeo},
      {"B.statuses_count", kStatuses},
      {"B.verified", kVerified},
      {"B.ratio_original", kRatioOriginal},
      {"D.age", kAge},
      {"D.gender", kGender},
      {"D.education", kEducation},
      {"D.marital", kMarital},
      {"D.residence", kResidence},
      {"D.income_band", kIncome},
      {"D.health", kHealth},
      {"D.religion", kReligion},
  };
  return kMap;
}

// Marginal shares of the demographic levels, in codebook order.
constexpr std::array<double, 8> kEducationShares{0.005, 0.025, 0.095, 0.045, 0.54, 0.215, 0.065, 0.01};
constexpr std::array<double, 4> kResidenceShares{0.011, 0.046, 0.358, 0.585};
constexpr std::array<double, 6> kIncomeShares{0.16, 0.35, 0.186, 0.115, 0.074, 0.115};
constexpr std::array<double, 2> kMaritalShares{0.653, 0.347};
constexpr std::array<double, 2> kHealthShares{0.164, 0.836};
constexpr std::array<double, 2> kReligionShares{0.839, 0.161};

// Level of z under cuts at the cumulative normal quantiles of `shares`.
template <std::size_t N>
int level_of(double z, const std::array<double, N>& shares) {
  static const boost::math::normal_distribution<double> unit;
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    cumulative += shares[i];
    if (z < boost::math::quantile(unit, cumulative)) return static_cast<int>(i);
  }
  return static_cast<int>(N - 1);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::uint64_t lognormal_count(double mu, double sigma, double z) {
  return static_cast<std::uint64_t>(std::llround(std::exp(mu + sigma * z)));
}

// Latin pseudo-words and common CJK characters outside the dictionary;
// the ones that turn out to hit a category are dropped.
constexpr std::array<std::string_view, 24> kFillerCandidates{
    "zorp", "blen", "quix", "vadu", "kelm", "trov", "nupi", "sarg", "fiml", "drux", "wemb", "plok",
    "猫",   "桌",   "窗",   "蓝",   "纸",   "椅",   "雨",   "灯",   "树",   "杯",   "路",   "云",
};

struct Vocabulary {
  std::vector<std::vector<std::string>> words;  // per category
  std::vector<std::string> filler;
};

Vocabulary build_vocabulary(const lexicon::Lexicon& lex) {
  const std::size_t n = lex.category_count();
  std::vector<std::vector<std::pair<std::size_t, std::string>>> candidates(n);
  for (const auto& entry : lex.entries()) {
    if (entry.pattern.ends_with('*')) continue;
    const auto tokens = lexicon::tokenize(entry.pattern, lex);
    if (tokens.size() != 1) continue;
    const auto counts = lexicon::count_categories(tokens, lex);
    std::vector<std::size_t> hit;
    for (std::size_t c = 0; c < n; ++c) {
      if (counts.hits[c] > 0) hit.push_back(c);
    }
    for (std::size_t c : hit) candidates[c].emplace_back(hit.size(), entry.pattern);
  }
  Vocabulary vocab;
  vocab.words.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto& list = candidates[c];
    if (list.empty()) continue;
    const std::size_t fewest = std::min_element(list.begin(), list.end())->first;
    for (auto& [size, word] : list) {
      if (size == fewest) vocab.words[c].push_back(std::move(word));
    }
  }
  for (std::string_view w : kFillerCandidates) {
    const std::vector<std::string> tokens = lexicon::tokenize(w, lex);
    if (tokens.size() != 1) continue;
    const auto counts = lexicon::count_categories(tokens, lex);
    if (std::all_of(counts.hits.begin(), counts.hits.end(), [](std::size_t h) { return h == 0; })) {
      vocab.filler.emplace_back(w);
    }
  }
  if (vocab.filler.size() < 4) throw InputError("lexicon leaves too few filler words for synthesis");
  return vocab;
}

std::string random_word(Rng& rng, const std::vector<std::string>& words) {
  return words[static_cast<std::size_t>(rng.below(words.size()))];
}

std::string base36(Rng& rng, std::size_t n) {
  static constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += kDigits[static_cast<std::size_t>(rng.below(kDigits.size()))];
  return s;
}

std::size_t auto_middle(std::size_t n_hh, std::size_t n_lh) { return (13 * (n_hh + n_lh) + 5) / 10; }

std::array<int, corpus::kOhiItems> responses_for(int score, Rng& rng) {
  std::array<int, corpus::kOhiItems> items;
  items.fill(corpus::kOhiMinItem);
  int remaining = score - static_cast<int>(corpus::kOhiItems) * corpus::kOhiMinItem;
  while (remaining > 0) {
    auto& item = items[static_cast<std::size_t>(rng.below(corpus::kOhiItems))];
    if (item < corpus::kOhiMaxItem) {
      ++item;
      --remaining;
    }
  }
  return items;
}

class Generator {
 public:
  Generator(const CohortSpec& spec, const lexicon::Lexicon& lex)
      : spec_(spec), vocab_(build_vocabulary(lex)), categories_(lex.category_count()) {
    shifts_.assign(categories_ + kLatentCount, 0.0);
    for (const auto& effect : spec.planted_effects) {
      const std::string& name = effect.feature;
      std::size_t slot = 0;
      if (name.starts_with("L.")) {
        const auto c = lex.category_index(std::string_view(name).substr(2));
        if (!c) throw InputError("planted feature " + name + " is not a lexicon category");
        if (vocab_.words[*c].empty()) {
          throw InputError("planted feature " + name + " has no single-word lexicon entry");
        }
        slot = *c;
      } else if (auto it = fixed_latents().find(name); it != fixed_latents().end()) {
        slot = categories_ + it->second;
      } else if (name == "B.mut_followers_over_followers") {
        throw InputError("planted feature " + name + " is derived and cannot be planted directly");
      } else {
        throw InputError("planted feature " + name + " is not a matrix column");
      }
      shifts_[slot] = effect.hh_shift;
    }
  }

  corpus::UserRecord user(std::string id, Group group, int score, Rng rng) const {
    std::vector<double> z(shifts_.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = rng.normal() + (group == Group::kHigh ? shifts_[i] : 0.0);
    }
    const auto latent = [&](Latent l) { return z[categories_ + l]; };

    corpus::UserRecord rec;
    rec.user_id = std::move(id);
    rec.ohi_responses = responses_for(score, rng);

    auto& p = rec.profile;
    p.following_count = std::max<std::uint64_t>(1, lognormal_count(5.4, 0.9, latent(kFollowing)));
    const double mutual_share = logistic(-0.45 + 0.9 * latent(kMutualOverFollowing));
    const double mutual = mutual_share * static_cast<double>(p.following_count) *
                          std::exp(0.4 * latent(kMutualCount));
    p.mutual_followers_count =
        std::min(p.following_count, static_cast<std::uint64_t>(std::llround(mutual)));
    p.followers_count = p.mutual_followers_count + lognormal_count(5.6, 1.2, latent(kFollowers));
    p.statuses_count = spec_.posts_per_user + lognormal_count(6.0, 1.0, latent(kStatuses));
    p.favorites_count = lognormal_count(3.5, 1.3, latent(kFavorites));
    p.allow_all_messages = latent(kAllowMessages) > 0.0;
    p.allow_all_comments = latent(kAllowComments) > -0.5;
    p.has_custom_avatar = latent(kAvatar) > -1.0;
    p.geo_enabled = latent(kGeo) > 0.25;
    p.verified = latent(kVerified) > 1.7;
    if (latent(kDescriptionMe) > 0.5) p.description = std::string(behavior::kDefaultMeToken);
    const auto desc_words = std::min<std::uint64_t>(30, lognormal_count(1.5, 0.6, latent(kDescriptionLength)));
    for (std::uint64_t i = 0; i < desc_words; ++i) p.description += random_word(rng, vocab_.filler);

    auto& d = rec.demographics;
    d.age = static_cast<int>(std::clamp<long long>(std::llround(29.0 + 6.0 * latent(kAge)), 18, 70));
    d.gender = latent(kGender) < 0.0 ? corpus::Gender::kMale : corpus::Gender::kFemale;
    d.education = static_cast<corpus::Education>(level_of(latent(kEducation), kEducationShares));
    d.marital = static_cast<corpus::Marital>(level_of(latent(kMarital), kMaritalShares));
    d.residence = static_cast<corpus::Residence>(level_of(latent(kResidence), kResidenceShares));
    d.income_band = static_cast<corpus::IncomeBand>(level_of(latent(kIncome), kIncomeShares));
    d.health = static_cast<corpus::Health>(level_of(latent(kHealth), kHealthShares));
    d.religion = static_cast<corpus::Religion>(level_of(latent(kReligion), kReligionShares));

    // Word distribution: one weight per category, filler takes the rest.
    std::vector<double> cumulative;
    cumulative.reserve(categories_ + 1);
    double total = 0.0;
    for (std::size_t c = 0; c < categories_; ++c) {
      if (!vocab_.words[c].empty()) total += spec_.base_rate * std::exp(spec_.text_spread * z[c]);
      cumulative.push_back(total);
    }
    total += std::max(0.05, 1.0 - total);
    cumulative.push_back(total);

    const double original_rate = logistic(0.8 + latent(kRatioOriginal));
    rec.posts.reserve(spec_.posts_per_user);
    for (std::size_t i = 0; i < spec_.posts_per_user; ++i) {
      corpus::Post post;
      post.is_original = rng.bernoulli(original_rate);
      const std::size_t lo = spec_.words_per_post > 2 ? spec_.words_per_post - 2 : 1;
      const std::size_t words = lo + static_cast<std::size_t>(rng.below(5));
      for (std::size_t w = 0; w < words; ++w) {
        const double u = rng.uniform() * total;
        const auto bucket = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
        if (!post.text.empty()) post.text += ' ';
        post.text += bucket < categories_ ? random_word(rng, vocab_.words[bucket])
                                          : random_word(rng, vocab_.filler);
      }
      // Platform artifacts that extraction must strip.
      const double noise = rng.uniform();
      if (noise < 0.04) {
        post.text += " http://t.cn/" + base36(rng, 6);
      } else if (noise < 0.08) {
        post.text += " @" + random_word(rng, vocab_.filler) + base36(rng, 3);
      } else if (noise < 0.10) {
        post.text += " #" + random_word(rng, vocab_.filler) + "#";
      }
      rec.posts.push_back(std::move(post));
    }
    return rec;
  }

 private:
  const CohortSpec& spec_;
  Vocabulary vocab_;
  std::size_t categories_;
  std::vector<double> shifts_;
};

}  // namespace

std::vector<PlantedEffect> default_effects() {
  std::vector<PlantedEffect> effects;
  for (const char* c : {"we", "youpl", "preps", "they", "multifun", "social", "humans", "certain",
                        "space", "work", "achieve", "relig", "nonfl"}) {
    effects.push_back({std::string("L.") + c, 0.45});
  }
  for (const char* b : {"mut_followers_over_following", "mut_followers_count", "followers_count",
                        "following_count", "verified"}) {
    effects.push_back({std::string("B.") + b, 0.7});
  }
  for (const char* d : {"education", "marital", "residence", "income_band", "religion"}) {
    effects.push_back({std::string("D.") + d, 0.5});
  }
  effects.push_back({"D.health", 0.6});
  return effects;
}

void CohortSpec::validate() const {
  if (n_hh == 0 || n_lh == 0) throw InputError("both groups need at least one user");
  if (n_hh + n_lh < 20) throw InputError("n_hh + n_lh must be at least 20");
  if (posts_per_user == 0) throw InputError("posts_per_user must be positive");
  if (words_per_post == 0) throw InputError("words_per_post must be positive");
  if (!(base_rate > 0.0) || !(text_spread > 0.0)) {
    throw InputError("base_rate and text_spread must be positive");
  }
  std::set<std::string_view> seen;
  for (const auto& e : planted_effects) {
    if (!seen.insert(e.feature).second) throw InputError("feature " + e.feature + " planted twice");
    if (!std::isfinite(e.hh_shift)) throw InputError("planted shift for " + e.feature + " is not finite");
  }
}

Cohort generate_cohort(const CohortSpec& spec, const lexicon::Lexicon& lexicon) {
  spec.validate();
  const Generator generator(spec, lexicon);
  const std::size_t n_middle = spec.n_middle == 0 ? auto_middle(spec.n_hh, spec.n_lh) : spec.n_middle;

  std::vector<Group> groups;
  groups.insert(groups.end(), spec.n_hh, Group::kHigh);
  groups.insert(groups.end(), spec.n_lh, Group::kLow);
  groups.insert(groups.end(), n_middle, Group::kMiddle);
  Rng rng(spec.seed);
  rng.shuffle(std::span<Group>(groups));

  const std::size_t width = std::max<std::size_t>(4, std::to_string(groups.size()).size());
  std::array<std::size_t, 3> seen{};
  Cohort cohort;
  cohort.records.reserve(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::string id = std::to_string(i + 1);
    id = "u" + std::string(width - id.size(), '0') + id;
    const Group g = groups[i];
    const std::size_t k = seen[static_cast<std::size_t>(g)]++;
    int score = 0;
    switch (g) {
      case Group::kHigh:
        score = 111 + static_cast<int>(k % 6);
        cohort.hh_ids.insert(id);
        break;
      case Group::kLow:
        score = 35 + static_cast<int>(k % 26);
        cohort.lh_ids.insert(id);
        break;
      case Group::kMiddle:
        score = 78 + static_cast<int>(k % 22);
        break;
    }
    cohort.records.push_back(generator.user(std::move(id), g, score, rng.fork()));
  }

  const corpus::CohortSplit split = corpus::split_records(cohort.records);
  if (split.hh_ids != cohort.hh_ids || split.lh_ids != cohort.lh_ids) {
    throw ValidationError("generated scores do not split into the requested groups (HH " +
                          std::to_string(split.hh_ids.size()) + ", LH " +
                          std::to_string(split.lh_ids.size()) + "); adjust n_middle");
  }
  return cohort;
}

std::string manifest_json(const CohortSpec& spec, const Cohort& cohort) {
  using Json = nlohmann::ordered_json;
  Json doc;
  doc["seed"] = spec.seed;
  doc["n_hh"] = spec.n_hh;
  doc["n_lh"] = spec.n_lh;
  doc["n_middle"] = cohort.records.size() - spec.n_hh - spec.n_lh;
  doc["posts_per_user"] = spec.posts_per_user;
  doc["words_per_post"] = spec.words_per_post;
  doc["base_rate"] = spec.base_rate;
  doc["text_spread"] = spec.text_spread;
  Json effects = Json::array();
  for (const auto& e : spec.planted_effects) {
    const char* direction = e.hh_shift > 0 ? "HH_higher" : e.hh_shift < 0 ? "LH_higher" : "tied";
    effects.push_back({{"feature", e.feature}, {"hh_shift", e.hh_shift}, {"direction", direction}});
  }
  doc["planted_effects"] = std::move(effects);
  doc["hh_ids"] = cohort.hh_ids;
  doc["lh_ids"] = cohort.lh_ids;
  return doc.dump(2) + "\n";
}

}  // namespace happiness::synth
