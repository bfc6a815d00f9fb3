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

#ifndef HAPPINESS_SYNTH_HPP_
#define HAPPINESS_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "happiness/corpus.hpp"
#include "happiness/lexicon.hpp"

// Synthetic cohorts with known group differences.
//
// Every generated user draws one standard-normal latent per feature, and
// HH users add the planted shift to it. The latent then drives the
// observable:
//   L.<category>  word share base_rate * exp(text_spread * z)
//   B.<count>     rounded log-normal counts; follower-type counts are
//                 coupled so mutual <= min(followers, following)
//   B.<flag>      z above a fixed cut
//   D.<variable>  z cut at the quantiles of the sample's marginal shares
// so a positive shift always moves the HH group up, and a zero shift leaves
// both groups identically distributed.
//
// Questionnaire totals are placed on disjoint grids (HH 111..116, LH 35..60,
// middle 78..99) with enough middle users that split_cohort recovers the
// requested groups exactly; the middle users are emitted too and are
// excluded by the split.
namespace happiness::synth {

struct PlantedEffect {
  std::string feature;  // matrix column name, e.g. "L.work", "B.verified"
  double hh_shift = 0.0;
};

// 13 linguistic, 5 behavior and 6 demographic effects, HH higher in each.
std::vector<PlantedEffect> default_effects();

struct CohortSpec {
  std::size_t n_hh = 294;
  std::size_t n_lh = 254;
  std::size_t n_middle = 0;  // 0: about 1.3 * (n_hh + n_lh)
  std::size_t posts_per_user = corpus::kDefaultMinPosts;
  std::size_t words_per_post = 6;
  double base_rate = 0.008;  // share of words per category at z = 0
  double text_spread = 0.6;
  std::vector<PlantedEffect> planted_effects = default_effects();
  std::uint64_t seed = 548;

  // Throws InputError for n_hh + n_lh < 20, an empty group, zero posts or
  // words, a non-positive rate or spread, or a duplicated effect.
  void validate() const;
};

struct Cohort {
  std::vector<corpus::UserRecord> records;  // shuffled; ids u0001, u0002, ...
  std::set<std::string> hh_ids;
  std::set<std::string> lh_ids;
};

// Deterministic in (spec, lexicon). Throws InputError for an invalid spec or
// a planted feature that is not a matrix column (or is derived, such as
// B.mut_followers_over_followers), and ValidationError if the cohort does
// not split back into the requested groups.
Cohort generate_cohort(const CohortSpec& spec, const lexicon::Lexicon& lexicon);

// JSON sidecar: the spec, the planted effects with expected directions and
// the generated group ids.
std::string manifest_json(const CohortSpec& spec, const Cohort& cohort);

}  // namespace happiness::synth

#endif  // HAPPINESS_SYNTH_HPP_
