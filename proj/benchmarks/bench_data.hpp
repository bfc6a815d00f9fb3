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

#ifndef HAPPINESS_BENCHMARKS_BENCH_DATA_HPP_
#define HAPPINESS_BENCHMARKS_BENCH_DATA_HPP_

#include <string>
#include <vector>

#include "happiness/corpus.hpp"
#include "happiness/lexicon.hpp"
#include "happiness/matrix.hpp"

namespace happiness::bench {

// Shared inputs, built once on first use: a default-sized synthetic cohort
// with 100 posts per user, its labeled HH/LH feature matrix, and the demo
// lexicon.
const lexicon::Lexicon& lexicon();
const std::vector<corpus::UserRecord>& grouped_users();
const FeatureMatrix& matrix();

}  // namespace happiness::bench

#endif  // HAPPINESS_BENCHMARKS_BENCH_DATA_HPP_
