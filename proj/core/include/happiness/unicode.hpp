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

#ifndef HAPPINESS_UNICODE_HPP_
#define HAPPINESS_UNICODE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

// Minimal UTF-8 helpers. Only what the tokenizer and the record validator
// need; no normalization, no locale.
namespace happiness::unicode {

// Decodes strict UTF-8 (no overlongs, no surrogates, max U+10FFFF).
// Returns std::nullopt on the first invalid sequence.
std::optional<std::u32string> decode(std::string_view utf8);

// Same as decode() but throws InputError naming `context` on failure.
std::u32string decode_or_throw(std::string_view utf8, std::string_view context);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

bool is_valid(std::string_view utf8);

// Number of code points; the input must be valid UTF-8.
std::size_t length(std::string_view utf8);

// White_Space as understood by Unicode-aware regex engines' \s
// (includes the U+001C..U+001F information separators).
bool is_space(char32_t cp) noexcept;

// Han ideographs plus kana and Hangul syllables. Runs of these are
// segmented against the lexicon rather than split on spaces.
bool is_cjk(char32_t cp) noexcept;

// Maps a code point that belongs to a "Latin run" to its lowercase ASCII
// or Latin-1 form; returns 0 if the code point is not part of a Latin run.
// Latin runs are ASCII letters and digits, their fullwidth forms
// (U+FF10..U+FF5A, folded to ASCII), and the Latin-1 Supplement letters
// U+00C0..U+00FF other than the multiplication and division signs.
char32_t fold_latin(char32_t cp) noexcept;

}  // namespace happiness::unicode

#endif  // HAPPINESS_UNICODE_HPP_
