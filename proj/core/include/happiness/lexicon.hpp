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

#ifndef HAPPINESS_LEXICON_HPP_
#define HAPPINESS_LEXICON_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "happiness/corpus.hpp"

// LIWC-style word-category dictionary and the word counter built on it.
//
// Dictionary files use the LIWC ".dic" layout:
//
//   %
//   1<TAB>posemo
//   2<TAB>work
//   %
//   happ*<TAB>1
//   工作<TAB>2
//
// A pattern ending in '*' matches any Latin-script token it is a prefix of;
// every other pattern matches a token exactly. Lines starting with '#' are
// comments.
namespace happiness::lexicon {

struct Category {
  int id = 0;
  std::string name;
};

struct Entry {
  std::string pattern;  // includes the trailing '*' for wildcards
  std::vector<std::size_t> categories;  // indexes into Lexicon::categories()
};

class Lexicon {
 public:
  Lexicon();

  // Declares a category. Throws InputError on a duplicate id or name.
  void add_category(int id, std::string name);

  // Adds (or merges into) an entry. Latin-script patterns are lowercased.
  // Throws InputError for an empty pattern, a '*' anywhere but last, a
  // non-Latin wildcard prefix or an undeclared category id.
  void add_entry(std::string_view pattern, std::span<const int> category_ids);

  const std::vector<Category>& categories() const noexcept { return categories_; }
  std::size_t category_count() const noexcept { return categories_.size(); }
  std::optional<std::size_t> category_index(std::string_view name) const;
  std::optional<std::size_t> index_of_id(int id) const;

  // All entries, sorted by pattern bytes.
  std::vector<Entry> entries() const;
  std::size_t entry_count() const noexcept { return entry_count_; }

  // Canonical .dic text: categories in declaration order, entries sorted.
  std::string serialize() const;

  // Length, in code points, of the longest exact entry that is a prefix of
  // `text`; 0 when none is.
  std::size_t longest_exact_match(std::u32string_view text) const;

  // Appends the category indexes `token` hits: its exact entry plus, for
  // Latin-script tokens, every wildcard whose prefix it starts with.
  // Appended indexes are unique and ascending.
  void match(std::u32string_view token, bool latin, std::vector<std::size_t>& out) const;

 private:
  struct Node {
    std::vector<std::pair<char32_t, std::uint32_t>> children;  // sorted by char
    std::vector<std::size_t> exact;
    std::vector<std::size_t> prefix;
  };

  std::uint32_t child(std::uint32_t node, char32_t c) const;
  std::uint32_t child_or_insert(std::uint32_t node, char32_t c);

  std::vector<Category> categories_;
  std::unordered_map<int, std::size_t> id_index_;
  std::vector<Node> nodes_;
  std::size_t entry_count_ = 0;
};

// Parses .dic text. Errors are ParseErrors carrying the 1-based line.
Lexicon parse_lexicon(std::string_view text);
Lexicon load_lexicon(const std::string& path);

// The bundled 88-category demo dictionary (Simplified Chinese and English
// entries), as .dic text and parsed.
std::string_view demo_lexicon_text();
Lexicon demo_lexicon();

// Removes platform artifacts, replacing each match with one space, in this
// order: URLs `https?://\S+`, mentions `@\S+`, hashtags `#[^#]{1,60}#`.
std::u32string strip_artifacts(std::u32string_view text);

// Splits microblog text into words: maximal Latin letter/digit runs become
// one lowercased token; CJK runs are segmented by forward maximum matching
// against the lexicon's exact entries, falling back to single characters;
// everything else is discarded.
std::vector<std::string> tokenize(std::string_view text, const Lexicon& lexicon);

struct LinguisticFeatures {
  std::size_t word_count = 0;
  std::vector<std::string> names;  // lexicon category order
  std::vector<std::size_t> hits;
  std::vector<double> percent;     // 100 * hits / word_count, 0 if no words

  double percent_of(std::string_view name) const;
};

LinguisticFeatures count_categories(std::span<const std::string> tokens,
                                    const Lexicon& lexicon);

// All post texts (original and reposts) joined by single spaces, then
// tokenized and counted.
LinguisticFeatures extract_linguistic(const corpus::UserRecord& user, const Lexicon& lexicon);

}  // namespace happiness::lexicon

#endif  // HAPPINESS_LEXICON_HPP_
