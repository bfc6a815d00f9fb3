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

#include "happiness/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "happiness/corpus.hpp"
#include "happiness/error.hpp"
#include "happiness/random.hpp"
#include "happiness/unicode.hpp"

namespace happiness::lexicon {
namespace {

using Tokens = std::vector<std::string>;

Lexicon small_lexicon() {
  return parse_lexicon(
      "%\n1\tpronoun\n2\twork\n3\tposemo\n%\n"
      "我们\t1\n我们的\t1\n工作\t2\njob\t2\nwork*\t2\nhapp*\t3\n开心\t3\n");
}

TEST(ParseLexicon, SingleWildcardEntry) {
  const Lexicon lex = parse_lexicon("%\n1\tposemo\n%\nhappy*\t1\n");
  EXPECT_EQ(lex.category_count(), 1u);
  ASSERT_EQ(lex.entry_count(), 1u);
  EXPECT_EQ(lex.entries()[0].pattern, "happy*");
}

TEST(ParseLexicon, UnknownCategoryNamesLine) {
  try {
    parse_lexicon("%\n1\tposemo\n%\nhappy\t1\nsad\t99\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
    EXPECT_STREQ(e.what(), "line 5: unknown category 99");
  }
}

TEST(ParseLexicon, RejectsMalformedFiles) {
  EXPECT_THROW(parse_lexicon(""), ParseError);
  EXPECT_THROW(parse_lexicon("1\tposemo\n%\n"), ParseError);
  EXPECT_THROW(parse_lexicon("%\n1\tposemo\n"), ParseError);
  EXPECT_THROW(parse_lexicon("%\n1\tposemo\n1\tnegemo\n%\n"), ParseError);
  EXPECT_THROW(parse_lexicon("%\n1\tposemo\n%\nha*ppy\t1\n"), ParseError);
  EXPECT_THROW(parse_lexicon("%\n1\tposemo\n%\n开*\t1\n"), ParseError);
  EXPECT_THROW(parse_lexicon("%\n1\tposemo\n%\nhappy\n"), ParseError);
  EXPECT_THROW(load_lexicon("/nonexistent/missing.dic"), InputError);
}

TEST(ParseLexicon, DuplicateWordsMerge) {
  const Lexicon lex = parse_lexicon("%\n1\tposemo\n2\tsocial\n%\nfriend\t1\nfriend\t2\n");
  ASSERT_EQ(lex.entry_count(), 1u);
  const Entry e = lex.entries()[0];
  EXPECT_EQ(e.categories, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(lex.serialize(), "%\n1\tposemo\n2\tsocial\n%\nfriend\t1\t2\n");
  EXPECT_EQ(parse_lexicon(lex.serialize()).serialize(), lex.serialize());
}

TEST(ParseLexicon, DemoLexiconShape) {
  const Lexicon lex = demo_lexicon();
  EXPECT_EQ(lex.category_count(), 88u);
  EXPECT_TRUE(lex.category_index("work").has_value());
  EXPECT_TRUE(lex.category_index("posemo").has_value());
  EXPECT_EQ(parse_lexicon(lex.serialize()).serialize(), lex.serialize());
}

TEST(Tokenize, HandCases) {
  const Lexicon lex = small_lexicon();
  EXPECT_EQ(tokenize("", lex), Tokens{});
  EXPECT_EQ(tokenize("我们today!!", lex), (Tokens{"我们", "today"}));
  EXPECT_EQ(tokenize("我们的我们", lex), (Tokens{"我们的", "我们"}));
  EXPECT_EQ(tokenize("他们", lex), (Tokens{"他", "们"}));
  EXPECT_EQ(tokenize("Hello,WORLD 42x", lex), (Tokens{"hello", "world", "42x"}));
  EXPECT_EQ(tokenize("ＷＯＲＫ", lex), (Tokens{"work"}));
  EXPECT_EQ(tokenize("Café", lex), (Tokens{"café"}));
}

TEST(Tokenize, StripsPlatformArtifacts) {
  const Lexicon lex = small_lexicon();
  EXPECT_EQ(tokenize("看 http://t.cn/abc 工作", lex), (Tokens{"看", "工作"}));
  EXPECT_EQ(tokenize("@小明 你好", lex), (Tokens{"你", "好"}));
  EXPECT_EQ(tokenize("#今天工作#开心", lex), (Tokens{"开心"}));
  EXPECT_EQ(tokenize("a#b", lex), (Tokens{"a", "b"}));
  EXPECT_EQ(tokenize("job@x", lex), (Tokens{"job"}));
}

TEST(Tokenize, IdempotentOnJoinedLatinOutput) {
  const Lexicon lex = demo_lexicon();
  Rng rng(3);
  const std::u32string alphabet = U"abcXYZ019 ,.!我们工作开心Éé　@#";
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string text;
    for (int i = 0; i < 30; ++i) text.push_back(alphabet[rng.below(alphabet.size())]);
    const std::string utf8 = unicode::encode(text);
    const Tokens first = tokenize(utf8, lex);
    EXPECT_EQ(tokenize(utf8, lex), first);
    Tokens latin;
    std::copy_if(first.begin(), first.end(), std::back_inserter(latin), [](const std::string& t) {
      return !t.empty() && static_cast<unsigned char>(t[0]) < 0x80;
    });
    std::string joined;
    for (const auto& t : latin) joined += t + " ";
    EXPECT_EQ(tokenize(joined, lex), latin);
  }
}

TEST(CountCategories, EmptyInputIsAllZero) {
  const Lexicon lex = demo_lexicon();
  const auto f = count_categories({}, lex);
  EXPECT_EQ(f.word_count, 0u);
  ASSERT_EQ(f.percent.size(), 88u);
  for (double p : f.percent) EXPECT_EQ(p, 0.0);
}

TEST(CountCategories, PercentOfAllWords) {
  const Lexicon lex = small_lexicon();
  const Tokens one_in_four{"我", "今天", "工作", "了"};
  EXPECT_DOUBLE_EQ(count_categories(one_in_four, lex).percent_of("work"), 25.0);
  const Tokens saturated{"job", "working", "工作"};
  const auto f = count_categories(saturated, lex);
  EXPECT_DOUBLE_EQ(f.percent_of("work"), 100.0);
  EXPECT_DOUBLE_EQ(f.percent_of("pronoun"), 0.0);
  EXPECT_DOUBLE_EQ(f.percent_of("posemo"), 0.0);
}

TEST(CountCategories, WildcardsApplyToLatinOnly) {
  const Lexicon lex = small_lexicon();
  const auto f = count_categories(Tokens{"happiness", "happ", "hap", "开心"}, lex);
  EXPECT_EQ(f.hits[*lex.category_index("posemo")], 3u);
}

TEST(CountCategories, EmptyCategoryLeavesOthersUnchanged) {
  const std::string base = "%\n1\tpronoun\n2\twork\n%\n我们\t1\n工作\t2\n";
  const Lexicon lex = parse_lexicon(base);
  Lexicon wider = parse_lexicon("%\n1\tpronoun\n2\twork\n3\tspare\n%\n我们\t1\n工作\t2\n");
  const std::string text = "我们在工作 work 我们";
  const auto a = count_categories(tokenize(text, lex), lex);
  const auto b = count_categories(tokenize(text, wider), wider);
  EXPECT_EQ(b.percent_of("pronoun"), a.percent_of("pronoun"));
  EXPECT_EQ(b.percent_of("work"), a.percent_of("work"));
  EXPECT_EQ(b.percent_of("spare"), 0.0);
}

// Exact-only lexicon: compare every token against every entry by hand.
TEST(CountCategories, MatchesBruteForceScan) {
  const std::vector<std::pair<std::string, std::vector<int>>> words{
      {"我", {1}}, {"我们", {1, 2}}, {"工作", {3}}, {"work", {3}},
      {"happy", {2, 4}}, {"家", {4}}, {"家人", {2}}};
  Lexicon lex;
  for (int id = 1; id <= 4; ++id) lex.add_category(id, "c" + std::to_string(id));
  for (const auto& [w, ids] : words) lex.add_entry(w, ids);

  const Tokens pool{"我", "我们", "工作", "work", "happy", "家", "家人", "人", "x", "们"};
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens tokens(rng.below(101));
    for (auto& t : tokens) t = pool[rng.below(pool.size())];
    std::vector<std::size_t> expected(4, 0);
    for (const auto& t : tokens) {
      for (const auto& [w, ids] : words) {
        if (w != t) continue;
        for (int id : ids) ++expected[static_cast<std::size_t>(id - 1)];
      }
    }
    const auto got = count_categories(tokens, lex);
    ASSERT_EQ(got.word_count, tokens.size());
    EXPECT_EQ(got.hits, expected);
    for (std::size_t c = 0; c < 4; ++c) {
      const double want = tokens.empty() ? 0.0 : 100.0 * expected[c] / tokens.size();
      EXPECT_DOUBLE_EQ(got.percent[c], want);
    }
  }
}

TEST(ExtractLinguistic, ConcatenatesPosts) {
  const Lexicon lex = demo_lexicon();
  corpus::UserRecord split;
  split.user_id = "a";
  split.posts = {{"我们今天work", true, {}}, {"hard工作", false, {}}};
  corpus::UserRecord joined = split;
  joined.posts = {{"我们今天work hard工作", true, {}}};
  const auto a = extract_linguistic(split, lex);
  const auto b = extract_linguistic(joined, lex);
  EXPECT_EQ(a.word_count, b.word_count);
  EXPECT_EQ(a.hits, b.hits);

  corpus::UserRecord silent;
  silent.user_id = "s";
  EXPECT_EQ(extract_linguistic(silent, lex).word_count, 0u);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

TEST(ExtractLinguistic, MatchesGoldenFile) {
  const Lexicon lex = demo_lexicon();
  std::ifstream records_in(std::string(HAPPINESS_TEST_DATA) + "/fixture_records.jsonl");
  std::ifstream golden(std::string(HAPPINESS_TEST_DATA) + "/golden_linguistic.csv");
  ASSERT_TRUE(records_in && golden);
  const auto records = corpus::parse_records(records_in);

  std::string line;
  std::getline(golden, line);
  const auto header = split_csv(line);
  ASSERT_EQ(header.size(), 2 + lex.category_count());
  for (std::size_t c = 0; c < lex.category_count(); ++c) {
    EXPECT_EQ(header[2 + c], lex.categories()[c].name);
  }

  std::size_t rows = 0;
  while (std::getline(golden, line)) {
    const auto cells = split_csv(line);
    ASSERT_LT(rows, records.size());
    const auto& user = records[rows++];
    ASSERT_EQ(cells[0], user.user_id);
    const auto f = extract_linguistic(user, lex);
    EXPECT_EQ(f.word_count, std::stoul(cells[1])) << user.user_id;
    for (std::size_t c = 0; c < f.hits.size(); ++c) {
      EXPECT_EQ(f.hits[c], std::stoul(cells[2 + c])) << user.user_id << " " << header[2 + c];
    }
  }
  EXPECT_EQ(rows, records.size());
}

}  // namespace
}  // namespace happiness::lexicon
