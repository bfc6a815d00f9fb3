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

#include "happiness/unicode.hpp"

#include <gtest/gtest.h>

#include "happiness/error.hpp"
#include "happiness/random.hpp"

namespace happiness::unicode {
namespace {

TEST(Unicode, DecodesMixedScripts) {
  const auto cps = decode("a我😀é");
  ASSERT_TRUE(cps.has_value());
  EXPECT_EQ(*cps, U"a我😀é");
  EXPECT_EQ(length("a我😀é"), 4u);
}

TEST(Unicode, RejectsMalformedSequences) {
  EXPECT_FALSE(decode("\xC0\xAF").has_value());          // overlong '/'
  EXPECT_FALSE(decode("\xED\xA0\x80").has_value());      // surrogate
  EXPECT_FALSE(decode("\xF4\x90\x80\x80").has_value());  // above U+10FFFF
  EXPECT_FALSE(decode("\xE6\x88").has_value());          // truncated
  EXPECT_FALSE(decode("\x80").has_value());              // stray continuation
  EXPECT_THROW(decode_or_throw("\xFF", "text"), InputError);
}

TEST(Unicode, EncodeRoundTrips) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string s;
    for (int i = 0; i < 20; ++i) {
      char32_t cp = static_cast<char32_t>(rng.below(0x110000));
      if (cp >= 0xD800 && cp <= 0xDFFF) cp = U'x';
      s.push_back(cp);
    }
    const std::string utf8 = encode(s);
    EXPECT_TRUE(is_valid(utf8));
    EXPECT_EQ(decode(utf8).value(), s);
  }
}

TEST(Unicode, SpaceMatchesRegexWhitespace) {
  for (char32_t cp : {U' ', U'\t', U'\n', U'\r', U'\v', U'\f', char32_t{0x1C}, char32_t{0x85},
                      char32_t{0xA0}, char32_t{0x2003}, char32_t{0x3000}}) {
    EXPECT_TRUE(is_space(cp)) << static_cast<unsigned>(cp);
  }
  for (char32_t cp : {U'a', U'#', U'我', char32_t{0x200B}, char32_t{0xFEFF}}) {
    EXPECT_FALSE(is_space(cp)) << static_cast<unsigned>(cp);
  }
}

TEST(Unicode, FoldsLatinRuns) {
  EXPECT_EQ(fold_latin(U'Q'), U'q');
  EXPECT_EQ(fold_latin(U'7'), U'7');
  EXPECT_EQ(fold_latin(U'Ｗ'), U'w');
  EXPECT_EQ(fold_latin(U'ｗ'), U'w');
  EXPECT_EQ(fold_latin(U'５'), U'5');
  EXPECT_EQ(fold_latin(U'É'), U'é');
  EXPECT_EQ(fold_latin(U'ß'), U'ß');
  EXPECT_EQ(fold_latin(U'×'), 0u);
  EXPECT_EQ(fold_latin(U'-'), 0u);
  EXPECT_EQ(fold_latin(U'我'), 0u);
}

TEST(Unicode, ClassifiesCjk) {
  EXPECT_TRUE(is_cjk(U'我'));
  EXPECT_TRUE(is_cjk(U'カ'));
  EXPECT_TRUE(is_cjk(U'한'));
  EXPECT_TRUE(is_cjk(char32_t{0x20000}));
  EXPECT_FALSE(is_cjk(U'。'));
  EXPECT_FALSE(is_cjk(U'ａ'));
}

}  // namespace
}  // namespace happiness::unicode
