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
#include <charconv>
#include <fstream>
#include <sstream>

#include "happiness/error.hpp"
#include "happiness/unicode.hpp"

namespace happiness::lexicon {
namespace {

constexpr std::uint32_t kNoNode = 0xFFFFFFFFu;
constexpr std::size_t kMaxHashtagBody = 60;

bool is_latin_token(std::u32string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](char32_t c) {
    return unicode::fold_latin(c) == c;
  });
}

void insert_sorted_unique(std::vector<std::size_t>& v, std::size_t x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t tab = line.find('\t', pos);
    const std::size_t end = tab == std::string_view::npos ? line.size() : tab;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view trim_cr(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
  return line;
}

}  // namespace

Lexicon::Lexicon() : nodes_(1) {}

void Lexicon::add_category(int id, std::string name) {
  if (name.empty()) throw InputError("category " + std::to_string(id) + " has no name");
  if (id_index_.count(id)) throw InputError("duplicate category id " + std::to_string(id));
  if (category_index(name)) throw InputError("duplicate category name '" + name + "'");
  id_index_.emplace(id, categories_.size());
  categories_.push_back({id, std::move(name)});
}

std::optional<std::size_t> Lexicon::category_index(std::string_view name) const {
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (categories_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Lexicon::index_of_id(int id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Lexicon::child(std::uint32_t node, char32_t c) const {
  const auto& kids = nodes_[node].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), c,
                             [](const auto& kv, char32_t key) { return kv.first < key; });
  if (it == kids.end() || it->first != c) return kNoNode;
  return it->second;
}

std::uint32_t Lexicon::child_or_insert(std::uint32_t node, char32_t c) {
  auto& kids = nodes_[node].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), c,
                             [](const auto& kv, char32_t key) { return kv.first < key; });
  if (it != kids.end() && it->first == c) return it->second;
  const auto idx = static_cast<std::uint32_t>(nodes_.size());
  kids.insert(it, {c, idx});
  nodes_.emplace_back();  // invalidates `kids`
  return idx;
}

void Lexicon::add_entry(std::string_view pattern, std::span<const int> category_ids) {
  if (pattern.empty()) throw InputError("empty pattern");
  std::u32string cps = unicode::decode_or_throw(pattern, "pattern");
  const auto star = cps.find(U'*');
  const bool wildcard = star != std::u32string::npos;
  if (wildcard && star != cps.size() - 1) {
    throw InputError("'*' may only end a pattern: '" + std::string(pattern) + "'");
  }
  if (wildcard) cps.pop_back();
  if (cps.empty()) throw InputError("empty pattern");

  const bool latin = std::all_of(cps.begin(), cps.end(),
                                 [](char32_t c) { return unicode::fold_latin(c) != 0; });
  if (wildcard && !latin) {
    throw InputError("wildcard prefix must be Latin letters or digits: '" +
                     std::string(pattern) + "'");
  }
  if (latin) {
    for (char32_t& c : cps) c = unicode::fold_latin(c);
  }
  if (category_ids.empty()) {
    throw InputError("pattern '" + std::string(pattern) + "' has no categories");
  }

  std::vector<std::size_t> indexes;
  for (int id : category_ids) {
    auto idx = index_of_id(id);
    if (!idx) throw InputError("unknown category " + std::to_string(id));
    indexes.push_back(*idx);
  }

  std::uint32_t node = 0;
  for (char32_t c : cps) node = child_or_insert(node, c);
  auto& slot = wildcard ? nodes_[node].prefix : nodes_[node].exact;
  if (slot.empty()) ++entry_count_;
  for (std::size_t idx : indexes) insert_sorted_unique(slot, idx);
}

std::vector<Entry> Lexicon::entries() const {
  std::vector<Entry> out;
  // Depth-first walk, rebuilding each pattern from the path.
  struct Frame {
    std::uint32_t node;
    std::u32string path;
  };
  std::vector<Frame> stack{{0, U""}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const Node& n = nodes_[f.node];
    if (!n.exact.empty()) out.push_back({unicode::encode(f.path), n.exact});
    if (!n.prefix.empty()) out.push_back({unicode::encode(f.path) + "*", n.prefix});
    for (const auto& [c, kid] : n.children) stack.push_back({kid, f.path + c});
  }
  std::sort(out.begin(), out.end(),
            [](const Entry& a, const Entry& b) { return a.pattern < b.pattern; });
  return out;
}

std::string Lexicon::serialize() const {
  std::string out = "%\n";
  for (const Category& c : categories_) {
    out += std::to_string(c.id) + "\t" + c.name + "\n";
  }
  out += "%\n";
  for (const Entry& e : entries()) {
    out += e.pattern;
    for (std::size_t idx : e.categories) out += "\t" + std::to_string(categories_[idx].id);
    out += "\n";
  }
  return out;
}

std::size_t Lexicon::longest_exact_match(std::u32string_view text) const {
  std::uint32_t node = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    node = child(node, text[i]);
    if (node == kNoNode) break;
    if (!nodes_[node].exact.empty()) best = i + 1;
  }
  return best;
}

void Lexicon::match(std::u32string_view token, bool latin, std::vector<std::size_t>& out) const {
  const std::size_t start = out.size();
  std::uint32_t node = 0;
  bool complete = true;
  for (char32_t c : token) {
    node = child(node, c);
    if (node == kNoNode) {
      complete = false;
      break;
    }
    if (latin) out.insert(out.end(), nodes_[node].prefix.begin(), nodes_[node].prefix.end());
  }
  if (complete) out.insert(out.end(), nodes_[node].exact.begin(), nodes_[node].exact.end());
  std::sort(out.begin() + start, out.end());
  out.erase(std::unique(out.begin() + start, out.end()), out.end());
}

Lexicon parse_lexicon(std::string_view text) {
  enum class State { kStart, kHeader, kEntries };
  State state = State::kStart;
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = trim_cr(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    try {
      switch (state) {
        case State::kStart:
          if (line != "%") throw InputError("malformed header: expected '%'");
          state = State::kHeader;
          break;
        case State::kHeader: {
          if (line == "%") {
            if (lex.category_count() == 0) throw InputError("malformed header: no categories");
            state = State::kEntries;
            break;
          }
          auto fields = split_tabs(line);
          if (fields.size() != 2) {
            throw InputError("malformed header: expected 'id<TAB>name'");
          }
          auto id = parse_int(fields[0]);
          if (!id) throw InputError("malformed header: bad category id '" + std::string(fields[0]) + "'");
          lex.add_category(*id, std::string(fields[1]));
          break;
        }
        case State::kEntries: {
          auto fields = split_tabs(line);
          if (fields.size() < 2) throw InputError("expected 'pattern<TAB>id...'");
          std::vector<int> ids;
          for (std::size_t i = 1; i < fields.size(); ++i) {
            auto id = parse_int(fields[i]);
            if (!id) throw InputError("bad category id '" + std::string(fields[i]) + "'");
            if (!lex.index_of_id(*id)) throw InputError("unknown category " + std::to_string(*id));
            ids.push_back(*id);
          }
          lex.add_entry(fields[0], ids);
          break;
        }
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (state != State::kEntries) {
    throw ParseError(line_no, "malformed header: missing closing '%'");
  }
  return lex;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open lexicon '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_lexicon(buf.str());
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::u32string strip_artifacts(std::u32string_view text) {
  auto non_space_run = [](std::u32string_view s, std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && !unicode::is_space(s[j])) ++j;
    return j;
  };

  // https?://\S+
  auto strip_urls = [&](std::u32string_view s) {
    std::u32string out;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t body = 0;
      if (s.substr(i, 7) == U"http://") body = i + 7;
      else if (s.substr(i, 8) == U"https://") body = i + 8;
      if (body && body < s.size() && !unicode::is_space(s[body])) {
        i = non_space_run(s, body);
        out.push_back(U' ');
      } else {
        out.push_back(s[i++]);
      }
    }
    return out;
  };

  // @\S+
  auto strip_mentions = [&](std::u32string_view s) {
    std::u32string out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == U'@' && i + 1 < s.size() && !unicode::is_space(s[i + 1])) {
        i = non_space_run(s, i + 1);
        out.push_back(U' ');
      } else {
        out.push_back(s[i++]);
      }
    }
    return out;
  };

  // #[^#]{1,60}#
  auto strip_hashtags = [&](std::u32string_view s) {
    std::u32string out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == U'#') {
        const std::size_t close = s.find(U'#', i + 1);
        if (close != std::u32string_view::npos) {
          const std::size_t body = close - i - 1;
          if (body >= 1 && body <= kMaxHashtagBody) {
            out.push_back(U' ');
            i = close + 1;
            continue;
          }
        }
      }
      out.push_back(s[i++]);
    }
    return out;
  };

  return strip_hashtags(strip_mentions(strip_urls(text)));
}

std::vector<std::string> tokenize(std::string_view text, const Lexicon& lexicon) {
  const std::u32string cleaned = strip_artifacts(unicode::decode_or_throw(text, "post text"));
  std::vector<std::string> tokens;
  const std::u32string_view s = cleaned;
  std::size_t i = 0;
  while (i < s.size()) {
    if (unicode::fold_latin(s[i])) {
      std::string token;
      while (i < s.size()) {
        const char32_t f = unicode::fold_latin(s[i]);
        if (!f) break;
        unicode::append(token, f);
        ++i;
      }
      tokens.push_back(std::move(token));
    } else if (unicode::is_cjk(s[i])) {
      std::size_t end = i;
      while (end < s.size() && unicode::is_cjk(s[end])) ++end;
      while (i < end) {
        std::size_t len = lexicon.longest_exact_match(s.substr(i, end - i));
        if (len == 0) len = 1;
        tokens.push_back(unicode::encode(s.substr(i, len)));
        i += len;
      }
    } else {
      ++i;
    }
  }
  return tokens;
}

double LinguisticFeatures::percent_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return percent[i];
  }
  throw InputError("unknown category '" + std::string(name) + "'");
}

LinguisticFeatures count_categories(std::span<const std::string> tokens,
                                    const Lexicon& lexicon) {
  LinguisticFeatures f;
  const std::size_t k = lexicon.category_count();
  f.word_count = tokens.size();
  f.names.reserve(k);
  for (const Category& c : lexicon.categories()) f.names.push_back(c.name);
  f.hits.assign(k, 0);
  f.percent.assign(k, 0.0);

  std::vector<std::size_t> matched;
  for (const std::string& token : tokens) {
    const std::u32string cps = unicode::decode_or_throw(token, "token");
    matched.clear();
    lexicon.match(cps, is_latin_token(cps), matched);
    for (std::size_t c : matched) ++f.hits[c];
  }
  if (f.word_count > 0) {
    for (std::size_t c = 0; c < k; ++c) {
      f.percent[c] = 100.0 * static_cast<double>(f.hits[c]) / static_cast<double>(f.word_count);
    }
  }
  return f;
}

LinguisticFeatures extract_linguistic(const corpus::UserRecord& user, const Lexicon& lexicon) {
  std::string joined;
  for (std::size_t i = 0; i < user.posts.size(); ++i) {
    if (i) joined += ' ';
    joined += user.posts[i].text;
  }
  const std::vector<std::string> tokens = tokenize(joined, lexicon);
  return count_categories(tokens, lexicon);
}

}  // namespace happiness::lexicon
