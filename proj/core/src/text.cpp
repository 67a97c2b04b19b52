// Copyright 2026 The AIDG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aidg/text.hpp"

#include <algorithm>
#include <iterator>
#include <cctype>
#include <map>

namespace aidg::text {

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& ch : out) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) != 0;
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string Normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char raw : s) {
    const auto ch = static_cast<unsigned char>(raw);
    if (ch == '\'') continue;  // "can't" -> "cant"
    const bool word_char = std::isalnum(ch) || ch >= 0x80;
    if (!word_char) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(ch)));
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  const std::string norm = Normalize(s);
  std::size_t start = 0;
  while (start < norm.size()) {
    std::size_t end = norm.find(' ', start);
    if (end == std::string::npos) end = norm.size();
    tokens.emplace_back(norm.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

bool StartsWith(const std::vector<std::string>& tokens,
                const std::vector<std::string>& prefix) {
  return prefix.size() <= tokens.size() &&
         std::equal(prefix.begin(), prefix.end(), tokens.begin());
}

bool ContainsPhrase(const std::vector<std::string>& haystack,
                    const std::vector<std::string>& needle) {
  if (needle.empty()) return true;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

bool IsStopword(std::string_view token) {
  // Articles, copulas, prepositions and pronouns.
  static constexpr std::string_view kStopwords[] = {
      "a",     "an",    "the",   "is",    "are",   "was",   "were",
      "be",    "been",  "being", "am",    "of",    "in",    "on",
      "at",    "to",    "for",   "with",  "by",    "from",  "into",
      "onto",  "about", "under", "over",  "behind", "inside", "near",
      "up",    "down",  "it",    "its",   "i",     "you",   "he",
      "she",   "we",    "they",  "me",    "him",   "her",   "us",
      "them",  "my",    "your",  "our",   "their", "his",   "this",
      "that",  "these", "those"};
  return std::find(std::begin(kStopwords), std::end(kStopwords), token) !=
         std::end(kStopwords);
}

std::vector<std::string> PluralForms(std::string_view word) {
  static const std::map<std::string, std::string, std::less<>> kIrregular = {
      {"tooth", "teeth"}, {"foot", "feet"},      {"mouse", "mice"},
      {"shelf", "shelves"}, {"knife", "knives"}, {"leaf", "leaves"},
      {"scissors", "scissors"}};
  std::vector<std::string> forms;
  const std::string w(word);
  if (auto it = kIrregular.find(w); it != kIrregular.end()) {
    forms.push_back(it->second);
    return forms;
  }
  if (w.empty()) return forms;
  const auto ends_with = [&](std::string_view suffix) {
    return w.size() >= suffix.size() &&
           std::string_view(w).substr(w.size() - suffix.size()) == suffix;
  };
  const auto is_vowel = [](char ch) {
    return ch == 'a' || ch == 'e' || ch == 'i' || ch == 'o' || ch == 'u';
  };
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") ||
      ends_with("sh")) {
    forms.push_back(w + "es");
  } else if (w.size() > 1 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) {
    forms.push_back(w.substr(0, w.size() - 1) + "ies");
  } else if (w.back() == 'o') {
    forms.push_back(w + "es");
    forms.push_back(w + "s");
  } else {
    forms.push_back(w + "s");
  }
  return forms;
}

}  // namespace aidg::text
