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

#include "aidg/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "aidg/embedded.hpp"
#include "aidg/rng.hpp"
#include "aidg/text.hpp"

namespace aidg {
namespace {

std::string_view CheckName(CorpusCheck check) {
  switch (check) {
    case CorpusCheck::kSyntax: return "syntax";
    case CorpusCheck::kUnknownKey: return "unknown key";
    case CorpusCheck::kEmpty: return "non-empty";
    case CorpusCheck::kDuplicateText: return "unique text";
    case CorpusCheck::kNotAtomic: return "atomic";
    case CorpusCheck::kCategoryCount: return "category count";
    case CorpusCheck::kWordCount: return "word count";
    case CorpusCheck::kWordsPerCategory: return "words per category";
    case CorpusCheck::kDuplicateWord: return "duplicate word";
    case CorpusCheck::kDiscriminatorCount: return "discriminator count";
    case CorpusCheck::kNonDiscriminating: return "non-discriminating";
  }
  return "unknown";
}

CorpusCheckResult Pass(CorpusCheck check) {
  return {check, std::string(CheckName(check)), true, ""};
}

CorpusCheckResult Fail(CorpusCheck check, std::string detail) {
  return {check, std::string(CheckName(check)), false, std::move(detail)};
}

void ThrowFirstFailure(const std::vector<CorpusCheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) {
      throw CorpusError(r.check, r.name + ": " + r.detail);
    }
  }
}

// A second sentence starts after terminal punctuation followed by more text.
// Questions are not declarative.
bool IsAtomic(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '?') return false;
    if (ch != '.' && ch != '!' && ch != ';') continue;
    if (!text::Trim(s.substr(i + 1)).empty() && i + 1 < s.size() &&
        s[i + 1] == ' ') {
      return false;
    }
  }
  return true;
}

struct SecretLines {
  std::vector<std::string> texts;
};

SecretLines ReadSecretLines(std::istream& in) {
  SecretLines lines;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = text::Trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.texts.emplace_back(t);
  }
  return lines;
}

std::vector<CorpusCheckResult> CheckSecretLines(const SecretLines& lines) {
  std::vector<CorpusCheckResult> results;
  results.push_back(lines.texts.empty()
                        ? Fail(CorpusCheck::kEmpty, "no secrets in corpus")
                        : Pass(CorpusCheck::kEmpty));
  std::set<std::string> seen;
  std::string dup;
  for (const auto& t : lines.texts) {
    if (!seen.insert(text::Normalize(t)).second && dup.empty()) dup = t;
  }
  results.push_back(dup.empty()
                        ? Pass(CorpusCheck::kDuplicateText)
                        : Fail(CorpusCheck::kDuplicateText,
                               "duplicate secret \"" + dup + "\""));
  std::string compound;
  for (const auto& t : lines.texts) {
    if (!IsAtomic(t) && compound.empty()) compound = t;
  }
  results.push_back(compound.empty()
                        ? Pass(CorpusCheck::kNotAtomic)
                        : Fail(CorpusCheck::kNotAtomic,
                               "not a single declarative sentence: \"" +
                                   compound + "\""));
  return results;
}

std::optional<TriValue> ParseTri(std::string_view token) {
  if (token == "y") return TriValue::kYes;
  if (token == "n") return TriValue::kNo;
  if (token == "?") return TriValue::kMaybe;
  return std::nullopt;
}

bool Definite(TriValue v) { return v != TriValue::kMaybe; }

}  // namespace

std::vector<SecretFact> LoadSecretCorpus(std::istream& in) {
  const SecretLines lines = ReadSecretLines(in);
  ThrowFirstFailure(CheckSecretLines(lines));
  std::vector<SecretFact> corpus;
  corpus.reserve(lines.texts.size());
  for (std::size_t i = 0; i < lines.texts.size(); ++i) {
    corpus.push_back({static_cast<int>(i), lines.texts[i]});
  }
  return corpus;
}

std::vector<CorpusCheckResult> CheckSecretCorpus(std::istream& in) {
  return CheckSecretLines(ReadSecretLines(in));
}

OntologyDocument ParseOntologyDocument(std::istream& in) {
  OntologyDocument doc;
  std::set<std::string> attribute_keys;
  bool have_version = false;
  std::string line;
  std::size_t line_number = 0;
  const auto syntax = [&](const std::string& what) {
    return CorpusError(CorpusCheck::kSyntax,
                       "syntax: line " + std::to_string(line_number) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view t = text::Trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos) throw syntax("expected 'key = value'");
    const std::string key(text::Trim(t.substr(0, eq)));
    const std::string_view value = text::Trim(t.substr(eq + 1));
    if (key == "version") {
      if (value != "1") throw syntax("unsupported version " + std::string(value));
      have_version = true;
    } else if (key == "attribute") {
      if (!doc.words.empty()) throw syntax("attribute declared after words");
      const std::size_t bar = value.find('|');
      if (bar == std::string_view::npos) throw syntax("expected 'key | question'");
      Attribute attr{std::string(text::Trim(value.substr(0, bar))),
                     std::string(text::Trim(value.substr(bar + 1)))};
      if (attr.key.empty() || attr.question.empty()) {
        throw syntax("empty attribute key or question");
      }
      if (!attribute_keys.insert(attr.key).second) {
        throw syntax("duplicate attribute " + attr.key);
      }
      doc.attributes.push_back(std::move(attr));
    } else if (key == "category") {
      if (value.empty()) throw syntax("empty category label");
      if (std::find(doc.categories.begin(), doc.categories.end(), value) !=
          doc.categories.end()) {
        throw syntax("category declared twice: " + std::string(value));
      }
      doc.categories.emplace_back(value);
    } else if (key == "word") {
      if (doc.categories.empty()) throw syntax("word before any category");
      const std::size_t colon = value.find(':');
      if (colon == std::string_view::npos) throw syntax("expected 'word : values'");
      const std::string word(text::Trim(value.substr(0, colon)));
      if (word.empty() || text::Normalize(word) != word) {
        throw syntax("word must be a lowercase token: '" + word + "'");
      }
      std::istringstream values{std::string(value.substr(colon + 1))};
      std::vector<TriValue> row;
      std::string token;
      while (values >> token) {
        auto v = ParseTri(token);
        if (!v) throw syntax("bad attribute value '" + token + "'");
        row.push_back(*v);
      }
      if (row.size() != doc.attributes.size()) {
        throw syntax("word " + word + " has " + std::to_string(row.size()) +
                     " values for " + std::to_string(doc.attributes.size()) +
                     " attributes");
      }
      doc.words.push_back({word, doc.categories.back()});
      doc.rows.push_back(std::move(row));
    } else {
      throw CorpusError(CorpusCheck::kUnknownKey,
                        "unknown key: line " + std::to_string(line_number) +
                            ": '" + key + "'");
    }
  }
  if (!have_version) throw syntax("missing 'version = 1'");
  return doc;
}

std::vector<CorpusCheckResult> CheckOntology(const OntologyDocument& doc) {
  std::vector<CorpusCheckResult> results;

  results.push_back(
      doc.categories.size() == kCategoryCount
          ? Pass(CorpusCheck::kCategoryCount)
          : Fail(CorpusCheck::kCategoryCount,
                 std::to_string(doc.categories.size()) + " categories, expected " +
                     std::to_string(kCategoryCount)));
  results.push_back(
      doc.words.size() == kOntologyWordCount
          ? Pass(CorpusCheck::kWordCount)
          : Fail(CorpusCheck::kWordCount,
                 std::to_string(doc.words.size()) + " words, expected " +
                     std::to_string(kOntologyWordCount)));

  std::map<std::string, std::vector<std::size_t>> members;
  for (const auto& c : doc.categories) members[c];
  for (std::size_t i = 0; i < doc.words.size(); ++i) {
    members[doc.words[i].category].push_back(i);
  }
  std::string uneven;
  for (const auto& c : doc.categories) {
    if (members[c].size() != kWordsPerCategory && uneven.empty()) {
      uneven = c + " has " + std::to_string(members[c].size()) + " words";
    }
  }
  results.push_back(uneven.empty()
                        ? Pass(CorpusCheck::kWordsPerCategory)
                        : Fail(CorpusCheck::kWordsPerCategory, uneven));

  std::set<std::string> seen;
  std::string dup;
  for (const auto& w : doc.words) {
    if (!seen.insert(w.word).second && dup.empty()) dup = w.word;
  }
  results.push_back(dup.empty() ? Pass(CorpusCheck::kDuplicateWord)
                                : Fail(CorpusCheck::kDuplicateWord,
                                       "\"" + dup + "\" appears twice"));

  // Discriminators: attributes definite over the whole category and not
  // constant within it.
  std::string short_category;
  for (const auto& c : doc.categories) {
    const auto& idx = members[c];
    std::size_t discriminators = 0;
    for (std::size_t a = 0; a < doc.attributes.size(); ++a) {
      bool definite = !idx.empty();
      bool has_yes = false, has_no = false;
      for (std::size_t w : idx) {
        const TriValue v = doc.rows[w][a];
        definite = definite && Definite(v);
        has_yes = has_yes || v == TriValue::kYes;
        has_no = has_no || v == TriValue::kNo;
      }
      if (definite && has_yes && has_no) ++discriminators;
    }
    if (discriminators < kMinDiscriminators && short_category.empty()) {
      short_category = c + " has " + std::to_string(discriminators) +
                       " discriminator attributes, need " +
                       std::to_string(kMinDiscriminators);
    }
  }
  results.push_back(short_category.empty()
                        ? Pass(CorpusCheck::kDiscriminatorCount)
                        : Fail(CorpusCheck::kDiscriminatorCount, short_category));

  // Two words are told apart iff some attribute is yes for one and no for
  // the other; "maybe" never separates.
  std::string clash;
  for (const auto& c : doc.categories) {
    const auto& idx = members[c];
    for (std::size_t i = 0; i < idx.size() && clash.empty(); ++i) {
      for (std::size_t j = i + 1; j < idx.size() && clash.empty(); ++j) {
        const auto& ri = doc.rows[idx[i]];
        const auto& rj = doc.rows[idx[j]];
        bool separated = false;
        for (std::size_t a = 0; a < ri.size() && !separated; ++a) {
          separated = Definite(ri[a]) && Definite(rj[a]) && ri[a] != rj[a];
        }
        if (!separated) {
          clash = c + ": \"" + doc.words[idx[i]].word + "\" and \"" +
                  doc.words[idx[j]].word + "\" have indistinguishable rows";
        }
      }
    }
  }
  results.push_back(clash.empty()
                        ? Pass(CorpusCheck::kNonDiscriminating)
                        : Fail(CorpusCheck::kNonDiscriminating, clash));
  return results;
}

Ontology::Ontology(OntologyDocument doc) {
  ThrowFirstFailure(CheckOntology(doc));
  categories_ = std::move(doc.categories);
  words_ = std::move(doc.words);
  attributes_ = std::move(doc.attributes);
  rows_ = std::move(doc.rows);
}

std::optional<std::size_t> Ontology::FindWord(std::string_view surface) const {
  std::string norm = text::Normalize(surface);
  const auto starts_with_article = [&](std::string_view article) {
    return norm.size() > article.size() + 1 && norm.starts_with(article) &&
           norm[article.size()] == ' ';
  };
  for (std::string_view article : {"a", "an", "the"}) {
    if (starts_with_article(article)) {
      norm.erase(0, article.size() + 1);
      break;
    }
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].word == norm) return i;
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (const auto& plural : text::PluralForms(words_[i].word)) {
      if (plural == norm) return i;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> Ontology::FindAttributeByQuestion(
    std::string_view question) const {
  const std::string norm = text::Normalize(question);
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    if (text::Normalize(attributes_[a].question) == norm) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> Ontology::FindAttributeByKey(
    std::string_view key) const {
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    if (attributes_[a].key == key) return a;
  }
  return std::nullopt;
}

std::vector<std::size_t> Ontology::WordsInCategory(
    std::string_view category) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].category == category) out.push_back(i);
  }
  return out;
}

Ontology LoadOntology(std::istream& in) {
  return Ontology(ParseOntologyDocument(in));
}

std::string_view DefaultSecretsText() { return EmbeddedFile("secrets.txt"); }
std::string_view DefaultOntologyText() { return EmbeddedFile("ontology.txt"); }

const std::vector<SecretFact>& DefaultSecrets() {
  static const std::vector<SecretFact> secrets = [] {
    std::istringstream in{std::string(DefaultSecretsText())};
    return LoadSecretCorpus(in);
  }();
  return secrets;
}

const Ontology& DefaultOntology() {
  static const Ontology ontology = [] {
    std::istringstream in{std::string(DefaultOntologyText())};
    return LoadOntology(in);
  }();
  return ontology;
}

std::vector<OntologyWord> DrawTargets(const Ontology& ontology, std::size_t n,
                                      std::uint64_t seed) {
  if (n == 0 || n > ontology.size()) {
    throw ConfigError("cannot draw " + std::to_string(n) + " targets from " +
                      std::to_string(ontology.size()) + " words");
  }
  std::vector<std::size_t> order(ontology.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);
  std::vector<OntologyWord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(ontology.words()[order[i]]);
  return out;
}

std::vector<SecretFact> ShuffleSecrets(std::vector<SecretFact> corpus,
                                       std::uint64_t seed) {
  Rng rng(seed);
  rng.Shuffle(corpus);
  return corpus;
}

}  // namespace aidg
