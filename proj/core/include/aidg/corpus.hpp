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

#ifndef AIDG_CORPUS_HPP_
#define AIDG_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aidg/error.hpp"

namespace aidg {

// One atomic proposition a holder protects in the free-form protocol.
struct SecretFact {
  int id = 0;
  std::string text;

  bool operator==(const SecretFact&) const = default;
};

struct OntologyWord {
  std::string word;
  std::string category;

  bool operator==(const OntologyWord&) const = default;
};

enum class TriValue { kNo, kYes, kMaybe };

// A yes/no/maybe property question over the ontology ("Is it alive?").
struct Attribute {
  std::string key;
  std::string question;
};

inline constexpr std::size_t kCategoryCount = 10;
inline constexpr std::size_t kWordsPerCategory = 10;
inline constexpr std::size_t kOntologyWordCount = 100;
inline constexpr std::size_t kMinDiscriminators = 4;

// Parsed but unvalidated ontology file contents.
struct OntologyDocument {
  std::vector<Attribute> attributes;
  std::vector<std::string> categories;
  std::vector<OntologyWord> words;
  std::vector<std::vector<TriValue>> rows;  // parallel to words
};

struct CorpusCheckResult {
  CorpusCheck check;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Closed search space for the constrained protocol: 10 categories of 10 nouns
// plus an attribute matrix that scripted agents play against. Immutable.
class Ontology {
 public:
  // Throws CorpusError naming the first failed invariant.
  explicit Ontology(OntologyDocument doc);

  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<OntologyWord>& words() const { return words_; }
  const std::vector<Attribute>& attributes() const { return attributes_; }
  std::size_t size() const { return words_.size(); }

  TriValue Value(std::size_t word_index, std::size_t attribute_index) const {
    return rows_[word_index][attribute_index];
  }

  // Lookup by normalized word; plural surface forms also resolve.
  std::optional<std::size_t> FindWord(std::string_view surface) const;
  // Lookup by normalized question text.
  std::optional<std::size_t> FindAttributeByQuestion(
      std::string_view question) const;
  std::optional<std::size_t> FindAttributeByKey(std::string_view key) const;
  std::vector<std::size_t> WordsInCategory(std::string_view category) const;

 private:
  std::vector<std::string> categories_;
  std::vector<OntologyWord> words_;
  std::vector<Attribute> attributes_;
  std::vector<std::vector<TriValue>> rows_;
};

// One secret per line; blank lines and lines starting with '#' are skipped.
// Ids are assigned sequentially from 0 in file order.
std::vector<SecretFact> LoadSecretCorpus(std::istream& in);

// Every secret-corpus invariant, evaluated without stopping at the first.
std::vector<CorpusCheckResult> CheckSecretCorpus(std::istream& in);

// Line-oriented key/value ontology format; see docs/formats.md.
OntologyDocument ParseOntologyDocument(std::istream& in);
std::vector<CorpusCheckResult> CheckOntology(const OntologyDocument& doc);
Ontology LoadOntology(std::istream& in);

// Shipped corpora compiled into the library.
const std::vector<SecretFact>& DefaultSecrets();
const Ontology& DefaultOntology();
std::string_view DefaultSecretsText();
std::string_view DefaultOntologyText();

// n distinct words, uniformly random over orderings, deterministic per seed.
std::vector<OntologyWord> DrawTargets(const Ontology& ontology, std::size_t n,
                                      std::uint64_t seed);

std::vector<SecretFact> ShuffleSecrets(std::vector<SecretFact> corpus,
                                       std::uint64_t seed);

}  // namespace aidg

#endif  // AIDG_CORPUS_HPP_
