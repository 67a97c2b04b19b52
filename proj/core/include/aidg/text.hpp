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

#ifndef AIDG_TEXT_HPP_
#define AIDG_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

// Text normalization shared by the arbiter, the engine and scripted agents.
namespace aidg::text {

std::string ToLower(std::string_view s);
std::string_view Trim(std::string_view s);

// Lowercases, drops apostrophes, maps every other ASCII punctuation character
// to a space and collapses runs of whitespace. "Well, the code's 42!" becomes
// "well the codes 42".
std::string Normalize(std::string_view s);

// Whitespace split of Normalize(s).
std::vector<std::string> Tokenize(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

bool StartsWith(const std::vector<std::string>& tokens,
                const std::vector<std::string>& prefix);

// True iff the token sequence of needle occurs contiguously in haystack.
bool ContainsPhrase(const std::vector<std::string>& haystack,
                    const std::vector<std::string>& needle);

// Fixed stopword list: articles, copulas, prepositions and pronouns.
bool IsStopword(std::string_view token);

// Plural surface forms accepted for an ontology noun ("tomato" -> "tomatoes").
std::vector<std::string> PluralForms(std::string_view word);

}  // namespace aidg::text

#endif  // AIDG_TEXT_HPP_
