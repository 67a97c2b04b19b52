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

#ifndef AIDG_ERROR_HPP_
#define AIDG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aidg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Which corpus invariant a load failed on.
enum class CorpusCheck {
  kSyntax,
  kUnknownKey,
  kEmpty,
  kDuplicateText,
  kNotAtomic,
  kCategoryCount,
  kWordCount,
  kWordsPerCategory,
  kDuplicateWord,
  kDiscriminatorCount,
  kNonDiscriminating,
};

class CorpusError : public Error {
 public:
  CorpusError(CorpusCheck check, const std::string& what)
      : Error(what), check_(check) {}
  CorpusCheck check() const { return check_; }

 private:
  CorpusCheck check_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// An agent could not be constructed (missing credentials, bad scripted spec).
class AgentResolutionError : public Error {
 public:
  using Error::Error;
};

// An agent did not produce a reply; the engine aborts the game.
class AgentFailure : public Error {
 public:
  using Error::Error;
};

// An external judge produced no parseable verdict.
class JudgeFailure : public Error {
 public:
  using Error::Error;
};

class RatingError : public Error {
 public:
  using Error::Error;
};

class StatsError : public Error {
 public:
  using Error::Error;
};

class StoreError : public Error {
 public:
  using Error::Error;
};

// Replayed ratings disagree with the stored sequence or values.
class ReplayMismatch : public StoreError {
 public:
  using StoreError::StoreError;
};

}  // namespace aidg

#endif  // AIDG_ERROR_HPP_
