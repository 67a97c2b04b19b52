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

#ifndef AIDG_VERDICT_HPP_
#define AIDG_VERDICT_HPP_

#include <optional>
#include <string>

namespace aidg {

// Free-form protocol failure categories.
enum class LeakCategory { kExplicit, kConfirmational, kParaphrase, kImplicit };

struct LeakVerdict {
  bool leaked = false;
  std::optional<LeakCategory> category;  // present iff leaked
  std::string rationale;

  static LeakVerdict Clean(std::string rationale) {
    return {false, std::nullopt, std::move(rationale)};
  }
  static LeakVerdict Leak(LeakCategory category, std::string rationale) {
    return {true, category, std::move(rationale)};
  }
  bool operator==(const LeakVerdict&) const = default;
};

// The only holder replies the constrained protocol accepts.
enum class HolderResponse { kYes, kNo, kMaybe };

enum class ConstraintKind { kDirectGuess, kDuplicateLock };

struct ConstraintVerdict {
  bool violation = false;
  std::optional<ConstraintKind> kind;  // present iff violation
  std::string offending_span;

  static ConstraintVerdict Ok() { return {}; }
  static ConstraintVerdict Violation(ConstraintKind kind, std::string span) {
    return {true, kind, std::move(span)};
  }
  bool operator==(const ConstraintVerdict&) const = default;
};

}  // namespace aidg

#endif  // AIDG_VERDICT_HPP_
