// Copyright 2026 The CoVoSwitch Tools Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace covoswitch {

/// Per-token provenance. L1 is the matrix language (English), L2 the
/// embedded one, Empty marks a placeholder for an unaligned English token.
enum class Tag { L1, L2, Empty };

struct CodeSwitchedSentence {
  std::string id;
  std::string lang;
  std::vector<std::string> tokens;
  std::vector<Tag> tags;
  /// Ascending, unique IU indices of the source sentence.
  std::vector<std::size_t> replaced_ius;

  std::size_t r() const noexcept { return replaced_ius.size(); }

  /// Tokens joined by single spaces with placeholders dropped.
  std::string rendered_text() const;

  /// Tokens carrying `tag`, in order.
  std::vector<std::string> tokens_tagged(Tag tag) const;

  friend bool operator==(const CodeSwitchedSentence&, const CodeSwitchedSentence&) = default;
};

/// Structural invariants that hold without knowledge of the source pair.
/// Returns human-readable violations; empty means valid.
std::vector<std::string> invariant_violations(const CodeSwitchedSentence& s);

/// Adds the source-dependent checks: rendered text differs from the English
/// source and r stays below the source IU count.
std::vector<std::string> invariant_violations(const CodeSwitchedSentence& s,
                                              std::string_view source_en_text,
                                              std::size_t source_iu_count);

std::string_view tag_label(Tag tag, std::string_view lang);

}  // namespace covoswitch
