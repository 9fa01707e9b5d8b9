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

#include "covoswitch/code_switched.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "covoswitch/text.hpp"

namespace covoswitch {

std::string CodeSwitchedSentence::rendered_text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tags[i] == Tag::Empty || tokens[i].empty()) continue;
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> CodeSwitchedSentence::tokens_tagged(Tag tag) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size() && i < tags.size(); ++i)
    if (tags[i] == tag) out.push_back(tokens[i]);
  return out;
}

std::string_view tag_label(Tag tag, std::string_view lang) {
  switch (tag) {
    case Tag::L1: return "en";
    case Tag::L2: return lang;
    case Tag::Empty: return "-";
  }
  return "-";
}

std::vector<std::string> invariant_violations(const CodeSwitchedSentence& s) {
  std::vector<std::string> out;
  if (s.tags.size() != s.tokens.size()) {
    out.push_back(fmt::format("{} tags for {} tokens", s.tags.size(), s.tokens.size()));
    return out;
  }
  const auto l1 = std::count(s.tags.begin(), s.tags.end(), Tag::L1);
  const auto l2 = std::count(s.tags.begin(), s.tags.end(), Tag::L2);
  if (l1 == 0) out.emplace_back("no L1 token");
  if (l2 == 0) out.emplace_back("no L2 token");
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const bool empty = s.tokens[i].empty();
    if (empty != (s.tags[i] == Tag::Empty))
      out.push_back(fmt::format("token {} is {} but tagged {}", i, empty ? "empty" : "non-empty",
                                tag_label(s.tags[i], s.lang)));
  }
  if (s.replaced_ius.empty()) out.emplace_back("no replaced IU");
  if (!std::is_sorted(s.replaced_ius.begin(), s.replaced_ius.end()) ||
      std::adjacent_find(s.replaced_ius.begin(), s.replaced_ius.end()) != s.replaced_ius.end())
    out.emplace_back("replaced IU indices not strictly ascending");
  return out;
}

std::vector<std::string> invariant_violations(const CodeSwitchedSentence& s,
                                              std::string_view source_en_text,
                                              std::size_t source_iu_count) {
  auto out = invariant_violations(s);
  if (s.rendered_text() == text::join(text::split_whitespace(source_en_text), " "))
    out.emplace_back("rendered text equals the English source");
  if (s.r() + 1 > source_iu_count)
    out.push_back(fmt::format("r={} with only {} source IUs", s.r(), source_iu_count));
  if (!s.replaced_ius.empty() && s.replaced_ius.back() >= source_iu_count)
    out.push_back(fmt::format("IU index {} out of range", s.replaced_ius.back()));
  return out;
}

}  // namespace covoswitch
