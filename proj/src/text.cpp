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

#include "covoswitch/text.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace covoswitch::text {

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      out += "\xEF\xBF\xBD";
      continue;
    }
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

bool is_valid_utf8(std::string_view s) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

bool is_whitespace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_punctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> tokens;
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  int32_t start = -1;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    const bool space = c >= 0 && u_isUWhiteSpace(c);
    if (space) {
      if (start >= 0) {
        tokens.emplace_back(s.substr(static_cast<std::size_t>(start),
                                     static_cast<std::size_t>(at - start)));
        start = -1;
      }
    } else if (start < 0) {
      start = at;
    }
  }
  if (start >= 0) tokens.emplace_back(s.substr(static_cast<std::size_t>(start)));
  return tokens;
}

std::vector<std::string> split_exact(std::string_view s, char sep) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const auto pos = s.find(sep, begin);
    if (pos == std::string_view::npos) {
      fields.emplace_back(s.substr(begin));
      return fields;
    }
    fields.emplace_back(s.substr(begin, pos - begin));
    begin = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  // ASCII whitespace only; TSV fields never carry exotic padding.
  constexpr std::string_view kSpace = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

std::string normalize_token(std::string_view token) {
  std::u32string kept;
  for (char32_t c : decode_utf8(token)) {
    if (is_punctuation(c)) continue;
    kept.push_back(static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
  }
  return encode_utf8(kept);
}

std::vector<std::string> normalized_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& token : split_whitespace(s)) {
    auto norm = normalize_token(token);
    if (!norm.empty()) out.push_back(std::move(norm));
  }
  return out;
}

std::string normalize_text(std::string_view s) { return join(normalized_tokens(s), " "); }

}  // namespace covoswitch::text
