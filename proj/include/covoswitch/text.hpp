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

#include <string>
#include <string_view>
#include <vector>

namespace covoswitch::text {

// UTF-8 helpers. Invalid byte sequences decode to U+FFFD.

std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
bool is_valid_utf8(std::string_view s);

bool is_whitespace(char32_t c);
/// Unicode general category P*.
bool is_punctuation(char32_t c);

/// Splits on runs of Unicode whitespace; never yields empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

/// Splits on every occurrence of `sep`; keeps empty fields.
std::vector<std::string> split_exact(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string_view trim(std::string_view s);

/// Lowercases and removes punctuation code points. May return "".
std::string normalize_token(std::string_view token);

/// normalize_token on every whitespace token, empties dropped, joined by one space.
std::string normalize_text(std::string_view s);

/// Whitespace tokens run through normalize_token, empties dropped.
std::vector<std::string> normalized_tokens(std::string_view s);

}  // namespace covoswitch::text
