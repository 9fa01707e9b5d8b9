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

#include "covoswitch/languages.hpp"

#include <algorithm>
#include <array>

namespace covoswitch {

namespace {

const std::array<LanguageMeta, 13>& table() {
  using enum ResourceLevel;
  static const std::array<LanguageMeta, 13> kLanguages{{
      {"ar", "Arabic", "Afro-Asiatic", "Semitic", "Arabic", High},
      {"ca", "Catalan", "Indo-European", "Italic", "Latin", High},
      {"cy", "Welsh", "Indo-European", "Celtic", "Latin", Low},
      {"de", "German", "Indo-European", "Germanic", "Latin", High},
      {"et", "Estonian", "Uralic", "Finnic", "Latin", High},
      {"fa", "Persian", "Indo-European", "Iranian", "Arabic", High},
      {"id", "Indonesian", "Austronesian", "Malayo-Polynesian", "Latin", High},
      {"lv", "Latvian", "Indo-European", "Balto-Slavic", "Latin", High},
      {"mn", "Mongolian", "Mongolic-Khitan", "Mongolic", "Cyrillic", Low},
      {"sl", "Slovenian", "Indo-European", "Balto-Slavic", "Latin", High},
      {"sv", "Swedish", "Indo-European", "Germanic", "Latin", High},
      {"ta", "Tamil", "Dravidian", "South Dravidian", "Tamil", Low},
      {"tr", "Turkish", "Turkic", "Common Turkic", "Latin", High},
  }};
  return kLanguages;
}

}  // namespace

std::span<const LanguageMeta> supported_languages() { return table(); }

std::optional<LanguageMeta> find_language(std::string_view iso) {
  const auto& langs = table();
  auto it = std::find_if(langs.begin(), langs.end(),
                         [&](const LanguageMeta& m) { return m.iso == iso; });
  if (it == langs.end()) return std::nullopt;
  return *it;
}

bool is_supported_language(std::string_view iso) { return find_language(iso).has_value(); }

}  // namespace covoswitch
