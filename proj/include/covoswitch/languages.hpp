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

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace covoswitch {

enum class ResourceLevel { High, Low };

struct LanguageMeta {
  std::string iso;
  std::string name;
  std::string family;
  std::string subgrouping;
  std::string script;
  ResourceLevel resource_level;
};

/// The thirteen embedded languages, alphabetical by ISO 639-1 code.
std::span<const LanguageMeta> supported_languages();

std::optional<LanguageMeta> find_language(std::string_view iso);

bool is_supported_language(std::string_view iso);

}  // namespace covoswitch
