// Copyright 2026 The Gratestack Authors
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

// Plain-text recipe files (".grs"). See docs/recipe_format.md.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gratestack/stack.hpp"

namespace gratestack {

std::string emit_recipe(const StackRecipe& recipe);

struct RecipeParseOptions {
  /// Accept gratings that fail the volume-hologram thickness check.
  bool force = false;
};

/// Throws kParseError with the offending line number.
StackRecipe parse_recipe(std::string_view text,
                         const RecipeParseOptions& options = {});

/// Throws kIoFailure.
StackRecipe read_recipe_file(const std::filesystem::path& path,
                             const RecipeParseOptions& options = {});
void write_recipe_file(const std::filesystem::path& path,
                       const StackRecipe& recipe);

}  // namespace gratestack
