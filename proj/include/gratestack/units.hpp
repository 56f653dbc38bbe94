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

// Unit-suffixed values at the command-line boundary. Plain numbers are SI
// (metres, radians).

#pragma once

#include <string_view>

namespace gratestack {

/// Accepts nm, um, mm, m suffixes. Throws kInvalidArgument.
double parse_length(std::string_view text);

/// Accepts deg, mrad, rad suffixes. Throws kInvalidArgument.
double parse_angle(std::string_view text);

/// Plain floating-point value. Throws kInvalidArgument.
double parse_number(std::string_view text);

/// Degrees to radians.
double from_degrees(double value);

}  // namespace gratestack
