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

#include "gratestack/units.hpp"

#include <array>
#include <span>
#include <charconv>
#include <numbers>
#include <string>
#include <utility>

#include "gratestack/error.hpp"

namespace gratestack {

namespace {

struct Suffix {
  std::string_view name;
  double scale;
};

double parse_scaled(std::string_view text, std::span<const Suffix> suffixes,
                    const char* what) {
  for (const Suffix& s : suffixes) {
    if (text.size() > s.name.size() && text.ends_with(s.name)) {
      return parse_number(text.substr(0, text.size() - s.name.size())) *
             s.scale;
    }
  }
  try {
    return parse_number(text);
  } catch (const Error&) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("not a valid ") + what + ": '" + std::string(text) +
                    "'");
  }
}

}  // namespace

double parse_number(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::kInvalidArgument,
                "not a number: '" + std::string(text) + "'");
  }
  return v;
}

double parse_length(std::string_view text) {
  // Longest suffixes first so "mm" is not read as "m".
  static constexpr std::array<Suffix, 4> kSuffixes{{
      {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"m", 1.0}}};
  return parse_scaled(text, kSuffixes, "length");
}

double parse_angle(std::string_view text) {
  static constexpr std::array<Suffix, 3> kSuffixes{{
      {"mrad", 1e-3}, {"deg", std::numbers::pi / 180.0}, {"rad", 1.0}}};
  return parse_scaled(text, kSuffixes, "angle");
}

double from_degrees(double value) { return value * std::numbers::pi / 180.0; }

}  // namespace gratestack
