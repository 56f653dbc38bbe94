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

#include <gtest/gtest.h>

#include <numbers>

#include "gratestack/error.hpp"

namespace gratestack {
namespace {

TEST(Units, Lengths) {
  EXPECT_DOUBLE_EQ(parse_length("532nm"), 532e-9);
  EXPECT_DOUBLE_EQ(parse_length("1.5um"), 1.5e-6);
  EXPECT_DOUBLE_EQ(parse_length("0.5mm"), 0.5e-3);
  EXPECT_DOUBLE_EQ(parse_length("2m"), 2.0);
  EXPECT_DOUBLE_EQ(parse_length("3e-3"), 3e-3);
  EXPECT_DOUBLE_EQ(parse_length("+1mm"), 1e-3);
}

TEST(Units, Angles) {
  EXPECT_DOUBLE_EQ(parse_angle("2.4mrad"), 2.4e-3);
  EXPECT_DOUBLE_EQ(parse_angle("180deg"), std::numbers::pi);
  EXPECT_DOUBLE_EQ(parse_angle("0.1rad"), 0.1);
  EXPECT_DOUBLE_EQ(parse_angle("-0.2"), -0.2);
  EXPECT_DOUBLE_EQ(from_degrees(90.0), std::numbers::pi / 2);
}

TEST(Units, Rejects) {
  for (const char* bad : {"", "mm", "1 mm", "1km", "abc", "1e", "--1", "1mmm"}) {
    try {
      parse_length(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument) << bad;
    }
  }
  EXPECT_THROW(parse_angle("5grad"), Error);
  EXPECT_THROW(parse_angle("deg"), Error);
  EXPECT_THROW(parse_number("1.0x"), Error);
  EXPECT_THROW(parse_number("+"), Error);
}

}  // namespace
}  // namespace gratestack
