// Copyright 2026 The anonylat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <random>
#include <sstream>

#include "util.hpp"

using namespace anonylat;

TEST_CASE("parse_number accepts decimals and rejects junk") {
  CHECK(parse_number("32.5") == 32.5);
  CHECK(parse_number("-122.25") == -122.25);
  CHECK(parse_number("7") == 7.0);
  CHECK_FALSE(parse_number("").has_value());
  CHECK_FALSE(parse_number("12a").has_value());
  CHECK_FALSE(parse_number("nan").has_value());
  CHECK_FALSE(parse_number("inf").has_value());
}

TEST_CASE("format_number renders the shortest round-trip text") {
  CHECK(format_number(20) == "20");
  CHECK(format_number(32.5) == "32.5");
  CHECK(format_number(-122.3) == "-122.3");
  CHECK(format_number(snap_number(0.1 * 3)) == "0.3");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = static_cast<double>(static_cast<int64_t>(rng() % 2000001) - 1000000) / 1000;
    CHECK(parse_number(format_number(v)) == v);
  }
}

TEST_CASE("csv records round-trip quoting") {
  const std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "", "line\nbreak"};
  std::ostringstream out;
  write_csv_record(out, fields);
  write_csv_record(out, {"a", "b"});
  std::istringstream in(out.str());
  std::vector<std::string> got;
  REQUIRE(read_csv_record(in, got));
  CHECK(got == fields);
  REQUIRE(read_csv_record(in, got));
  CHECK(got == std::vector<std::string>{"a", "b"});
  CHECK_FALSE(read_csv_record(in, got));
}

TEST_CASE("csv reader accepts CRLF line endings") {
  std::istringstream in("x,y\r\n1,2\r\n");
  std::vector<std::string> got;
  REQUIRE(read_csv_record(in, got));
  CHECK(got == std::vector<std::string>{"x", "y"});
  REQUIRE(read_csv_record(in, got));
  CHECK(got == std::vector<std::string>{"1", "2"});
}

TEST_CASE("uniform_index stays in range and is seed-deterministic") {
  std::mt19937_64 a(42);
  std::mt19937_64 b(42);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const uint64_t x = uniform_index(a, 7);
    CHECK(x == uniform_index(b, 7));
    REQUIRE(x < 7);
    ++hist[x];
  }
  for (int h : hist) CHECK(h > 800);
  CHECK(uniform_index(a, 1) == 0);
}

TEST_CASE("join concatenates with a separator") {
  CHECK(join({}, ",").empty());
  CHECK(join({"a"}, ",") == "a");
  CHECK(join({"a", "b", "c"}, "|") == "a|b|c");
}
