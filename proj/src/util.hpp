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

// Small helpers shared by the core: number formatting, CSV records and a
// portable seeded index sampler.

#ifndef ANONYLAT_UTIL_HPP_
#define ANONYLAT_UTIL_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace anonylat {

// Strict decimal parse; rejects trailing characters and non-finite values.
std::optional<double> parse_number(std::string_view text);

// Shortest round-trip fixed-point rendering ("20", "32.5", "-122.3").
std::string format_number(double value);

// Rounds to 10 significant digits so that bucket bounds such as 0.1 * 3
// print as "0.3".
double snap_number(double value);

// RFC 4180 reader. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields);
std::string csv_escape(std::string_view field);
void write_csv_record(std::ostream& out, const std::vector<std::string>& fields);

std::string read_file(const std::string& path);

// Uniform integer in [0, n) from a 64-bit Mersenne twister by rejection, so
// results do not depend on the standard library's distribution code.
uint64_t uniform_index(std::mt19937_64& rng, uint64_t n);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace anonylat

#endif  // ANONYLAT_UTIL_HPP_
