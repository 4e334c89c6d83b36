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


// Small tables, hierarchies and random instance generators shared by tests.

#ifndef ANONYLAT_TESTS_FIXTURES_HPP_
#define ANONYLAT_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "clinic_data.hpp"
#include "error.hpp"
#include "hierarchy.hpp"
#include "table.hpp"
#include "util.hpp"

namespace anonylat::testing {

// Error code thrown by `f`, if any.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline AttributeSchema attr(std::string name, Kind kind, Role role) {
  AttributeSchema a;
  a.name = std::move(name);
  a.kind = kind;
  a.role = role;
  return a;
}

inline std::vector<AttributeSchema> zip_age_schema() {
  return {attr("zip", Kind::kCategorical, Role::kQid),
          attr("age", Kind::kNumerical, Role::kQid),
          attr("disease", Kind::kCategorical, Role::kTarget)};
}

// Postal codes with their three-digit prefixes.
inline HierarchyPtr zip_hierarchy() {
  return std::make_shared<Hierarchy>(Hierarchy::from_chains(
      zip_age_schema()[0], {{"3500", "350*", "*"},
                            {"3506", "350*", "*"},
                            {"3104", "310*", "*"},
                            {"3105", "310*", "*"}}));
}

inline HierarchyPtr age_hierarchy(const std::vector<double>& ages) {
  return std::make_shared<Hierarchy>(build_interval_hierarchy("age", ages, {10}, 0));
}

// Six rows whose (zip, age) pairs form groups of sizes 3, 2 and 1.
inline Table toy_table() {
  return Table(zip_age_schema(), {{"3500", "23", "flu"},
                                  {"3500", "23", "cold"},
                                  {"3500", "23", "flu"},
                                  {"3506", "27", "flu"},
                                  {"3506", "27", "cold"},
                                  {"3104", "35", "flu"}});
}

inline Hierarchies toy_hierarchies() {
  return {zip_hierarchy(), age_hierarchy({23, 27, 35})};
}

struct Instance {
  std::unique_ptr<Table> table;
  Hierarchies hierarchies;
};

// Random table with `qids` QIDs mixing categorical and numerical kinds, a
// binary target and hierarchies of random heights. Lattice size stays small
// enough for exhaustive search.
inline Instance random_instance(uint64_t seed, size_t rows, size_t qids) {
  std::mt19937_64 rng(seed);
  auto pick = [&](uint64_t n) { return static_cast<int>(uniform_index(rng, n)); };
  std::vector<AttributeSchema> schema;
  std::vector<std::vector<std::vector<std::string>>> chains(qids);
  std::vector<std::vector<double>> widths(qids);
  std::vector<int> leaves(qids);
  for (size_t q = 0; q < qids; ++q) {
    const bool numeric = pick(2) == 0;
    const int height = 1 + pick(3);
    schema.push_back(attr("q" + std::to_string(q),
                          numeric ? Kind::kNumerical : Kind::kCategorical, Role::kQid));
    if (numeric) {
      double w = 1 + pick(3);
      for (int l = 0; l < height; ++l) {
        widths[q].push_back(w);
        w *= 2 + pick(2);
      }
      leaves[q] = 5 + pick(30);
    } else {
      // Fan-out 2 or 3 per level.
      const int fan = 2 + pick(2);
      int count = 1;
      for (int l = 0; l < height; ++l) count *= fan;
      leaves[q] = count;
      for (int leaf = 0; leaf < count; ++leaf) {
        std::vector<std::string> chain{"v" + std::to_string(leaf)};
        int group = leaf;
        for (int l = 1; l < height; ++l) {
          group /= fan;
          chain.push_back("g" + std::to_string(l) + "_" + std::to_string(group));
        }
        chain.push_back("*");
        chains[q].push_back(std::move(chain));
      }
    }
  }
  schema.push_back(attr("label", Kind::kCategorical, Role::kTarget));
  std::vector<std::vector<std::string>> data(rows);
  std::vector<std::vector<double>> values(qids);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t q = 0; q < qids; ++q) {
      if (schema[q].kind == Kind::kNumerical) {
        const double v = pick(static_cast<uint64_t>(leaves[q]));
        values[q].push_back(v);
        data[r].push_back(format_number(v));
      } else {
        // Skewed draws so that some groups are large.
        const int a = pick(static_cast<uint64_t>(leaves[q]));
        const int b = pick(static_cast<uint64_t>(leaves[q]));
        data[r].push_back("v" + std::to_string(std::min(a, b)));
      }
    }
    data[r].push_back(pick(2) ? "yes" : "no");
  }
  Instance inst;
  inst.table = std::make_unique<Table>(schema, data);
  for (size_t q = 0; q < qids; ++q) {
    if (schema[q].kind == Kind::kNumerical) {
      inst.hierarchies.push_back(std::make_shared<Hierarchy>(
          build_interval_hierarchy(schema[q].name, values[q], widths[q], 0)));
    } else {
      inst.hierarchies.push_back(
          std::make_shared<Hierarchy>(Hierarchy::from_chains(schema[q], chains[q])));
    }
  }
  return inst;
}

inline std::string data_dir() { return ANONYLAT_DATA_DIR; }

}  // namespace anonylat::testing

#endif  // ANONYLAT_TESTS_FIXTURES_HPP_
