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

#ifndef ANONYLAT_HIERARCHY_HPP_
#define ANONYLAT_HIERARCHY_HPP_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "table.hpp"

namespace anonylat {

inline constexpr const char* kRootLabel = "*";

struct Interval {
  double lo = 0;
  double hi = 0;
  bool hi_open = false;

  bool contains(double v) const { return lo <= v && (hi_open ? v < hi : v <= hi); }
  bool contains(const Interval& o) const;
  double midpoint() const { return (lo + hi) / 2; }
  bool operator==(const Interval& o) const {
    return lo == o.lo && hi == o.hi && hi_open == o.hi_open;
  }
};

// A cell value after generalisation. `level`/`node` locate the hierarchy node
// for categorical values when known; they are not part of equality.
struct GeneralisedValue {
  std::string label;
  std::optional<Interval> interval;
  int level = -1;
  int node = -1;

  bool operator==(const GeneralisedValue& o) const {
    return label == o.label && interval == o.interval;
  }
};

// Value generalisation hierarchy. Level 0 holds the leaves, level height()
// holds the single root "*". Nodes are numbered per level in order of first
// appearance.
class Hierarchy {
 public:
  // Each chain is "leaf, gen1, ..., *".
  static Hierarchy from_chains(const AttributeSchema& attribute,
                               const std::vector<std::vector<std::string>>& chains);
  static Hierarchy parse(std::istream& in, const AttributeSchema& attribute);
  static Hierarchy parse_file(const std::string& path,
                              const AttributeSchema& attribute);

  const std::string& attribute() const { return attribute_; }
  Kind kind() const { return kind_; }
  int height() const { return static_cast<int>(levels_.size()) - 1; }
  int num_leaves() const { return num_nodes(0); }
  int num_nodes(int level) const {
    return static_cast<int>(levels_[level].labels.size());
  }

  const std::string& label(int level, int node) const {
    return levels_[level].labels[node];
  }
  // Numerical hierarchies only.
  const Interval& interval(int level, int node) const {
    return levels_[level].intervals[node];
  }
  int leaf_count(int level, int node) const {
    return levels_[level].leaf_counts[node];
  }
  int parent(int level, int node) const { return levels_[level].parents[node]; }
  const std::vector<int>& children(int level, int node) const {
    return levels_[level].children[node];
  }
  // Node id of the leaf's ancestor at `level`.
  int ancestor(int leaf, int level) const { return ancestors_[level][leaf]; }
  const std::vector<int>& ancestors_at(int level) const {
    return ancestors_[level];
  }
  double leaf_value(int leaf) const { return leaf_values_[leaf]; }

  std::optional<int> find_leaf(std::string_view text) const;
  std::optional<int> find_leaf(double value) const;
  // Leaf for a table cell; numeric hierarchies match by value.
  std::optional<int> find_leaf(std::string_view text, double value) const;
  std::optional<int> find_node(int level, std::string_view label) const;

  GeneralisedValue generalise_leaf(int leaf, int level) const;
  // Throws a coverage error for unknown values, bounds error for bad levels.
  GeneralisedValue generalise(std::string_view text, int level) const;
  GeneralisedValue generalise(double value, int level) const;

  int subtree_leaf_count(std::string_view label, int level) const;

  // Lowest common ancestor of two nodes given as (level, node).
  std::pair<int, int> lca(int level_a, int node_a, int level_b, int node_b) const;

 private:
  struct Level {
    std::vector<std::string> labels;
    std::vector<Interval> intervals;
    std::vector<int> parents;
    std::vector<std::vector<int>> children;
    std::vector<int> leaf_counts;
    std::unordered_map<std::string, int> index;
  };

  void check_level(int level) const;

  std::string attribute_;
  Kind kind_ = Kind::kCategorical;
  std::vector<Level> levels_;
  std::vector<std::vector<int>> ancestors_;
  std::vector<double> leaf_values_;
  std::unordered_map<double, int> leaf_by_value_;
};

// Numeric hierarchy with level l mapping v to
// [origin + w_l * floor((v - origin) / w_l), ... + w_l), top level "*".
Hierarchy build_interval_hierarchy(const std::string& attribute,
                                   const std::vector<double>& values,
                                   const std::vector<double>& level_widths,
                                   double origin);

// "[lo-hi)", "[lo-hi]" or "lo-hi"; signed decimals allowed.
std::optional<Interval> parse_interval_label(std::string_view label);

using HierarchyPtr = std::shared_ptr<const Hierarchy>;
// One hierarchy per QID, in table.qid_columns() order.
using Hierarchies = std::vector<HierarchyPtr>;

// Reads <dir>/<attribute>.csv for each QID, or builds the interval hierarchy
// declared in the schema.
Hierarchies load_hierarchies(const Table& table, const std::string& dir);

}  // namespace anonylat

#endif  // ANONYLAT_HIERARCHY_HPP_
