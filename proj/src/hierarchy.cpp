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

#include "hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

#include "error.hpp"
#include "util.hpp"

namespace anonylat {

bool Interval::contains(const Interval& o) const {
  if (o.lo < lo) return false;
  if (o.hi < hi) return true;
  if (o.hi > hi) return false;
  return !hi_open || o.hi_open;
}

std::optional<Interval> parse_interval_label(std::string_view label) {
  Interval iv;
  std::string_view s = label;
  bool bracketed = false;
  if (!s.empty() && (s.front() == '[' || s.front() == '(')) {
    if (s.front() == '(') return std::nullopt;
    bracketed = true;
    s.remove_prefix(1);
  }
  iv.hi_open = false;
  if (bracketed) {
    if (s.empty()) return std::nullopt;
    if (s.back() == ')') {
      iv.hi_open = true;
    } else if (s.back() != ']') {
      return std::nullopt;
    }
    s.remove_suffix(1);
  }
  // The separator is the first '-' that is neither a leading sign nor part of
  // an exponent.
  size_t sep = std::string_view::npos;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '-' && s[i - 1] != 'e' && s[i - 1] != 'E') {
      sep = i;
      break;
    }
  }
  if (sep == std::string_view::npos) return std::nullopt;
  auto lo = parse_number(s.substr(0, sep));
  auto hi = parse_number(s.substr(sep + 1));
  if (!lo || !hi || *hi < *lo) return std::nullopt;
  iv.lo = *lo;
  iv.hi = *hi;
  return iv;
}

Hierarchy Hierarchy::from_chains(
    const AttributeSchema& attribute,
    const std::vector<std::vector<std::string>>& chains) {
  const std::string& name = attribute.name;
  if (chains.empty()) fail(ErrorCode::kFormat, "hierarchy for " + name + " is empty");
  const size_t width = chains[0].size();
  for (size_t i = 0; i < chains.size(); ++i) {
    if (chains[i].size() != width) {
      fail(ErrorCode::kFormat, "hierarchy for " + name + ": line " +
                                   std::to_string(i + 1) + " has " +
                                   std::to_string(chains[i].size()) +
                                   " fields, expected " + std::to_string(width));
    }
    if (width < 2 || chains[i].back() != kRootLabel) {
      fail(ErrorCode::kFormat, "hierarchy for " + name + ": line " +
                                   std::to_string(i + 1) +
                                   " does not end in the root \"*\"");
    }
  }

  Hierarchy h;
  h.attribute_ = name;
  h.kind_ = attribute.kind;
  const int height = static_cast<int>(width) - 1;
  h.levels_.resize(width);
  h.ancestors_.resize(width);
  for (size_t i = 0; i < chains.size(); ++i) {
    const auto& chain = chains[i];
    std::vector<int> ids(width);
    for (int l = 0; l <= height; ++l) {
      auto& level = h.levels_[l];
      auto [it, inserted] =
          level.index.emplace(chain[l], static_cast<int>(level.labels.size()));
      if (inserted) {
        level.labels.push_back(chain[l]);
        level.parents.push_back(-1);
      } else if (l == 0) {
        fail(ErrorCode::kFormat, "hierarchy for " + name + ": duplicate leaf '" +
                                     chain[0] + "'");
      }
      ids[l] = it->second;
    }
    for (int l = 0; l < height; ++l) {
      int& p = h.levels_[l].parents[ids[l]];
      if (p >= 0 && p != ids[l + 1]) {
        fail(ErrorCode::kFormat, "hierarchy for " + name + ": '" + chain[l] +
                                     "' at level " + std::to_string(l) +
                                     " has two different parents");
      }
      p = ids[l + 1];
    }
    for (int l = 0; l <= height; ++l) h.ancestors_[l].push_back(ids[l]);
  }

  for (int l = 0; l <= height; ++l) {
    auto& level = h.levels_[l];
    level.leaf_counts.assign(level.labels.size(), 0);
    level.children.assign(level.labels.size(), {});
  }
  for (int leaf = 0; leaf < h.num_leaves(); ++leaf) {
    for (int l = 0; l <= height; ++l) ++h.levels_[l].leaf_counts[h.ancestors_[l][leaf]];
  }
  for (int l = 0; l < height; ++l) {
    for (int n = 0; n < h.num_nodes(l); ++n) {
      h.levels_[l + 1].children[h.levels_[l].parents[n]].push_back(n);
    }
  }

  if (h.kind_ == Kind::kNumerical) {
    auto& leaves = h.levels_[0];
    h.leaf_values_.resize(leaves.labels.size());
    leaves.intervals.resize(leaves.labels.size());
    for (size_t i = 0; i < leaves.labels.size(); ++i) {
      auto v = parse_number(leaves.labels[i]);
      if (!v) {
        fail(ErrorCode::kFormat, "hierarchy for " + name + ": leaf '" +
                                     leaves.labels[i] + "' is not a number");
      }
      if (!h.leaf_by_value_.emplace(*v, static_cast<int>(i)).second) {
        fail(ErrorCode::kFormat, "hierarchy for " + name +
                                     ": duplicate numeric leaf '" +
                                     leaves.labels[i] + "'");
      }
      h.leaf_values_[i] = *v;
      leaves.intervals[i] = Interval{*v, *v, false};
    }
    for (int l = 1; l <= height; ++l) {
      auto& level = h.levels_[l];
      level.intervals.resize(level.labels.size());
      for (size_t n = 0; n < level.labels.size(); ++n) {
        std::optional<Interval> parsed;
        if (level.labels[n] != kRootLabel) parsed = parse_interval_label(level.labels[n]);
        if (parsed) {
          level.intervals[n] = *parsed;
          continue;
        }
        // Hull of the children.
        Interval hull;
        bool first = true;
        for (int c : level.children[n]) {
          const Interval& ci = h.levels_[l - 1].intervals[c];
          if (first) {
            hull = ci;
            first = false;
            continue;
          }
          hull.lo = std::min(hull.lo, ci.lo);
          if (ci.hi > hull.hi) {
            hull.hi = ci.hi;
            hull.hi_open = ci.hi_open;
          } else if (ci.hi == hull.hi) {
            hull.hi_open = hull.hi_open && ci.hi_open;
          }
        }
        level.intervals[n] = hull;
      }
    }
    for (int l = 0; l < height; ++l) {
      for (int n = 0; n < h.num_nodes(l); ++n) {
        const Interval& child = h.levels_[l].intervals[n];
        const Interval& parent = h.levels_[l + 1].intervals[h.levels_[l].parents[n]];
        if (!parent.contains(child)) {
          fail(ErrorCode::kFormat,
               "hierarchy for " + name + ": interval of '" + h.levels_[l].labels[n] +
                   "' is not nested in its parent '" +
                   h.levels_[l + 1].labels[h.levels_[l].parents[n]] + "'");
        }
      }
    }
  }
  return h;
}

Hierarchy Hierarchy::parse(std::istream& in, const AttributeSchema& attribute) {
  std::vector<std::vector<std::string>> chains;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t pos = line.find(';', start);
      fields.push_back(line.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
    chains.push_back(std::move(fields));
  }
  return from_chains(attribute, chains);
}

Hierarchy Hierarchy::parse_file(const std::string& path,
                                const AttributeSchema& attribute) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open hierarchy file " + path);
  try {
    return parse(in, attribute);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::optional<int> Hierarchy::find_leaf(std::string_view text) const {
  if (kind_ == Kind::kNumerical) {
    auto v = parse_number(text);
    if (!v) return std::nullopt;
    return find_leaf(*v);
  }
  return find_node(0, text);
}

std::optional<int> Hierarchy::find_leaf(double value) const {
  auto it = leaf_by_value_.find(value);
  if (it == leaf_by_value_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Hierarchy::find_leaf(std::string_view text, double value) const {
  if (kind_ == Kind::kNumerical) return find_leaf(value);
  return find_node(0, text);
}

std::optional<int> Hierarchy::find_node(int level, std::string_view label) const {
  if (level < 0 || level > height()) return std::nullopt;
  const auto& index = levels_[level].index;
  auto it = index.find(std::string(label));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

void Hierarchy::check_level(int level) const {
  if (level < 0 || level > height()) {
    fail(ErrorCode::kBounds, "level " + std::to_string(level) +
                                 " is outside [0, " + std::to_string(height()) +
                                 "] for " + attribute_);
  }
}

GeneralisedValue Hierarchy::generalise_leaf(int leaf, int level) const {
  check_level(level);
  GeneralisedValue g;
  g.level = level;
  g.node = ancestors_[level][leaf];
  g.label = levels_[level].labels[g.node];
  if (kind_ == Kind::kNumerical) g.interval = levels_[level].intervals[g.node];
  return g;
}

GeneralisedValue Hierarchy::generalise(std::string_view text, int level) const {
  check_level(level);
  auto leaf = find_leaf(text);
  if (!leaf) {
    fail(ErrorCode::kCoverage, "value '" + std::string(text) +
                                   "' is not a leaf of the hierarchy for " +
                                   attribute_);
  }
  GeneralisedValue g = generalise_leaf(*leaf, level);
  if (level == 0) g.label = std::string(text);
  return g;
}

GeneralisedValue Hierarchy::generalise(double value, int level) const {
  check_level(level);
  auto leaf = find_leaf(value);
  if (!leaf) {
    fail(ErrorCode::kCoverage, "value " + format_number(value) +
                                   " is not a leaf of the hierarchy for " +
                                   attribute_);
  }
  return generalise_leaf(*leaf, level);
}

int Hierarchy::subtree_leaf_count(std::string_view label, int level) const {
  check_level(level);
  auto node = find_node(level, label);
  if (!node) {
    fail(ErrorCode::kCoverage, "'" + std::string(label) + "' is not a level-" +
                                   std::to_string(level) + " node of " + attribute_);
  }
  return leaf_count(level, *node);
}

std::pair<int, int> Hierarchy::lca(int level_a, int node_a, int level_b,
                                   int node_b) const {
  while (level_a < level_b) node_a = levels_[level_a++].parents[node_a];
  while (level_b < level_a) node_b = levels_[level_b++].parents[node_b];
  while (node_a != node_b) {
    node_a = levels_[level_a].parents[node_a];
    node_b = levels_[level_b].parents[node_b];
    ++level_a;
    ++level_b;
  }
  return {level_a, node_a};
}

Hierarchy build_interval_hierarchy(const std::string& attribute,
                                   const std::vector<double>& values,
                                   const std::vector<double>& level_widths,
                                   double origin) {
  if (values.empty()) {
    fail(ErrorCode::kInvalidArgument, "no values for interval hierarchy " + attribute);
  }
  for (size_t i = 0; i < level_widths.size(); ++i) {
    const double w = level_widths[i];
    if (!(w > 0) || !std::isfinite(w)) {
      fail(ErrorCode::kFormat, "interval widths for " + attribute + " must be positive");
    }
    if (i == 0) continue;
    const double ratio = w / level_widths[i - 1];
    const double rounded = std::round(ratio);
    if (rounded < 2 || std::fabs(ratio - rounded) > 1e-9 * ratio) {
      fail(ErrorCode::kFormat, "interval widths for " + attribute +
                                   " do not nest: " + format_number(w) +
                                   " is not a multiple of " +
                                   format_number(level_widths[i - 1]));
    }
  }
  std::vector<double> distinct(values);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::vector<std::string>> chains;
  chains.reserve(distinct.size());
  for (double v : distinct) {
    std::vector<std::string> chain{format_number(v)};
    for (double w : level_widths) {
      const double b = std::floor((v - origin) / w + 1e-9);
      const double lo = snap_number(origin + w * b);
      const double hi = snap_number(lo + w);
      chain.push_back("[" + format_number(lo) + "-" + format_number(hi) + ")");
    }
    chain.push_back(kRootLabel);
    chains.push_back(std::move(chain));
  }
  AttributeSchema schema{attribute, Kind::kNumerical, Role::kQid, std::nullopt};
  return Hierarchy::from_chains(schema, chains);
}

Hierarchies load_hierarchies(const Table& table, const std::string& dir) {
  Hierarchies out;
  for (size_t col : table.qid_columns()) {
    const auto& attr = table.attribute(col);
    if (attr.interval_hierarchy) {
      if (attr.kind != Kind::kNumerical) {
        fail(ErrorCode::kSchema, "interval hierarchy declared for categorical " + attr.name);
      }
      out.push_back(std::make_shared<Hierarchy>(build_interval_hierarchy(
          attr.name, table.numeric_column(col), attr.interval_hierarchy->widths,
          attr.interval_hierarchy->origin)));
    } else {
      out.push_back(std::make_shared<Hierarchy>(
          Hierarchy::parse_file(dir + "/" + attr.name + ".csv", attr)));
    }
  }
  return out;
}

}  // namespace anonylat
