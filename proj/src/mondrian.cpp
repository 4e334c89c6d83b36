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


#include <algorithm>
#include <map>
#include <numeric>

#include "anonymizers.hpp"
#include "error.hpp"
#include "loss_metrics.hpp"

namespace anonylat {

namespace {

// A Mondrian region: the rows it holds, per-QID bounds (numeric) or current
// hierarchy node (categorical), and which QIDs may still be cut.
struct Region {
  std::vector<size_t> rows;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::pair<int, int>> node;  // (level, node)
};

class Mondrian {
 public:
  Mondrian(const QidIndex& index, int64_t k) : index_(index), k_(k) {}

  std::vector<std::vector<size_t>> run() {
    const size_t m = index_.num_qids();
    Region root;
    root.rows.resize(index_.num_rows());
    std::iota(root.rows.begin(), root.rows.end(), 0);
    root.lo.resize(m);
    root.hi.resize(m);
    root.node.resize(m);
    for (size_t q = 0; q < m; ++q) {
      if (index_.numerical(q)) {
        root.lo[q] = index_.domain(q).min;
        root.hi[q] = index_.domain(q).max;
      } else {
        root.node[q] = {index_.hierarchy(q).height(), 0};
      }
    }
    std::vector<Region> stack;
    stack.push_back(std::move(root));
    std::vector<std::vector<size_t>> finals;
    std::vector<Region> parts;
    while (!stack.empty()) {
      Region r = std::move(stack.back());
      stack.pop_back();
      if (!split(r, parts)) {
        finals.push_back(std::move(r.rows));
        continue;
      }
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) stack.push_back(std::move(*it));
    }
    return finals;
  }

 private:
  double width(const Region& r, size_t q) const {
    if (index_.numerical(q)) {
      const double range = index_.domain(q).range();
      return range == 0 ? 0.0 : (r.hi[q] - r.lo[q]) / range;
    }
    const Hierarchy& h = index_.hierarchy(q);
    return static_cast<double>(h.leaf_count(r.node[q].first, r.node[q].second)) /
           h.num_leaves();
  }

  // Tries the allowed QIDs widest first (lower index on ties) and applies the
  // first cut whose parts all hold at least k rows.
  bool split(Region& r, std::vector<Region>& out) {
    std::vector<uint8_t> allowed(index_.num_qids(), 1);
    for (size_t attempt = 0; attempt < allowed.size(); ++attempt) {
      size_t dim = allowed.size();
      double widest = -1;
      for (size_t q = 0; q < allowed.size(); ++q) {
        if (!allowed[q]) continue;
        const double w = width(r, q);
        if (w > widest) {
          widest = w;
          dim = q;
        }
      }
      const bool ok = index_.numerical(dim) ? numeric_cut(r, dim, out)
                                            : categorical_cut(r, dim, out);
      if (ok) return true;
      allowed[dim] = 0;
    }
    return false;
  }

  // Median cut: values up to the first value whose cumulative count reaches
  // half the rows go left. Attempting a cut tightens the region's bounds on
  // that QID to the observed values.
  bool numeric_cut(Region& r, size_t q, std::vector<Region>& out) const {
    std::vector<double> values;
    values.reserve(r.rows.size());
    for (size_t row : r.rows) values.push_back(index_.value(row, q));
    std::sort(values.begin(), values.end());
    r.lo[q] = values.front();
    r.hi[q] = values.back();
    const size_t middle = values.size() / 2;
    if (static_cast<int64_t>(middle) < k_ || values.front() == values.back()) return false;
    const double split = values[middle - 1];
    auto next = std::upper_bound(values.begin(), values.end(), split);
    if (next == values.end()) return false;
    const auto left = static_cast<int64_t>(next - values.begin());
    const auto right = static_cast<int64_t>(values.size()) - left;
    if (left < k_ || right < k_) return false;
    out.assign(2, Region{});
    out[0].lo = out[1].lo = r.lo;
    out[0].hi = out[1].hi = r.hi;
    out[0].node = out[1].node = r.node;
    out[0].hi[q] = split;
    out[1].lo[q] = *next;
    for (size_t row : r.rows) out[index_.value(row, q) <= split ? 0 : 1].rows.push_back(row);
    return true;
  }

  // Cut along the children of the region's current node; every non-empty
  // child group needs at least k rows.
  bool categorical_cut(const Region& r, size_t q, std::vector<Region>& out) const {
    const auto [level, node] = r.node[q];
    if (level == 0) return false;
    const Hierarchy& h = index_.hierarchy(q);
    const std::vector<int>& children = h.children(level, node);
    std::vector<std::vector<size_t>> groups(children.size());
    for (size_t row : r.rows) {
      const int child = h.ancestor(index_.leaf(row, q), level - 1);
      const auto pos = std::find(children.begin(), children.end(), child) - children.begin();
      groups[pos].push_back(row);
    }
    for (const auto& g : groups) {
      if (!g.empty() && static_cast<int64_t>(g.size()) < k_) return false;
    }
    out.clear();
    for (size_t c = 0; c < children.size(); ++c) {
      if (groups[c].empty()) continue;
      Region part;
      part.rows = std::move(groups[c]);
      part.lo = r.lo;
      part.hi = r.hi;
      part.node = r.node;
      part.node[q] = {level - 1, children[c]};
      out.push_back(std::move(part));
    }
    return true;
  }

  const QidIndex& index_;
  int64_t k_;
};

}  // namespace

Partition mondrian_anonymise(const QidIndex& index, const AlgoParams& params) {
  check_params(index, params);
  const NcpModel model(index);
  if (params.k == 1) {
    // Every group of identical QID rows is already 1-anonymous; median cuts
    // cannot always separate them.
    std::map<std::vector<int>, std::vector<size_t>> groups;
    for (size_t r = 0; r < index.num_rows(); ++r) {
      std::vector<int> key;
      for (size_t q = 0; q < index.num_qids(); ++q) key.push_back(index.leaf(r, q));
      groups[key].push_back(r);
    }
    std::vector<std::vector<size_t>> rows;
    for (auto& [key, members] : groups) rows.push_back(std::move(members));
    return partition_from_groups(model, Algorithm::kMondrian, params, std::move(rows));
  }
  Mondrian mondrian(index, params.k);
  return partition_from_groups(model, Algorithm::kMondrian, params, mondrian.run());
}

}  // namespace anonylat
