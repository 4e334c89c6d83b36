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

#include "lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "error.hpp"
#include "util.hpp"

namespace anonylat {

std::vector<std::string> GeneralisedTable::render_row(size_t row) const {
  std::vector<std::string> out = source->row(row);
  const auto& qids = source->qid_columns();
  for (size_t q = 0; q < qids.size(); ++q) out[qids[q]] = qid_values[row][q].label;
  return out;
}

Table GeneralisedTable::render() const {
  std::vector<AttributeSchema> schema = source->schema();
  // Generalised numeric cells are labels, not numbers.
  for (size_t col : source->qid_columns()) schema[col].kind = Kind::kCategorical;
  std::vector<std::vector<std::string>> rows;
  rows.reserve(num_rows());
  for (size_t r = 0; r < num_rows(); ++r) rows.push_back(render_row(r));
  return Table(std::move(schema), std::move(rows));
}

QidIndex::QidIndex(const Table& table, Hierarchies hierarchies)
    : table_(&table), hierarchies_(std::move(hierarchies)) {
  const auto& qids = table.qid_columns();
  if (hierarchies_.size() != qids.size()) {
    fail(ErrorCode::kInvalidArgument,
         "expected " + std::to_string(qids.size()) + " hierarchies, got " +
             std::to_string(hierarchies_.size()));
  }
  leaves_.resize(qids.size());
  values_.resize(qids.size());
  domains_.resize(qids.size());
  for (size_t q = 0; q < qids.size(); ++q) {
    const size_t col = qids[q];
    if (!hierarchies_[q] || hierarchies_[q]->attribute() != table.attribute(col).name) {
      fail(ErrorCode::kInvalidArgument,
           "hierarchy " + std::to_string(q) + " does not belong to " +
               table.attribute(col).name);
    }
    const Hierarchy& h = *hierarchies_[q];
    const bool numeric = table.attribute(col).kind == Kind::kNumerical;
    if (numeric != (h.kind() == Kind::kNumerical)) {
      fail(ErrorCode::kSchema, "hierarchy kind does not match attribute " + h.attribute());
    }
    auto& leaves = leaves_[q];
    leaves.resize(table.num_rows());
    std::unordered_map<std::string, int> cache;
    for (size_t r = 0; r < table.num_rows(); ++r) {
      std::optional<int> leaf;
      if (numeric) {
        leaf = h.find_leaf(table.number(r, col));
      } else {
        auto it = cache.find(table.cell(r, col));
        if (it != cache.end()) {
          leaf = it->second;
        } else {
          leaf = h.find_leaf(table.cell(r, col));
          if (leaf) cache.emplace(table.cell(r, col), *leaf);
        }
      }
      if (!leaf) {
        fail(ErrorCode::kCoverage, "row " + std::to_string(r) + ": value '" +
                                       table.cell(r, col) +
                                       "' is missing from the hierarchy for " +
                                       h.attribute());
      }
      leaves[r] = *leaf;
    }
    if (numeric) {
      values_[q] = table.numeric_column(col);
      auto [mn, mx] = std::minmax_element(values_[q].begin(), values_[q].end());
      domains_[q] = Domain{*mn, *mx};
    }
  }
}

std::vector<int> QidIndex::heights() const {
  std::vector<int> h;
  for (const auto& p : hierarchies_) h.push_back(p->height());
  return h;
}

GeneralisedValue QidIndex::original_value(size_t row, size_t q) const {
  GeneralisedValue g = hierarchy(q).generalise_leaf(leaves_[q][row], 0);
  g.label = table_->cell(row, table_->qid_columns()[q]);
  return g;
}

Lattice::Lattice(std::vector<int> heights) : heights_(std::move(heights)) {
  strides_.resize(heights_.size());
  for (size_t i = heights_.size(); i-- > 0;) {
    if (heights_[i] < 0) fail(ErrorCode::kInvalidArgument, "negative height");
    strides_[i] = size_;
    size_ *= static_cast<size_t>(heights_[i]) + 1;
  }
}

size_t Lattice::index(const LatticeNode& node) const {
  if (!contains(node)) fail(ErrorCode::kBounds, "lattice node out of bounds");
  size_t idx = 0;
  for (size_t i = 0; i < node.size(); ++i) idx += strides_[i] * node[i];
  return idx;
}

LatticeNode Lattice::node(size_t index) const {
  if (index >= size_) fail(ErrorCode::kBounds, "lattice index out of range");
  LatticeNode n(heights_.size());
  for (size_t i = 0; i < heights_.size(); ++i) {
    n[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return n;
}

bool Lattice::contains(const LatticeNode& node) const {
  if (node.size() != heights_.size()) return false;
  for (size_t i = 0; i < node.size(); ++i) {
    if (node[i] < 0 || node[i] > heights_[i]) return false;
  }
  return true;
}

int Lattice::total_height() const {
  return std::accumulate(heights_.begin(), heights_.end(), 0);
}

int level_sum(const LatticeNode& node) {
  return std::accumulate(node.begin(), node.end(), 0);
}

bool dominated_by(const LatticeNode& a, const LatticeNode& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

TagStore::TagStore(Lattice lattice)
    : lattice_(std::move(lattice)),
      tags_(lattice_.size(), Tag::kUntagged),
      untagged_(lattice_.size()) {}

void TagStore::set(size_t index, Tag tag) {
  Tag& t = tags_[index];
  if (t == tag) return;
  if (t != Tag::kUntagged) {
    fail(ErrorCode::kInternal, "conflicting retag of lattice node " +
                                   std::to_string(index));
  }
  t = tag;
  --untagged_;
}

void TagStore::tag_and_propagate(const LatticeNode& node, Tag tag) {
  if (tag == Tag::kUntagged) fail(ErrorCode::kInvalidArgument, "cannot tag as untagged");
  const auto& heights = lattice_.heights();
  LatticeNode lo = node;
  LatticeNode hi = node;
  if (tag == Tag::kKanon) {
    hi = heights;
  } else {
    std::fill(lo.begin(), lo.end(), 0);
  }
  lattice_.index(node);  // bounds check
  LatticeNode cur = lo;
  while (true) {
    set(lattice_.index(cur), tag);
    size_t i = cur.size();
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      if (i == 0) return;
    }
    if (cur.empty()) return;
  }
}

std::vector<LatticeNode> k_minimal_nodes(const TagStore& store) {
  if (store.untagged() > 0) {
    fail(ErrorCode::kInternal, std::to_string(store.untagged()) +
                                   " lattice nodes are still untagged");
  }
  const Lattice& lat = store.lattice();
  // below[i]: some kanon node lies strictly below node i. Indices increase
  // along every coordinate, so predecessors are always visited first.
  std::vector<uint8_t> below(lat.size(), 0);
  std::vector<LatticeNode> out;
  for (size_t i = 0; i < lat.size(); ++i) {
    LatticeNode n = lat.node(i);
    bool any = false;
    for (size_t d = 0; d < n.size() && !any; ++d) {
      if (n[d] == 0) continue;
      --n[d];
      const size_t p = lat.index(n);
      any = below[p] || store.tag_at(p) == Tag::kKanon;
      ++n[d];
    }
    below[i] = any;
    if (!any && store.tag_at(i) == Tag::kKanon) out.push_back(n);
  }
  return out;
}

GeneralisedTable apply_node(const Table& table, const LatticeNode& node,
                            const Hierarchies& hierarchies) {
  const auto& qids = table.qid_columns();
  if (node.size() != qids.size() || hierarchies.size() != qids.size()) {
    fail(ErrorCode::kInvalidArgument, "node arity does not match the QIDs");
  }
  GeneralisedTable g;
  g.source = &table;
  g.qid_values.resize(table.num_rows());
  for (size_t r = 0; r < table.num_rows(); ++r) {
    auto& vals = g.qid_values[r];
    vals.reserve(qids.size());
    for (size_t q = 0; q < qids.size(); ++q) {
      const Hierarchy& h = *hierarchies[q];
      const size_t col = qids[q];
      if (h.kind() == Kind::kNumerical) {
        GeneralisedValue v = h.generalise(table.number(r, col), node[q]);
        if (node[q] == 0) v.label = table.cell(r, col);
        vals.push_back(std::move(v));
      } else {
        vals.push_back(h.generalise(table.cell(r, col), node[q]));
      }
    }
  }
  return g;
}

int64_t suppression_limit(size_t n, double max_sup) {
  return static_cast<int64_t>(std::floor(max_sup * static_cast<double>(n) + 1e-9));
}

KCheck check_k_anonymous(const GeneralisedTable& table, int64_t k, double max_sup) {
  if (k < 1) fail(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (!(max_sup >= 0 && max_sup < 1)) {
    fail(ErrorCode::kInvalidArgument, "max_sup must lie in [0, 1)");
  }
  std::map<std::vector<std::string>, std::vector<size_t>> groups;
  for (size_t r = 0; r < table.num_rows(); ++r) {
    std::vector<std::string> sig;
    for (const auto& v : table.qid_values[r]) sig.push_back(v.label);
    groups[sig].push_back(r);
  }
  KCheck out;
  for (const auto& [sig, rows] : groups) {
    if (static_cast<int64_t>(rows.size()) < k) {
      out.suppressed.insert(out.suppressed.end(), rows.begin(), rows.end());
    }
  }
  std::sort(out.suppressed.begin(), out.suppressed.end());
  out.satisfied = static_cast<int64_t>(out.suppressed.size()) <=
                  suppression_limit(table.num_rows(), max_sup);
  if (!out.satisfied) out.suppressed.clear();
  return out;
}

namespace {

// Renumbers keys densely in order of first appearance.
uint64_t densify(std::vector<uint64_t>& keys) {
  std::unordered_map<uint64_t, uint64_t> ids;
  ids.reserve(keys.size());
  for (auto& k : keys) {
    auto [it, inserted] = ids.emplace(k, ids.size());
    k = it->second;
  }
  return ids.size();
}

}  // namespace

NodeCensus census(const QidIndex& index, const LatticeNode& node) {
  const size_t n = index.num_rows();
  if (node.size() != index.num_qids()) {
    fail(ErrorCode::kInvalidArgument, "node arity does not match the QIDs");
  }
  std::vector<uint64_t> keys(n, 0);
  uint64_t radix_product = 1;
  for (size_t q = 0; q < index.num_qids(); ++q) {
    const Hierarchy& h = index.hierarchy(q);
    if (node[q] < 0 || node[q] > h.height()) {
      fail(ErrorCode::kBounds, "lattice node out of bounds");
    }
    const uint64_t radix = static_cast<uint64_t>(h.num_nodes(node[q]));
    if (radix == 1) continue;
    if (radix_product > std::numeric_limits<uint64_t>::max() / radix) {
      radix_product = densify(keys);
    }
    const auto& anc = h.ancestors_at(node[q]);
    const auto& leaves = index.leaves(q);
    for (size_t r = 0; r < n; ++r) keys[r] = keys[r] * radix + anc[leaves[r]];
    radix_product *= radix;
  }
  const uint64_t groups = densify(keys);
  NodeCensus c;
  c.group_of_row.resize(n);
  c.group_sizes.assign(groups, 0);
  for (size_t r = 0; r < n; ++r) {
    c.group_of_row[r] = static_cast<int>(keys[r]);
    ++c.group_sizes[keys[r]];
  }
  return c;
}

NodeSummary summarise(const NodeCensus& c, size_t n, int64_t k, double max_sup) {
  NodeSummary s;
  for (int64_t size : c.group_sizes) {
    if (size < k) {
      s.suppressed += size;
    } else {
      ++s.classes;
      s.sum_squares += size * size;
    }
  }
  s.satisfied = s.suppressed <= suppression_limit(n, max_sup);
  return s;
}

}  // namespace anonylat
