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

#ifndef ANONYLAT_LATTICE_HPP_
#define ANONYLAT_LATTICE_HPP_

#include <cstdint>
#include <vector>

#include "hierarchy.hpp"
#include "table.hpp"

namespace anonylat {

// Table whose QID cells have been generalised. Non-QID cells are read from
// the source table, which must outlive this object.
struct GeneralisedTable {
  const Table* source = nullptr;
  // qid_values[row][q] for q indexing source->qid_columns().
  std::vector<std::vector<GeneralisedValue>> qid_values;

  size_t num_rows() const { return qid_values.size(); }
  // Text rendering of one row in the source column order.
  std::vector<std::string> render_row(size_t row) const;
  Table render() const;
};

using LatticeNode = std::vector<int>;

struct Domain {
  double min = 0;
  double max = 0;
  double range() const { return max - min; }
};

// Per-row leaf codes for every QID, resolved once against the hierarchies.
class QidIndex {
 public:
  // Throws a coverage error naming the first value missing from a hierarchy.
  QidIndex(const Table& table, Hierarchies hierarchies);

  const Table& table() const { return *table_; }
  const Hierarchies& hierarchies() const { return hierarchies_; }
  const Hierarchy& hierarchy(size_t q) const { return *hierarchies_[q]; }
  size_t num_rows() const { return table_->num_rows(); }
  size_t num_qids() const { return hierarchies_.size(); }
  int leaf(size_t row, size_t q) const { return leaves_[q][row]; }
  const std::vector<int>& leaves(size_t q) const { return leaves_[q]; }
  // Numerical QIDs only.
  double value(size_t row, size_t q) const { return values_[q][row]; }
  bool numerical(size_t q) const { return hierarchy(q).kind() == Kind::kNumerical; }
  // Observed range of a numerical QID over the full table.
  const Domain& domain(size_t q) const { return domains_[q]; }
  const std::vector<Domain>& domains() const { return domains_; }
  std::vector<int> heights() const;

  GeneralisedValue original_value(size_t row, size_t q) const;

 private:
  const Table* table_;
  Hierarchies hierarchies_;
  std::vector<std::vector<int>> leaves_;
  std::vector<std::vector<double>> values_;
  std::vector<Domain> domains_;
};

class Lattice {
 public:
  explicit Lattice(std::vector<int> heights);

  const std::vector<int>& heights() const { return heights_; }
  size_t size() const { return size_; }
  size_t index(const LatticeNode& node) const;
  LatticeNode node(size_t index) const;
  bool contains(const LatticeNode& node) const;
  LatticeNode bottom() const { return LatticeNode(heights_.size(), 0); }
  LatticeNode top() const { return heights_; }
  int total_height() const;

 private:
  std::vector<int> heights_;
  std::vector<size_t> strides_;
  size_t size_ = 1;
};

int level_sum(const LatticeNode& node);
// Componentwise a <= b.
bool dominated_by(const LatticeNode& a, const LatticeNode& b);

enum class Tag : uint8_t { kUntagged = 0, kKanon, kNotKanon };

class TagStore {
 public:
  explicit TagStore(Lattice lattice);

  const Lattice& lattice() const { return lattice_; }
  Tag tag(const LatticeNode& node) const { return tags_[lattice_.index(node)]; }
  Tag tag_at(size_t index) const { return tags_[index]; }
  size_t untagged() const { return untagged_; }
  // kKanon spreads to every node >= `node`, kNotKanon to every node <=
  // `node`. Retagging a node with a different tag is an internal error.
  void tag_and_propagate(const LatticeNode& node, Tag tag);

 private:
  void set(size_t index, Tag tag);

  Lattice lattice_;
  std::vector<Tag> tags_;
  size_t untagged_;
};

// Kanon nodes with no componentwise strictly smaller kanon node. Throws if any
// node is still untagged.
std::vector<LatticeNode> k_minimal_nodes(const TagStore& store);

GeneralisedTable apply_node(const Table& table, const LatticeNode& node,
                            const Hierarchies& hierarchies);

struct KCheck {
  bool satisfied = false;
  std::vector<size_t> suppressed;
};

int64_t suppression_limit(size_t n, double max_sup);

// Groups rows by QID label signature; rows in groups smaller than k are
// suppression candidates.
KCheck check_k_anonymous(const GeneralisedTable& table, int64_t k, double max_sup);

// Equivalence classes induced by a node: group id per row (numbered by first
// appearance) and group sizes.
struct NodeCensus {
  std::vector<int> group_of_row;
  std::vector<int64_t> group_sizes;
};
NodeCensus census(const QidIndex& index, const LatticeNode& node);

// Aggregate view of a node under (k, max_sup).
struct NodeSummary {
  bool satisfied = false;
  int64_t suppressed = 0;  // rows in groups smaller than k
  int64_t classes = 0;     // groups of size >= k
  int64_t sum_squares = 0; // sum of squared sizes of groups >= k
};
NodeSummary summarise(const NodeCensus& census, size_t n, int64_t k, double max_sup);

}  // namespace anonylat

#endif  // ANONYLAT_LATTICE_HPP_
