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

// Brute-force reference implementations. They share no code with the
// grouping, search and metric paths they check.

#ifndef ANONYLAT_ORACLE_HPP_
#define ANONYLAT_ORACLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hierarchy.hpp"
#include "lattice.hpp"
#include "loss_metrics.hpp"
#include "partition.hpp"
#include "table.hpp"

namespace anonylat {

struct GroupCensus {
  std::vector<std::vector<std::string>> signatures;  // first-appearance order
  std::vector<int64_t> counts;
  int64_t min_group_size = 0;

  size_t num_groups() const { return signatures.size(); }
};

// Groups rows by exact signature comparison against every group seen so far.
GroupCensus brute_force_census(const std::vector<std::vector<std::string>>& rows);
// QID labels of a generalised table.
GroupCensus brute_force_census(const GeneralisedTable& table);
// QID cells of a plain (for example exported) table.
GroupCensus brute_force_census(const Table& table);

struct ExhaustiveResult {
  LatticeNode node;
  double loss = 0;
  int64_t suppressed = 0;
};

inline constexpr size_t kExhaustiveLatticeLimit = 10000;

// Checks every lattice node by applying it to the table. Ties go to the lower
// level sum, then the lexicographically smaller node. Throws a bounds error
// above kExhaustiveLatticeLimit nodes and an infeasible error if no node
// qualifies.
ExhaustiveResult exhaustive_ola(const Table& table, const Hierarchies& hierarchies,
                                const AlgoParams& params);

double naive_prec(const LatticeNode& node, const std::vector<int>& heights, int64_t n,
                  int64_t suppressed);
double naive_gweight(const LatticeNode& node, const std::vector<int>& heights,
                     const std::vector<double>& weights = {});
double naive_aecs(const std::vector<int64_t>& class_sizes);
double naive_dm(const std::vector<int64_t>& class_sizes, int64_t suppressed, int64_t n);
// Numeric domains come from the table, categorical leaf counts from scanning
// every leaf's ancestor chain.
double naive_ncp(const std::vector<GeneralisedValue>& signature, const Table& table,
                 const Hierarchies& hierarchies, const std::vector<double>& weights = {});

// prec and gweight need p.node.
LossValue naive_metric(const Partition& p, const Hierarchies& hierarchies, MetricKind kind,
                       const std::vector<double>& weights = {});

}  // namespace anonylat

#endif  // ANONYLAT_ORACLE_HPP_
