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

#ifndef ANONYLAT_ANONYMIZERS_HPP_
#define ANONYLAT_ANONYMIZERS_HPP_

#include <cstddef>

#include "lattice.hpp"
#include "loss_metrics.hpp"
#include "partition.hpp"

namespace anonylat {

// Rounds of the TDG farthest-point seed search.
inline constexpr int kTdgFarthestPointRounds = 6;

struct OlaStats {
  size_t lattice_size = 0;
  size_t direct_checks = 0;
  size_t candidates = 0;
};

// Full-domain search: median-height bisection with predictive tagging, then
// the metric-minimal k-anonymous node. Ties go to the lower level sum, then
// the lexicographically smaller node.
Partition ola_anonymise(const QidIndex& index, const AlgoParams& params,
                        OlaStats* stats = nullptr);

// Strict multidimensional partitioning. max_sup is ignored.
Partition mondrian_anonymise(const QidIndex& index, const AlgoParams& params);

// Top-down greedy bisection by NCP with undersized-class repair.
Partition tdg_anonymise(const QidIndex& index, const AlgoParams& params);

// Greedy clustering of a random record with its k-1 nearest records.
Partition cb_anonymise(const QidIndex& index, const AlgoParams& params);

Partition anonymise(const QidIndex& index, Algorithm algorithm,
                    const AlgoParams& params);

// Throws unless 1 <= k <= N and 0 <= max_sup < 1.
void check_params(const QidIndex& index, const AlgoParams& params);

// Classes with hull signatures, in canonical order.
Partition partition_from_groups(const NcpModel& model, Algorithm algorithm,
                                const AlgoParams& params,
                                std::vector<std::vector<size_t>> groups);

}  // namespace anonylat

#endif  // ANONYLAT_ANONYMIZERS_HPP_
