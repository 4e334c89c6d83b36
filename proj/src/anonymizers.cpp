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

#include "anonymizers.hpp"

#include <algorithm>

#include "error.hpp"

namespace anonylat {

void check_params(const QidIndex& index, const AlgoParams& params) {
  if (params.k < 1) fail(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (!(params.max_sup >= 0 && params.max_sup < 1)) {
    fail(ErrorCode::kInvalidArgument, "max_sup must lie in [0, 1)");
  }
  if (params.k > static_cast<int64_t>(index.num_rows())) {
    fail(ErrorCode::kInfeasible, "k=" + std::to_string(params.k) +
                                     " exceeds the number of rows (" +
                                     std::to_string(index.num_rows()) + ")");
  }
  if (!params.weights.empty()) {
    if (params.weights.size() != index.num_qids()) {
      fail(ErrorCode::kInvalidArgument, "one weight per QID expected");
    }
    for (double w : params.weights) {
      if (!(w > 0)) fail(ErrorCode::kInvalidArgument, "weights must be positive");
    }
  }
}

Partition partition_from_groups(const NcpModel& model, Algorithm algorithm,
                                const AlgoParams& params,
                                std::vector<std::vector<size_t>> groups) {
  Partition p;
  p.algorithm = algorithm;
  p.k = params.k;
  p.max_sup = 0;
  p.metric = params.metric;
  p.seed = params.seed;
  p.num_rows = model.index().num_rows();
  for (auto& rows : groups) {
    if (rows.empty()) continue;
    std::sort(rows.begin(), rows.end());
    EquivalenceClass ec;
    ec.signature = model.signature(model.summarise(rows));
    ec.members = std::move(rows);
    p.classes.push_back(std::move(ec));
  }
  canonicalise(p);
  return p;
}

Partition anonymise(const QidIndex& index, Algorithm algorithm,
                    const AlgoParams& params) {
  switch (algorithm) {
    case Algorithm::kOla: return ola_anonymise(index, params);
    case Algorithm::kMondrian: return mondrian_anonymise(index, params);
    case Algorithm::kTdg: return tdg_anonymise(index, params);
    case Algorithm::kCb: return cb_anonymise(index, params);
  }
  fail(ErrorCode::kInvalidArgument, "unknown algorithm");
}

}  // namespace anonylat
