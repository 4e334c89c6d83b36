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
#include <limits>
#include <numeric>
#include <random>

#include "anonymizers.hpp"
#include "error.hpp"
#include "util.hpp"

namespace anonylat {

Partition cb_anonymise(const QidIndex& index, const AlgoParams& params) {
  check_params(index, params);
  const NcpModel model(index, params.weights);
  const size_t n = index.num_rows();
  const auto k = static_cast<size_t>(params.k);
  std::vector<std::vector<size_t>> clusters;

  if (k == 1) {
    // Every record is its own nearest cluster; no draw can change that.
    for (size_t r = 0; r < n; ++r) clusters.push_back({r});
    return partition_from_groups(model, Algorithm::kCb, params, std::move(clusters));
  }

  std::mt19937_64 rng(params.seed);
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<uint8_t> taken(n, 0);
  std::vector<std::pair<double, size_t>> cand;
  while (pool.size() >= k) {
    const size_t pick = pool[uniform_index(rng, pool.size())];
    cand.clear();
    for (size_t r : pool) {
      if (r != pick) cand.emplace_back(model.row_distance(pick, r), r);
    }
    std::nth_element(cand.begin(), cand.begin() + (k - 2), cand.end());
    std::vector<size_t> cluster{pick};
    taken[pick] = 1;
    for (size_t i = 0; i < k - 1; ++i) {
      cluster.push_back(cand[i].second);
      taken[cand[i].second] = 1;
    }
    clusters.push_back(std::move(cluster));
    pool.erase(std::remove_if(pool.begin(), pool.end(),
                              [&](size_t r) { return taken[r] != 0; }),
               pool.end());
  }

  std::vector<NcpModel::Summary> summaries;
  std::vector<double> costs;
  for (const auto& c : clusters) {
    summaries.push_back(model.summarise(c));
    costs.push_back(model.ncp(summaries.back()));
  }
  for (size_t r : pool) {
    size_t best = 0;
    double best_increase = std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < clusters.size(); ++c) {
      const double increase = model.ncp_with_row(summaries[c], r) - costs[c];
      if (increase < best_increase) {
        best_increase = increase;
        best = c;
      }
    }
    clusters[best].push_back(r);
    model.absorb(summaries[best], r);
    costs[best] = model.ncp(summaries[best]);
  }
  return partition_from_groups(model, Algorithm::kCb, params, std::move(clusters));
}

}  // namespace anonylat
