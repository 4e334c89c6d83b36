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
#include <numeric>
#include <set>
#include <unordered_map>

#include "anonymizers.hpp"
#include "error.hpp"
#include "loss_metrics.hpp"

namespace anonylat {

namespace {

class OlaSearch {
 public:
  OlaSearch(const QidIndex& index, const AlgoParams& params)
      : index_(index), params_(params), store_(Lattice(index.heights())) {}

  void run() {
    const Lattice& lat = store_.lattice();
    kmin(lat.bottom(), lat.top());
    // Nodes the bisection never reached are checked directly, bottom-up.
    std::vector<size_t> order(lat.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return level_sum(lat.node(a)) < level_sum(lat.node(b));
    });
    for (size_t i : order) {
      if (store_.tag_at(i) == Tag::kUntagged) check(lat.node(i));
    }
  }

  const TagStore& store() const { return store_; }
  size_t direct_checks() const { return direct_checks_; }

  NodeSummary summary(const LatticeNode& node) {
    const size_t idx = store_.lattice().index(node);
    auto it = summaries_.find(idx);
    if (it != summaries_.end()) return it->second;
    NodeSummary s = summarise(census(index_, node), index_.num_rows(), params_.k,
                              params_.max_sup);
    summaries_.emplace(idx, s);
    return s;
  }

 private:
  bool check(const LatticeNode& node) {
    ++direct_checks_;
    const bool ok = summary(node).satisfied;
    store_.tag_and_propagate(node, ok ? Tag::kKanon : Tag::kNotKanon);
    return ok;
  }

  Tag resolve(const LatticeNode& node) {
    Tag t = store_.tag(node);
    if (t == Tag::kUntagged) t = check(node) ? Tag::kKanon : Tag::kNotKanon;
    return t;
  }

  // Nodes n with lo <= n <= hi and level_sum(n) == target.
  static void nodes_at(const LatticeNode& lo, const LatticeNode& hi, int target,
                       std::vector<LatticeNode>& out) {
    LatticeNode cur = lo;
    int base = level_sum(lo);
    std::vector<int> slack_after(lo.size() + 1, 0);
    for (size_t i = lo.size(); i-- > 0;) {
      slack_after[i] = slack_after[i + 1] + (hi[i] - lo[i]);
    }
    auto rec = [&](auto&& self, size_t i, int remaining) -> void {
      if (i == lo.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
      }
      const int max_here = std::min(hi[i] - lo[i], remaining);
      for (int d = 0; d <= max_here; ++d) {
        if (remaining - d > slack_after[i + 1]) continue;
        cur[i] = lo[i] + d;
        self(self, i + 1, remaining - d);
      }
      cur[i] = lo[i];
    };
    rec(rec, 0, target - base);
  }

  void kmin(const LatticeNode& b, const LatticeNode& t) {
    const Lattice& lat = store_.lattice();
    if (!visited_.insert({lat.index(b), lat.index(t)}).second) return;
    const int db = level_sum(b);
    const int dt = level_sum(t);
    if (dt - db > 1) {
      std::vector<LatticeNode> mid;
      nodes_at(b, t, db + (dt - db) / 2, mid);
      for (const auto& n : mid) {
        if (resolve(n) == Tag::kKanon) {
          kmin(b, n);
        } else {
          kmin(n, t);
        }
      }
      return;
    }
    if (resolve(b) != Tag::kKanon && b != t) resolve(t);
  }

  const QidIndex& index_;
  const AlgoParams& params_;
  TagStore store_;
  std::unordered_map<size_t, NodeSummary> summaries_;
  std::set<std::pair<size_t, size_t>> visited_;
  size_t direct_checks_ = 0;
};

}  // namespace

Partition ola_anonymise(const QidIndex& index, const AlgoParams& params,
                        OlaStats* stats) {
  check_params(index, params);
  const size_t n = index.num_rows();
  OlaSearch search(index, params);
  search.run();
  const TagStore& store = search.store();
  const Lattice& lat = store.lattice();
  const std::vector<int> heights = lat.heights();

  // Without suppression every metric is monotone along upward paths and gweight
  // always is, so the optimum is k-minimal. Otherwise suppression can make a
  // higher node cheaper and all k-anonymous nodes are candidates.
  const bool monotone = params.metric == MetricKind::kGweight ||
                        suppression_limit(n, params.max_sup) == 0;
  std::vector<LatticeNode> candidates;
  if (monotone) {
    candidates = k_minimal_nodes(store);
  } else {
    for (size_t i = 0; i < lat.size(); ++i) {
      if (store.tag_at(i) == Tag::kKanon) candidates.push_back(lat.node(i));
    }
  }
  if (candidates.empty()) {
    fail(ErrorCode::kInfeasible, "no k-anonymous node in the lattice");
  }

  const LatticeNode* best = nullptr;
  double best_loss = 0;
  for (const auto& node : candidates) {
    double loss;
    if (params.metric == MetricKind::kGweight) {
      loss = metric_gweight(node, heights, params.weights).value;
    } else {
      NodeSummary s = search.summary(node);
      switch (params.metric) {
        case MetricKind::kPrec:
          loss = metric_prec(node, heights, static_cast<int64_t>(n), s.suppressed).value;
          break;
        case MetricKind::kAecs:
          loss = metric_aecs(static_cast<int64_t>(n) - s.suppressed, s.classes).value;
          break;
        default:
          loss = metric_dm(s.sum_squares, s.suppressed, static_cast<int64_t>(n)).value;
          break;
      }
    }
    bool better = best == nullptr || loss < best_loss;
    if (!better && loss == best_loss) {
      const int a = level_sum(node);
      const int b = level_sum(*best);
      better = a < b || (a == b && node < *best);
    }
    if (better) {
      best = &node;
      best_loss = loss;
    }
  }

  if (stats) {
    stats->lattice_size = lat.size();
    stats->direct_checks = search.direct_checks();
    stats->candidates = candidates.size();
  }

  const LatticeNode node = *best;
  NodeCensus c = census(index, node);
  Partition p;
  p.algorithm = Algorithm::kOla;
  p.k = params.k;
  p.max_sup = params.max_sup;
  p.metric = params.metric;
  p.seed = params.seed;
  p.num_rows = n;
  p.node = node;
  std::vector<int> class_of_group(c.group_sizes.size(), -1);
  for (size_t r = 0; r < n; ++r) {
    const int g = c.group_of_row[r];
    if (c.group_sizes[g] < params.k) {
      p.suppressed.push_back(r);
      continue;
    }
    if (class_of_group[g] < 0) {
      class_of_group[g] = static_cast<int>(p.classes.size());
      EquivalenceClass ec;
      for (size_t q = 0; q < index.num_qids(); ++q) {
        GeneralisedValue v = node[q] == 0
                                 ? index.original_value(r, q)
                                 : index.hierarchy(q).generalise_leaf(index.leaf(r, q), node[q]);
        ec.signature.push_back(std::move(v));
      }
      p.classes.push_back(std::move(ec));
    }
    p.classes[class_of_group[g]].members.push_back(r);
  }
  canonicalise(p);
  return p;
}

}  // namespace anonylat
