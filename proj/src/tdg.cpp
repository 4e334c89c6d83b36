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

namespace {

struct Group {
  std::vector<size_t> members;  // ascending
  NcpModel::Summary summary;
  double penalty = 0;  // |members| * NCP
};

class Tdg {
 public:
  Tdg(const NcpModel& model, const AlgoParams& params)
      : model_(model), k_(static_cast<size_t>(params.k)), rng_(params.seed) {}

  std::vector<std::vector<size_t>> run() {
    std::vector<size_t> all(model_.index().num_rows());
    std::iota(all.begin(), all.end(), 0);
    bisect_all(std::move(all));
    repair();
    std::vector<std::vector<size_t>> out;
    for (auto& g : groups_) out.push_back(std::move(g.members));
    return out;
  }

 private:
  // Row of `rows` farthest from `a` by pairwise NCP; first one on ties.
  size_t farthest(size_t a, const std::vector<size_t>& rows) const {
    size_t best = rows[0] == a ? rows[1] : rows[0];
    double best_d = -1;
    for (size_t r : rows) {
      if (r == a) continue;
      const double d = model_.row_distance(a, r);
      if (d > best_d) {
        best_d = d;
        best = r;
      }
    }
    return best;
  }

  void bisect_all(std::vector<size_t> all) {
    std::vector<std::vector<size_t>> stack{std::move(all)};
    while (!stack.empty()) {
      std::vector<size_t> rows = std::move(stack.back());
      stack.pop_back();
      if (rows.size() < 2 * k_) {
        add_group(std::move(rows));
        continue;
      }
      size_t a = rows[uniform_index(rng_, rows.size())];
      size_t b = farthest(a, rows);
      for (int round = 1; round < kTdgFarthestPointRounds; ++round) {
        const size_t c = farthest(b, rows);
        if (c == a) break;
        a = b;
        b = c;
      }
      std::vector<size_t> u;
      std::vector<size_t> v;
      for (size_t r : rows) {
        if (r == a) {
          u.push_back(r);
        } else if (r == b) {
          v.push_back(r);
        } else if (model_.row_distance(b, r) < model_.row_distance(a, r)) {
          v.push_back(r);
        } else {
          u.push_back(r);
        }
      }
      stack.push_back(std::move(v));
      stack.push_back(std::move(u));
    }
  }

  void add_group(std::vector<size_t> rows) {
    Group g;
    g.summary = model_.summarise(rows);
    g.penalty = static_cast<double>(rows.size()) * model_.ncp(g.summary);
    g.members = std::move(rows);
    groups_.push_back(std::move(g));
  }

  void refresh(Group& g) const {
    std::sort(g.members.begin(), g.members.end());
    g.summary = model_.summarise(g.members);
    g.penalty = static_cast<double>(g.members.size()) * model_.ncp(g.summary);
  }

  // Undersized classes either take k-|G| rows from a class that can spare
  // them or merge into the class with the lowest merged NCP, whichever adds
  // less total penalty.
  void repair() {
    while (true) {
      size_t target = groups_.size();
      for (size_t i = 0; i < groups_.size(); ++i) {
        if (groups_[i].members.size() >= k_) continue;
        if (target == groups_.size() ||
            groups_[i].members.front() < groups_[target].members.front()) {
          target = i;
        }
      }
      if (target == groups_.size()) return;
      if (groups_.size() == 1) {
        fail(ErrorCode::kInternal, "undersized class with no other class to repair it");
      }
      const Group& g = groups_[target];
      const size_t need = k_ - g.members.size();
      const size_t min_donor = 2 * k_ - g.members.size();

      double best_steal = std::numeric_limits<double>::infinity();
      size_t steal_from = groups_.size();
      std::vector<size_t> steal_rows;
      std::vector<std::pair<double, size_t>> cand;
      for (size_t d = 0; d < groups_.size(); ++d) {
        if (d == target || groups_[d].members.size() < min_donor) continue;
        const Group& donor = groups_[d];
        cand.clear();
        for (size_t r : donor.members) {
          cand.emplace_back(model_.ncp_with_row(g.summary, r), r);
        }
        std::partial_sort(cand.begin(), cand.begin() + need, cand.end());
        NcpModel::Summary grown = g.summary;
        std::vector<size_t> taken;
        for (size_t i = 0; i < need; ++i) {
          model_.absorb(grown, cand[i].second);
          taken.push_back(cand[i].second);
        }
        std::sort(taken.begin(), taken.end());
        std::vector<size_t> rest;
        std::set_difference(donor.members.begin(), donor.members.end(), taken.begin(),
                            taken.end(), std::back_inserter(rest));
        const double delta =
            static_cast<double>(k_) * model_.ncp(grown) +
            static_cast<double>(rest.size()) * model_.ncp(model_.summarise(rest)) -
            g.penalty - donor.penalty;
        if (delta < best_steal) {
          best_steal = delta;
          steal_from = d;
          steal_rows = std::move(taken);
        }
      }

      double best_merge = std::numeric_limits<double>::infinity();
      size_t merge_into = groups_.size();
      double nearest = std::numeric_limits<double>::infinity();
      for (size_t c = 0; c < groups_.size(); ++c) {
        if (c == target) continue;
        const double merged = model_.ncp_merged(g.summary, groups_[c].summary);
        if (merged < nearest) {
          nearest = merged;
          merge_into = c;
        }
      }
      const Group& other = groups_[merge_into];
      best_merge = static_cast<double>(g.members.size() + other.members.size()) * nearest -
                   g.penalty - other.penalty;

      if (steal_from < groups_.size() && best_steal <= best_merge) {
        Group& donor = groups_[steal_from];
        Group& dst = groups_[target];
        std::vector<size_t> rest;
        std::set_difference(donor.members.begin(), donor.members.end(),
                            steal_rows.begin(), steal_rows.end(), std::back_inserter(rest));
        donor.members = std::move(rest);
        dst.members.insert(dst.members.end(), steal_rows.begin(), steal_rows.end());
        refresh(donor);
        refresh(dst);
      } else {
        Group& dst = groups_[merge_into];
        dst.members.insert(dst.members.end(), groups_[target].members.begin(),
                           groups_[target].members.end());
        refresh(dst);
        groups_.erase(groups_.begin() + static_cast<std::ptrdiff_t>(target));
      }
    }
  }

  const NcpModel& model_;
  size_t k_;
  std::mt19937_64 rng_;
  std::vector<Group> groups_;
};

}  // namespace

Partition tdg_anonymise(const QidIndex& index, const AlgoParams& params) {
  check_params(index, params);
  const NcpModel model(index, params.weights);
  Tdg tdg(model, params);
  Partition p = partition_from_groups(model, Algorithm::kTdg, params, tdg.run());
  p.farthest_point_rounds = kTdgFarthestPointRounds;
  return p;
}

}  // namespace anonylat
