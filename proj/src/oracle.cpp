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


#include "oracle.hpp"

#include <cmath>
#include <map>

#include "error.hpp"

namespace anonylat {

GroupCensus brute_force_census(const std::vector<std::vector<std::string>>& rows) {
  GroupCensus c;
  for (const auto& row : rows) {
    size_t g = 0;
    while (g < c.signatures.size() && c.signatures[g] != row) ++g;
    if (g == c.signatures.size()) {
      c.signatures.push_back(row);
      c.counts.push_back(0);
    }
    ++c.counts[g];
  }
  for (size_t g = 0; g < c.counts.size(); ++g) {
    if (g == 0 || c.counts[g] < c.min_group_size) c.min_group_size = c.counts[g];
  }
  return c;
}

GroupCensus brute_force_census(const GeneralisedTable& table) {
  std::vector<std::vector<std::string>> rows(table.num_rows());
  for (size_t r = 0; r < rows.size(); ++r) {
    for (const auto& v : table.qid_values[r]) rows[r].push_back(v.label);
  }
  return brute_force_census(rows);
}

GroupCensus brute_force_census(const Table& table) {
  std::vector<std::vector<std::string>> rows(table.num_rows());
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c : table.qid_columns()) rows[r].push_back(table.cell(r, c));
  }
  return brute_force_census(rows);
}

namespace {

using u128 = unsigned __int128;

// Non-negative fraction kept in lowest terms after every operation.
struct Fraction {
  u128 num = 0;
  u128 den = 1;

  static u128 gcd(u128 a, u128 b) { return b == 0 ? a : gcd(b, a % b); }

  void normalise() {
    const u128 g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Fraction& add(u128 n, u128 d) {
    num = num * d + n * den;
    den *= d;
    normalise();
    return *this;
  }
  double value() const {
    Fraction f = *this;
    f.normalise();
    return static_cast<double>(f.num) / static_cast<double>(f.den);
  }
};

bool whole_numbers(const std::vector<double>& w) {
  for (double x : w) {
    if (!(x >= 0 && x < 9.0e15 && std::floor(x) == x)) return false;
  }
  return true;
}

}  // namespace

double naive_prec(const LatticeNode& node, const std::vector<int>& heights, int64_t n,
                  int64_t suppressed) {
  Fraction levels;
  u128 m = 0;
  for (size_t i = 0; i < node.size(); ++i) {
    if (heights[i] == 0) continue;
    ++m;
    levels.add(static_cast<u128>(node[i]), static_cast<u128>(heights[i]));
  }
  if (m == 0) return 0;
  Fraction total;
  total.num = static_cast<u128>(n - suppressed) * levels.num +
              static_cast<u128>(suppressed) * m * levels.den;
  total.den = static_cast<u128>(n) * m * levels.den;
  return total.value();
}

double naive_gweight(const LatticeNode& node, const std::vector<int>& heights,
                     const std::vector<double>& weights) {
  if (!whole_numbers(weights)) {
    double sum = 0;
    for (size_t i = 0; i < node.size(); ++i) {
      if (heights[i] != 0) sum += weights[i] * node[i] / heights[i];
    }
    return sum;
  }
  Fraction f;
  for (size_t i = 0; i < node.size(); ++i) {
    if (heights[i] == 0) continue;
    const u128 w = weights.empty() ? 1 : static_cast<u128>(weights[i]);
    f.add(w * static_cast<u128>(node[i]), static_cast<u128>(heights[i]));
  }
  return f.value();
}

double naive_aecs(const std::vector<int64_t>& class_sizes) {
  if (class_sizes.empty()) fail(ErrorCode::kInvalidArgument, "no classes");
  Fraction f;
  for (int64_t s : class_sizes) f.num += static_cast<u128>(s);
  f.den = class_sizes.size();
  return f.value();
}

double naive_dm(const std::vector<int64_t>& class_sizes, int64_t suppressed, int64_t n) {
  u128 total = static_cast<u128>(suppressed) * static_cast<u128>(n);
  for (int64_t s : class_sizes) total += static_cast<u128>(s) * static_cast<u128>(s);
  return static_cast<double>(total);
}

double naive_ncp(const std::vector<GeneralisedValue>& signature, const Table& table,
                 const Hierarchies& hierarchies, const std::vector<double>& weights) {
  const auto& qids = table.qid_columns();
  double sum = 0;
  for (size_t q = 0; q < signature.size(); ++q) {
    const Hierarchy& h = *hierarchies[q];
    const GeneralisedValue& g = signature[q];
    double term = 0;
    if (table.attribute(qids[q]).kind == Kind::kNumerical) {
      double lo = table.number(0, qids[q]);
      double hi = lo;
      for (size_t r = 1; r < table.num_rows(); ++r) {
        lo = std::min(lo, table.number(r, qids[q]));
        hi = std::max(hi, table.number(r, qids[q]));
      }
      const double range = hi - lo;
      if (range == 0) {
        term = 0;
      } else if (g.label == kRootLabel) {
        term = 1;
      } else {
        term = (g.interval->hi - g.interval->lo) / range;
      }
    } else {
      int covered = 0;
      for (int leaf = 0; leaf < h.num_leaves(); ++leaf) {
        for (int l = 0; l <= h.height(); ++l) {
          if (h.label(l, h.ancestor(leaf, l)) == g.label) {
            ++covered;
            break;
          }
        }
      }
      term = covered <= 1 ? 0.0
                          : static_cast<double>(covered) / static_cast<double>(h.num_leaves());
    }
    sum += (weights.empty() ? 1.0 : weights[q]) * term;
  }
  return sum;
}

LossValue naive_metric(const Partition& p, const Hierarchies& hierarchies, MetricKind kind,
                       const std::vector<double>& weights) {
  std::vector<int> heights;
  for (const auto& h : hierarchies) heights.push_back(h->height());
  std::vector<int64_t> sizes;
  for (const auto& c : p.classes) sizes.push_back(static_cast<int64_t>(c.members.size()));
  const auto n = static_cast<int64_t>(p.num_rows);
  const auto s = static_cast<int64_t>(p.suppressed.size());
  if ((kind == MetricKind::kPrec || kind == MetricKind::kGweight) && !p.node) {
    fail(ErrorCode::kInvalidArgument, "node metrics need a full-domain partition");
  }
  switch (kind) {
    case MetricKind::kPrec: return {naive_prec(*p.node, heights, n, s), kind};
    case MetricKind::kGweight: return {naive_gweight(*p.node, heights, weights), kind};
    case MetricKind::kAecs: return {naive_aecs(sizes), kind};
    case MetricKind::kDm: return {naive_dm(sizes, s, n), kind};
  }
  fail(ErrorCode::kInvalidArgument, "unknown metric");
}

ExhaustiveResult exhaustive_ola(const Table& table, const Hierarchies& hierarchies,
                                const AlgoParams& params) {
  std::vector<int> heights;
  size_t size = 1;
  for (const auto& h : hierarchies) {
    heights.push_back(h->height());
    size *= static_cast<size_t>(h->height() + 1);
    if (size > kExhaustiveLatticeLimit) {
      fail(ErrorCode::kBounds, "lattice too large for exhaustive search");
    }
  }
  const auto n = static_cast<int64_t>(table.num_rows());
  const auto limit = static_cast<int64_t>(std::floor(params.max_sup * n + 1e-9));

  bool found = false;
  ExhaustiveResult best;
  LatticeNode node(heights.size(), 0);
  while (true) {
    const GeneralisedTable g = apply_node(table, node, hierarchies);
    std::map<std::vector<std::string>, int64_t> groups;
    for (size_t r = 0; r < g.num_rows(); ++r) {
      std::vector<std::string> key;
      for (const auto& v : g.qid_values[r]) key.push_back(v.label);
      ++groups[key];
    }
    int64_t suppressed = 0;
    std::vector<int64_t> sizes;
    for (const auto& [key, count] : groups) {
      if (count < params.k) {
        suppressed += count;
      } else {
        sizes.push_back(count);
      }
    }
    if (suppressed <= limit) {
      double loss = 0;
      switch (params.metric) {
        case MetricKind::kPrec: loss = naive_prec(node, heights, n, suppressed); break;
        case MetricKind::kGweight: loss = naive_gweight(node, heights, params.weights); break;
        case MetricKind::kAecs: loss = naive_aecs(sizes); break;
        case MetricKind::kDm: loss = naive_dm(sizes, suppressed, n); break;
      }
      int sum = 0;
      int best_sum = 0;
      for (int v : node) sum += v;
      for (int v : best.node) best_sum += v;
      const bool better = !found || loss < best.loss ||
                          (loss == best.loss &&
                           (sum < best_sum || (sum == best_sum && node < best.node)));
      if (better) {
        found = true;
        best = {node, loss, suppressed};
      }
    }
    size_t i = node.size();
    while (i > 0 && node[i - 1] == heights[i - 1]) node[--i] = 0;
    if (i == 0) break;
    ++node[i - 1];
  }
  if (!found) fail(ErrorCode::kInfeasible, "no k-anonymous node");
  return best;
}

}  // namespace anonylat
