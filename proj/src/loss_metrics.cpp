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

#include "loss_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "util.hpp"

namespace anonylat {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

double divide(u128 num, u128 den) {
  const u128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

// lcm of the positive heights; 1 if there are none.
uint64_t height_lcm(const std::vector<int>& heights) {
  uint64_t l = 1;
  for (int h : heights) {
    if (h > 0) l = std::lcm(l, static_cast<uint64_t>(h));
  }
  return l;
}

void check_node(const LatticeNode& node, const std::vector<int>& heights) {
  if (node.size() != heights.size()) {
    fail(ErrorCode::kInvalidArgument, "node arity does not match heights");
  }
  for (size_t i = 0; i < node.size(); ++i) {
    if (node[i] < 0 || node[i] > heights[i]) {
      fail(ErrorCode::kBounds, "node level outside its hierarchy");
    }
  }
}

bool integral(const std::vector<double>& weights) {
  return std::all_of(weights.begin(), weights.end(), [](double w) {
    return w >= 0 && w < 9.0e15 && std::floor(w) == w;
  });
}

}  // namespace

LossValue metric_prec(const LatticeNode& node, const std::vector<int>& heights,
                      int64_t n, int64_t suppressed) {
  check_node(node, heights);
  if (n <= 0 || suppressed < 0 || suppressed > n) {
    fail(ErrorCode::kInvalidArgument, "invalid row or suppression count");
  }
  const uint64_t l = height_lcm(heights);
  u128 level_units = 0;
  u128 m = 0;
  for (size_t i = 0; i < node.size(); ++i) {
    if (heights[i] <= 0) continue;
    ++m;
    level_units += static_cast<u128>(node[i]) * (l / heights[i]);
  }
  if (m == 0) return {0.0, MetricKind::kPrec};
  const u128 kept = static_cast<u128>(n - suppressed);
  const u128 num = kept * level_units + static_cast<u128>(suppressed) * m * l;
  const u128 den = static_cast<u128>(n) * m * l;
  return {divide(num, den), MetricKind::kPrec};
}

LossValue metric_gweight(const LatticeNode& node, const std::vector<int>& heights,
                         const std::vector<double>& weights) {
  check_node(node, heights);
  if (!weights.empty() && weights.size() != node.size()) {
    fail(ErrorCode::kInvalidArgument, "one weight per QID expected");
  }
  if (weights.empty() || integral(weights)) {
    const uint64_t l = height_lcm(heights);
    u128 num = 0;
    for (size_t i = 0; i < node.size(); ++i) {
      if (heights[i] <= 0) continue;
      const u128 w = weights.empty() ? 1 : static_cast<u128>(weights[i]);
      num += w * static_cast<u128>(node[i]) * (l / heights[i]);
    }
    return {divide(num, l), MetricKind::kGweight};
  }
  double sum = 0;
  for (size_t i = 0; i < node.size(); ++i) {
    if (heights[i] <= 0) continue;
    sum += weights[i] * node[i] / heights[i];
  }
  return {sum, MetricKind::kGweight};
}

LossValue metric_aecs(int64_t non_suppressed, int64_t classes) {
  if (classes <= 0) {
    fail(ErrorCode::kInvalidArgument, "aecs of a partition without classes");
  }
  return {divide(static_cast<u128>(non_suppressed), static_cast<u128>(classes)),
          MetricKind::kAecs};
}

LossValue metric_aecs(const Partition& p) {
  int64_t records = 0;
  for (const auto& c : p.classes) records += static_cast<int64_t>(c.members.size());
  return metric_aecs(records, static_cast<int64_t>(p.classes.size()));
}

LossValue metric_dm(int64_t sum_squares, int64_t suppressed, int64_t n) {
  const u128 v = static_cast<u128>(sum_squares) +
                 static_cast<u128>(suppressed) * static_cast<u128>(n);
  return {static_cast<double>(v), MetricKind::kDm};
}

LossValue metric_dm(const Partition& p, int64_t n) {
  int64_t sq = 0;
  for (const auto& c : p.classes) {
    const auto s = static_cast<int64_t>(c.members.size());
    sq += s * s;
  }
  return metric_dm(sq, static_cast<int64_t>(p.suppressed.size()), n);
}

namespace {

std::pair<int, int> locate(const Hierarchy& h, const GeneralisedValue& g) {
  if (g.level >= 0 && g.node >= 0 && g.level <= h.height() &&
      g.node < h.num_nodes(g.level) && h.label(g.level, g.node) == g.label) {
    return {g.level, g.node};
  }
  if (g.label == kRootLabel) return {h.height(), 0};
  for (int l = 0; l <= h.height(); ++l) {
    if (auto n = h.find_node(l, g.label)) return {l, *n};
  }
  fail(ErrorCode::kCoverage, "'" + g.label + "' is not a node of " + h.attribute());
}

double categorical_fraction(const Hierarchy& h, int level, int node) {
  const int count = h.leaf_count(level, node);
  if (count <= 1) return 0.0;
  return static_cast<double>(count) / static_cast<double>(h.num_leaves());
}

double numeric_fraction(double width, const Domain& d) {
  const double range = d.range();
  if (range == 0) return 0.0;
  return width / range;
}

}  // namespace

double ncp_class(const std::vector<GeneralisedValue>& signature,
                 const Hierarchies& hierarchies, const std::vector<Domain>& domains,
                 const std::vector<double>& weights) {
  if (signature.size() != hierarchies.size()) {
    fail(ErrorCode::kInvalidArgument, "signature arity does not match the QIDs");
  }
  double sum = 0;
  for (size_t q = 0; q < signature.size(); ++q) {
    const Hierarchy& h = *hierarchies[q];
    const GeneralisedValue& g = signature[q];
    double term;
    if (h.kind() == Kind::kNumerical) {
      if (g.label == kRootLabel) {
        term = domains[q].range() == 0 ? 0.0 : 1.0;
      } else {
        if (!g.interval) {
          fail(ErrorCode::kInvalidArgument, "numeric value '" + g.label +
                                                "' carries no interval");
        }
        term = numeric_fraction(g.interval->hi - g.interval->lo, domains[q]);
      }
    } else {
      auto [level, node] = locate(h, g);
      term = categorical_fraction(h, level, node);
    }
    const double w = weights.empty() ? 1.0 : weights[q];
    sum += w * term;
  }
  return sum;
}

std::vector<GeneralisedValue> least_common_generalisation(
    const std::vector<GeneralisedValue>& a, const std::vector<GeneralisedValue>& b,
    const Hierarchies& hierarchies) {
  if (a.size() != b.size() || a.size() != hierarchies.size()) {
    fail(ErrorCode::kInvalidArgument, "signature arity mismatch");
  }
  std::vector<GeneralisedValue> out(a.size());
  for (size_t q = 0; q < a.size(); ++q) {
    const Hierarchy& h = *hierarchies[q];
    GeneralisedValue& g = out[q];
    if (a[q].label == kRootLabel || b[q].label == kRootLabel) {
      g.label = kRootLabel;
      g.level = h.height();
      g.node = 0;
      g.interval = a[q].label == kRootLabel ? a[q].interval : b[q].interval;
      continue;
    }
    if (h.kind() == Kind::kNumerical) {
      if (!a[q].interval || !b[q].interval) {
        fail(ErrorCode::kInvalidArgument, "numeric value without interval");
      }
      const Interval& x = *a[q].interval;
      const Interval& y = *b[q].interval;
      if (x == y) {
        g = a[q];
        continue;
      }
      Interval hull{std::min(x.lo, y.lo), std::max(x.hi, y.hi), false};
      if (x.hi > y.hi) {
        hull.hi_open = x.hi_open;
      } else if (y.hi > x.hi) {
        hull.hi_open = y.hi_open;
      } else {
        hull.hi_open = x.hi_open && y.hi_open;
      }
      g.interval = hull;
      g.label = "[" + format_number(hull.lo) + "-" + format_number(hull.hi) +
                (hull.hi_open ? ")" : "]");
    } else {
      auto [la, na] = locate(h, a[q]);
      auto [lb, nb] = locate(h, b[q]);
      auto [l, n] = h.lca(la, na, lb, nb);
      g.level = l;
      g.node = n;
      g.label = h.label(l, n);
    }
  }
  return out;
}

double ncp_merge(const std::vector<GeneralisedValue>& a,
                 const std::vector<GeneralisedValue>& b,
                 const Hierarchies& hierarchies, const std::vector<Domain>& domains,
                 const std::vector<double>& weights) {
  return ncp_class(least_common_generalisation(a, b, hierarchies), hierarchies,
                   domains, weights);
}

NcpModel::NcpModel(const QidIndex& index, std::vector<double> weights)
    : index_(&index), weights_(std::move(weights)) {
  const size_t m = index.num_qids();
  if (!weights_.empty() && weights_.size() != m) {
    fail(ErrorCode::kInvalidArgument, "one weight per QID expected");
  }
  cat_terms_.resize(m);
  pair_terms_.resize(m);
  for (size_t q = 0; q < m; ++q) {
    if (index.numerical(q)) continue;
    const Hierarchy& h = index.hierarchy(q);
    cat_terms_[q].resize(h.height() + 1);
    for (int l = 0; l <= h.height(); ++l) {
      for (int n = 0; n < h.num_nodes(l); ++n) {
        cat_terms_[q][l].push_back(categorical_fraction(h, l, n));
      }
    }
    const size_t leaves = h.num_leaves();
    if (leaves * leaves <= (1u << 20)) {
      auto& t = pair_terms_[q];
      t.resize(leaves * leaves);
      for (size_t a = 0; a < leaves; ++a) {
        for (size_t b = 0; b < leaves; ++b) {
          auto [l, n] = h.lca(0, static_cast<int>(a), 0, static_cast<int>(b));
          t[a * leaves + b] = cat_terms_[q][l][n];
        }
      }
    }
  }
}

double NcpModel::numeric_term(size_t q, double lo, double hi) const {
  return numeric_fraction(hi - lo, index_->domain(q));
}

NcpModel::Summary NcpModel::of_row(size_t row) const {
  Summary s(index_->num_qids());
  for (size_t q = 0; q < s.size(); ++q) {
    if (index_->numerical(q)) {
      s[q].lo = s[q].hi = index_->value(row, q);
    } else {
      s[q].level = 0;
      s[q].node = index_->leaf(row, q);
    }
  }
  return s;
}

void NcpModel::absorb(Summary& s, size_t row) const {
  for (size_t q = 0; q < s.size(); ++q) {
    if (index_->numerical(q)) {
      const double v = index_->value(row, q);
      s[q].lo = std::min(s[q].lo, v);
      s[q].hi = std::max(s[q].hi, v);
    } else {
      auto [l, n] = index_->hierarchy(q).lca(s[q].level, s[q].node, 0,
                                             index_->leaf(row, q));
      s[q].level = l;
      s[q].node = n;
    }
  }
}

void NcpModel::absorb(Summary& s, const Summary& other) const {
  for (size_t q = 0; q < s.size(); ++q) {
    if (index_->numerical(q)) {
      s[q].lo = std::min(s[q].lo, other[q].lo);
      s[q].hi = std::max(s[q].hi, other[q].hi);
    } else {
      auto [l, n] = index_->hierarchy(q).lca(s[q].level, s[q].node,
                                             other[q].level, other[q].node);
      s[q].level = l;
      s[q].node = n;
    }
  }
}

double NcpModel::ncp(const Summary& s) const {
  double sum = 0;
  for (size_t q = 0; q < s.size(); ++q) {
    const double term = index_->numerical(q)
                            ? numeric_term(q, s[q].lo, s[q].hi)
                            : categorical_term(q, s[q].level, s[q].node);
    sum += weight(q) * term;
  }
  return sum;
}

double NcpModel::ncp_with_row(const Summary& s, size_t row) const {
  double sum = 0;
  for (size_t q = 0; q < s.size(); ++q) {
    double term;
    if (index_->numerical(q)) {
      const double v = index_->value(row, q);
      term = numeric_term(q, std::min(s[q].lo, v), std::max(s[q].hi, v));
    } else {
      auto [l, n] = index_->hierarchy(q).lca(s[q].level, s[q].node, 0,
                                             index_->leaf(row, q));
      term = categorical_term(q, l, n);
    }
    sum += weight(q) * term;
  }
  return sum;
}

double NcpModel::ncp_merged(const Summary& a, const Summary& b) const {
  Summary s = a;
  absorb(s, b);
  return ncp(s);
}

double NcpModel::row_distance(size_t a, size_t b) const {
  double sum = 0;
  for (size_t q = 0; q < index_->num_qids(); ++q) {
    double term;
    if (index_->numerical(q)) {
      const double x = index_->value(a, q);
      const double y = index_->value(b, q);
      term = numeric_term(q, std::min(x, y), std::max(x, y));
    } else if (!pair_terms_[q].empty()) {
      const size_t leaves = index_->hierarchy(q).num_leaves();
      term = pair_terms_[q][index_->leaf(a, q) * leaves + index_->leaf(b, q)];
    } else {
      auto [l, n] = index_->hierarchy(q).lca(0, index_->leaf(a, q), 0,
                                             index_->leaf(b, q));
      term = categorical_term(q, l, n);
    }
    sum += weight(q) * term;
  }
  return sum;
}

NcpModel::Summary NcpModel::summarise(const std::vector<size_t>& rows) const {
  if (rows.empty()) fail(ErrorCode::kInvalidArgument, "summary of an empty class");
  Summary s = of_row(rows[0]);
  for (size_t i = 1; i < rows.size(); ++i) absorb(s, rows[i]);
  return s;
}

std::vector<GeneralisedValue> NcpModel::signature(const Summary& s) const {
  std::vector<GeneralisedValue> sig(s.size());
  for (size_t q = 0; q < s.size(); ++q) {
    GeneralisedValue& g = sig[q];
    if (index_->numerical(q)) {
      g.interval = Interval{s[q].lo, s[q].hi, false};
      g.label = s[q].lo == s[q].hi ? format_number(s[q].lo)
                                   : "[" + format_number(s[q].lo) + "-" +
                                         format_number(s[q].hi) + "]";
    } else {
      g.level = s[q].level;
      g.node = s[q].node;
      g.label = index_->hierarchy(q).label(g.level, g.node);
    }
  }
  return sig;
}

}  // namespace anonylat
