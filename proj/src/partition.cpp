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

#include "partition.hpp"

#include <algorithm>

#include "error.hpp"
#include "util.hpp"

namespace anonylat {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kOla: return "ola";
    case Algorithm::kMondrian: return "mondrian";
    case Algorithm::kTdg: return "tdg";
    case Algorithm::kCb: return "cb";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "ola") return Algorithm::kOla;
  if (name == "mondrian") return Algorithm::kMondrian;
  if (name == "tdg") return Algorithm::kTdg;
  if (name == "cb") return Algorithm::kCb;
  return std::nullopt;
}

const char* metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::kPrec: return "prec";
    case MetricKind::kGweight: return "gweight";
    case MetricKind::kAecs: return "aecs";
    case MetricKind::kDm: return "dm";
  }
  return "?";
}

std::optional<MetricKind> parse_metric(const std::string& name) {
  if (name == "prec") return MetricKind::kPrec;
  if (name == "gweight") return MetricKind::kGweight;
  if (name == "aecs") return MetricKind::kAecs;
  if (name == "dm") return MetricKind::kDm;
  return std::nullopt;
}

void canonicalise(Partition& p) {
  for (auto& c : p.classes) std::sort(c.members.begin(), c.members.end());
  std::sort(p.suppressed.begin(), p.suppressed.end());
  std::sort(p.classes.begin(), p.classes.end(),
            [](const EquivalenceClass& a, const EquivalenceClass& b) {
              return a.members.front() < b.members.front();
            });
}

bool covers(const GeneralisedValue& g, const Hierarchy& h, const std::string& text,
            double numeric) {
  if (g.label == kRootLabel) return true;
  if (h.kind() == Kind::kNumerical) {
    return g.interval && g.interval->contains(numeric);
  }
  auto leaf = h.find_leaf(text);
  if (!leaf) return false;
  for (int l = 0; l <= h.height(); ++l) {
    if (h.label(l, h.ancestor(*leaf, l)) == g.label) return true;
  }
  return false;
}

VerifyResult verify_k_anonymity(const Partition& p, const Table& table,
                                const Hierarchies& hierarchies, int64_t k) {
  VerifyResult res;
  auto bad = [&](std::string msg) {
    res.ok = false;
    res.diagnostic = std::move(msg);
    return res;
  };
  const size_t n = table.num_rows();
  const auto& qids = table.qid_columns();
  if (hierarchies.size() != qids.size()) return bad("hierarchy count mismatch");
  std::vector<uint8_t> seen(n, 0);
  auto mark = [&](size_t id) -> bool {
    if (id >= n || seen[id]) return false;
    seen[id] = 1;
    return true;
  };
  for (size_t ci = 0; ci < p.classes.size(); ++ci) {
    const auto& c = p.classes[ci];
    if (static_cast<int64_t>(c.members.size()) < k) {
      return bad("class " + std::to_string(ci) + " has " +
                 std::to_string(c.members.size()) + " members, fewer than k=" +
                 std::to_string(k));
    }
    if (c.signature.size() != qids.size()) {
      return bad("class " + std::to_string(ci) + " signature has wrong arity");
    }
    for (size_t id : c.members) {
      if (!mark(id)) {
        return bad("row " + std::to_string(id) + " is out of range or appears twice");
      }
      for (size_t q = 0; q < qids.size(); ++q) {
        const size_t col = qids[q];
        const double v = table.attribute(col).kind == Kind::kNumerical
                             ? table.number(id, col)
                             : 0.0;
        if (!covers(c.signature[q], *hierarchies[q], table.cell(id, col), v)) {
          return bad("row " + std::to_string(id) + " value '" + table.cell(id, col) +
                     "' of " + table.attribute(col).name +
                     " is not covered by signature '" + c.signature[q].label +
                     "' of class " + std::to_string(ci));
        }
      }
    }
  }
  for (size_t id : p.suppressed) {
    if (!mark(id)) {
      return bad("suppressed row " + std::to_string(id) +
                 " is out of range or appears twice");
    }
  }
  for (size_t r = 0; r < n; ++r) {
    if (!seen[r]) return bad("row " + std::to_string(r) + " is not covered");
  }
  return res;
}

GeneralisedTable generalised_table_from_partition(const Partition& p,
                                                  const Table& table,
                                                  const Hierarchies& hierarchies) {
  auto v = verify_k_anonymity(p, table, hierarchies, p.k);
  if (!v.ok) fail(ErrorCode::kVerification, v.diagnostic);
  const auto& qids = table.qid_columns();
  GeneralisedTable g;
  g.source = &table;
  g.qid_values.resize(table.num_rows());
  for (const auto& c : p.classes) {
    for (size_t id : c.members) g.qid_values[id] = c.signature;
  }
  if (!p.suppressed.empty()) {
    std::vector<GeneralisedValue> star(qids.size());
    for (size_t q = 0; q < qids.size(); ++q) {
      const Hierarchy& h = *hierarchies[q];
      star[q].label = kRootLabel;
      star[q].level = h.height();
      star[q].node = 0;
      if (h.kind() == Kind::kNumerical) {
        const auto& col = table.numeric_column(qids[q]);
        auto [mn, mx] = std::minmax_element(col.begin(), col.end());
        star[q].interval = Interval{*mn, *mx, false};
      }
    }
    for (size_t id : p.suppressed) g.qid_values[id] = star;
  }
  return g;
}

}  // namespace anonylat
