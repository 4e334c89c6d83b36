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


#include <doctest.h>

#include <algorithm>
#include <random>

#include "anonymizers.hpp"
#include "fixtures.hpp"
#include "loss_metrics.hpp"
#include "oracle.hpp"

using namespace anonylat;
using namespace anonylat::testing;

namespace {

Partition groups_partition(const std::vector<int64_t>& sizes, int64_t suppressed) {
  Partition p;
  size_t next = 0;
  for (int64_t s : sizes) {
    EquivalenceClass ec;
    for (int64_t i = 0; i < s; ++i) ec.members.push_back(next++);
    p.classes.push_back(ec);
  }
  for (int64_t i = 0; i < suppressed; ++i) p.suppressed.push_back(next++);
  p.num_rows = next;
  return p;
}

GeneralisedValue cat(const Hierarchy& h, const std::string& label, int level) {
  GeneralisedValue g;
  g.label = label;
  g.level = level;
  g.node = *h.find_node(level, label);
  return g;
}

}  // namespace

TEST_CASE("prec") {
  CHECK(metric_prec({0, 0}, {2, 2}, 10, 0).value == 0);
  CHECK(metric_prec({2, 2}, {2, 2}, 10, 0).value == 1);
  CHECK(metric_prec({1, 2}, {2, 2}, 10, 0).value == 0.75);
  CHECK(metric_prec({0, 0}, {2, 2}, 10, 10).value == 1);
  // Height-0 QIDs do not count.
  CHECK(metric_prec({1, 0}, {2, 0}, 10, 0).value == 0.5);
}

TEST_CASE("gweight") {
  CHECK(metric_gweight({0, 0}, {2, 1}).value == 0);
  CHECK(metric_gweight({2, 1, 3}, {2, 1, 3}).value == 3);
  CHECK(metric_gweight({1, 1}, {2, 1}).value == 1.5);
  CHECK(metric_gweight({1, 1}, {2, 1}, {2, 3}).value == 4);
}

TEST_CASE("aecs") {
  CHECK(metric_aecs(groups_partition({1, 1, 1, 1}, 0)).value == 1);
  CHECK(metric_aecs(groups_partition({7}, 0)).value == 7);
  CHECK(metric_aecs(groups_partition({3, 3}, 0)).value == 3);
  CHECK(error_of([] { metric_aecs(groups_partition({}, 3)); }).has_value());
}

TEST_CASE("dm") {
  CHECK(metric_dm(groups_partition({6}, 0), 6).value == 36);
  CHECK(metric_dm(groups_partition({}, 6), 6).value == 36);
  CHECK(metric_dm(groups_partition({2, 3}, 1), 6).value == 19);
  CHECK(metric_dm(13, 1, 6).value == 19);
}

TEST_CASE("ncp of class signatures") {
  const Table t = toy_table();
  const Hierarchies hs = toy_hierarchies();
  const QidIndex index(t, hs);
  const auto& zip = *hs[0];
  const auto& age = *hs[1];
  const std::vector<GeneralisedValue> leaves{zip.generalise("3500", 0), age.generalise(23.0, 0)};
  CHECK(ncp_class(leaves, hs, index.domains()) == 0);
  const std::vector<GeneralisedValue> top{zip.generalise("3500", 2), age.generalise(23.0, 2)};
  CHECK(ncp_class(top, hs, index.domains()) == 2);
  CHECK(ncp_class(top, hs, index.domains(), {2, 0.5}) == 2.5);
  const std::vector<GeneralisedValue> mixed{cat(zip, "350*", 1), age.generalise(23.0, 0)};
  CHECK(ncp_class(mixed, hs, index.domains()) == 0.5);
}

TEST_CASE("numeric ncp is width over domain range") {
  std::vector<double> ages;
  for (int a = 20; a <= 60; ++a) ages.push_back(a);
  const Hierarchy h = build_interval_hierarchy("age", ages, {10}, 0);
  const Hierarchies hs{std::make_shared<Hierarchy>(h)};
  GeneralisedValue v = h.generalise(23.0, 1);
  CHECK(ncp_class({v}, hs, {Domain{20, 60}}) == 0.25);
  CHECK(ncp_class({v}, hs, {Domain{20, 20}}) == 0);
}

TEST_CASE("ncp_merge") {
  const Table t = toy_table();
  const Hierarchies hs = toy_hierarchies();
  const QidIndex index(t, hs);
  const auto& zip = *hs[0];
  const auto& age = *hs[1];
  const std::vector<GeneralisedValue> a{zip.generalise("3500", 0), age.generalise(23.0, 0)};
  const std::vector<GeneralisedValue> b{zip.generalise("3506", 0), age.generalise(23.0, 0)};
  const std::vector<GeneralisedValue> top{zip.generalise("3500", 2), age.generalise(23.0, 2)};
  CHECK(ncp_merge(a, a, hs, index.domains()) == 0);
  CHECK(ncp_merge(a, b, hs, index.domains()) == 0.5);
  CHECK(ncp_merge(a, top, hs, index.domains()) == ncp_class(top, hs, index.domains()));
  const auto lcg = least_common_generalisation(a, b, hs);
  CHECK(lcg[0].label == "350*");
}

TEST_CASE("ncp_merge is symmetric and idempotent on random signatures") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance(seed, 25, 3);
    const QidIndex index(*inst.table, inst.hierarchies);
    const NcpModel model(index);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 10; ++i) {
      const size_t r1 = uniform_index(rng, index.num_rows());
      const size_t r2 = uniform_index(rng, index.num_rows());
      const auto a = model.signature(model.summarise({r1, r2}));
      const auto b = model.signature(model.of_row(uniform_index(rng, index.num_rows())));
      CHECK(ncp_merge(a, b, inst.hierarchies, index.domains()) ==
            ncp_merge(b, a, inst.hierarchies, index.domains()));
      CHECK(ncp_merge(a, a, inst.hierarchies, index.domains()) ==
            ncp_class(a, inst.hierarchies, index.domains()));
    }
  }
}

TEST_CASE("incremental ncp model matches ncp_class") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance(seed, 30, 3);
    const QidIndex index(*inst.table, inst.hierarchies);
    const std::vector<double> weights{1, 2, 0.5};
    const NcpModel model(index, weights);
    std::mt19937_64 rng(seed);
    std::vector<size_t> rows;
    for (int i = 0; i < 6; ++i) rows.push_back(uniform_index(rng, index.num_rows()));
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    const auto s = model.summarise(rows);
    const auto sig = model.signature(s);
    CHECK(model.ncp(s) == doctest::Approx(ncp_class(sig, inst.hierarchies, index.domains(), weights)).epsilon(1e-12));
    const size_t extra = uniform_index(rng, index.num_rows());
    auto grown = s;
    model.absorb(grown, extra);
    CHECK(model.ncp_with_row(s, extra) == model.ncp(grown));
    CHECK(model.row_distance(rows[0], extra) == model.ncp(model.summarise({rows[0], extra})));
  }
}

TEST_CASE("node metrics are monotone along upward lattice paths") {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance(seed, 30, 3);
    const QidIndex index(*inst.table, inst.hierarchies);
    const auto heights = index.heights();
    const Lattice lat(heights);
    std::mt19937_64 rng(seed);
    LatticeNode node = lat.bottom();
    const int64_t n = static_cast<int64_t>(index.num_rows());
    double prev_prec = -1;
    double prev_gw = -1;
    double prev_aecs = -1;
    double prev_dm = -1;
    while (true) {
      // Fixed (empty) suppression set, k = 1.
      const NodeSummary s = summarise(census(index, node), index.num_rows(), 1, 0);
      const double prec = metric_prec(node, heights, n, 0).value;
      const double gw = metric_gweight(node, heights).value;
      const double aecs = metric_aecs(n, s.classes).value;
      const double dm = metric_dm(s.sum_squares, 0, n).value;
      CHECK(prec >= prev_prec);
      CHECK(gw >= prev_gw);
      CHECK(aecs >= prev_aecs);
      CHECK(dm >= prev_dm);
      prev_prec = prec;
      prev_gw = gw;
      prev_aecs = aecs;
      prev_dm = dm;
      std::vector<size_t> up;
      for (size_t q = 0; q < node.size(); ++q) {
        if (node[q] < heights[q]) up.push_back(q);
      }
      if (up.empty()) break;
      ++node[up[uniform_index(rng, up.size())]];
    }
  }
}

TEST_CASE("dm is at least k squared per class") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_instance(seed, 40, 3);
    const QidIndex index(*inst.table, inst.hierarchies);
    AlgoParams params;
    params.k = 2 + static_cast<int64_t>(seed % 5);
    params.max_sup = 0.1;
    params.metric = MetricKind::kDm;
    const Partition p = ola_anonymise(index, params);
    const double dm = metric_dm(p, static_cast<int64_t>(index.num_rows())).value;
    CHECK(dm >= static_cast<double>(params.k * params.k) * static_cast<double>(p.classes.size()));
  }
}

TEST_CASE("metrics equal the naive oracle on random instances") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = random_instance(seed, 30, 3);
    const QidIndex index(*inst.table, inst.hierarchies);
    const auto heights = index.heights();
    const Lattice lat(heights);
    std::mt19937_64 rng(seed);
    const LatticeNode node = lat.node(uniform_index(rng, lat.size()));
    const int64_t n = static_cast<int64_t>(index.num_rows());
    const int64_t sup = static_cast<int64_t>(uniform_index(rng, 4));
    CHECK(metric_prec(node, heights, n, sup).value == naive_prec(node, heights, n, sup));
    CHECK(metric_gweight(node, heights).value == naive_gweight(node, heights));
    const std::vector<double> w{1, 3, 2};
    CHECK(metric_gweight(node, heights, w).value == naive_gweight(node, heights, w));
    const std::vector<double> frac{0.5, 1.25, 2};
    CHECK(metric_gweight(node, heights, frac).value == naive_gweight(node, heights, frac));
    const NodeCensus c = census(index, node);
    const NodeSummary s = summarise(c, index.num_rows(), 2, 0.5);
    std::vector<int64_t> sizes;
    for (int64_t g : c.group_sizes) {
      if (g >= 2) sizes.push_back(g);
    }
    if (s.classes > 0) {
      CHECK(metric_aecs(n - s.suppressed, s.classes).value == naive_aecs(sizes));
    }
    CHECK(metric_dm(s.sum_squares, s.suppressed, n).value == naive_dm(sizes, s.suppressed, n));
  }
}
