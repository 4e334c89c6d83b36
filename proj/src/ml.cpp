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

#include "ml.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "error.hpp"

namespace anonylat {

size_t EncodedMatrix::numeric_columns() const {
  size_t n = 0;
  for (const auto& b : blocks) n += b.one_hot ? 0 : 1;
  return n;
}

EncodedMatrix EncodedMatrix::select(const std::vector<size_t>& positions) const {
  EncodedMatrix out;
  out.feature_names = feature_names;
  out.blocks = blocks;
  out.row_ids.reserve(positions.size());
  out.values.reserve(positions.size() * cols());
  for (size_t p : positions) {
    if (p >= rows()) fail(ErrorCode::kBounds, "row position out of range");
    out.row_ids.push_back(row_ids[p]);
    out.values.insert(out.values.end(), values.begin() + p * cols(),
                      values.begin() + (p + 1) * cols());
  }
  return out;
}

namespace {

GeneralisedTable identity_generalisation(const Table& table) {
  GeneralisedTable g;
  g.source = &table;
  const auto& qids = table.qid_columns();
  g.qid_values.resize(table.num_rows());
  for (size_t r = 0; r < table.num_rows(); ++r) {
    for (size_t q = 0; q < qids.size(); ++q) {
      GeneralisedValue v;
      v.label = table.cell(r, qids[q]);
      v.level = 0;
      if (table.attribute(qids[q]).kind == Kind::kNumerical) {
        const double x = table.number(r, qids[q]);
        v.interval = Interval{x, x, false};
      }
      g.qid_values[r].push_back(std::move(v));
    }
  }
  return g;
}

}  // namespace

EncodedData encode_for_ml(const Table& table) {
  return encode_for_ml(identity_generalisation(table));
}

EncodedData encode_for_ml(const GeneralisedTable& g) {
  const Table& t = *g.source;
  const size_t n = t.num_rows();
  if (g.num_rows() != n) fail(ErrorCode::kInvalidArgument, "row count mismatch");
  std::vector<int> qid_of_col(t.num_columns(), -1);
  for (size_t q = 0; q < t.qid_columns().size(); ++q) {
    qid_of_col[t.qid_columns()[q]] = static_cast<int>(q);
  }
  auto text = [&](size_t r, size_t c) -> const std::string& {
    return qid_of_col[c] >= 0 ? g.qid_values[r][qid_of_col[c]].label : t.cell(r, c);
  };

  EncodedData out;
  EncodedMatrix& x = out.x;
  // Column-major staging, flattened at the end.
  std::vector<std::vector<double>> columns;
  for (size_t c = 0; c < t.num_columns(); ++c) {
    const auto& attr = t.attribute(c);
    if (attr.role == Role::kTarget) continue;
    FeatureBlock block;
    block.attribute = attr.name;
    block.first = columns.size();
    if (attr.kind == Kind::kNumerical) {
      std::vector<double> col(n);
      const auto& raw = t.numeric_column(c);
      auto [mn, mx] = std::minmax_element(raw.begin(), raw.end());
      const double domain_mid = (*mn + *mx) / 2;
      for (size_t r = 0; r < n; ++r) {
        if (qid_of_col[c] < 0) {
          col[r] = raw[r];
          continue;
        }
        const GeneralisedValue& v = g.qid_values[r][qid_of_col[c]];
        if (v.label == kRootLabel) {
          col[r] = domain_mid;
        } else if (v.interval) {
          col[r] = v.interval->midpoint();
        } else {
          fail(ErrorCode::kInvalidArgument, "numeric value '" + v.label + "' of " +
                                                attr.name + " carries no interval");
        }
      }
      columns.push_back(std::move(col));
      x.feature_names.push_back(attr.name);
    } else {
      std::set<std::string> labels;
      for (size_t r = 0; r < n; ++r) labels.insert(text(r, c));
      std::map<std::string, size_t> slot;
      for (const auto& l : labels) {
        slot.emplace(l, slot.size());
        x.feature_names.push_back(attr.name + "=" + l);
        columns.emplace_back(n, 0.0);
      }
      for (size_t r = 0; r < n; ++r) columns[block.first + slot[text(r, c)]][r] = 1.0;
      block.one_hot = true;
      block.width = labels.size();
    }
    x.blocks.push_back(block);
  }
  x.row_ids.resize(n);
  std::iota(x.row_ids.begin(), x.row_ids.end(), 0);
  const size_t d = columns.size();
  x.values.resize(n * d);
  for (size_t j = 0; j < d; ++j) {
    for (size_t r = 0; r < n; ++r) x.values[r * d + j] = columns[j][r];
  }
  out.y.reserve(n);
  for (size_t r = 0; r < n; ++r) out.y.push_back(t.cell(r, t.target_column()));
  return out;
}

EncodedData select_rows(const EncodedData& data, const std::vector<size_t>& ids) {
  std::vector<size_t> pos(data.x.rows());
  std::vector<size_t> positions;
  std::map<size_t, size_t> where;
  for (size_t i = 0; i < data.x.rows(); ++i) where.emplace(data.x.row_ids[i], i);
  for (size_t id : ids) {
    auto it = where.find(id);
    if (it == where.end()) fail(ErrorCode::kBounds, "row id not in encoded data");
    positions.push_back(it->second);
  }
  EncodedData out;
  out.x = data.x.select(positions);
  for (size_t p : positions) out.y.push_back(data.y[p]);
  return out;
}

namespace {

// Row in block form: numeric blocks keep their value, one-hot blocks their
// active slot.
struct Compact {
  std::vector<double> numeric;
  std::vector<int> codes;
  bool operator<(const Compact& o) const {
    return std::tie(numeric, codes) < std::tie(o.numeric, o.codes);
  }
  bool operator==(const Compact& o) const {
    return numeric == o.numeric && codes == o.codes;
  }
};

Compact compact_row(const EncodedMatrix& m, size_t r) {
  Compact c;
  for (const auto& b : m.blocks) {
    if (!b.one_hot) {
      c.numeric.push_back(m.at(r, b.first));
      continue;
    }
    int code = -1;
    for (size_t j = 0; j < b.width; ++j) {
      if (m.at(r, b.first + j) != 0) {
        code = static_cast<int>(j);
        break;
      }
    }
    c.codes.push_back(code);
  }
  return c;
}

}  // namespace

std::vector<std::string> knn_classify(const EncodedMatrix& train,
                                      const std::vector<std::string>& labels,
                                      const EncodedMatrix& test, size_t n_neighbours) {
  if (train.rows() == 0) fail(ErrorCode::kInvalidArgument, "empty training set");
  if (labels.size() != train.rows()) {
    fail(ErrorCode::kInvalidArgument, "one label per training row expected");
  }
  if (n_neighbours < 1 || n_neighbours > train.rows()) {
    fail(ErrorCode::kInvalidArgument, "n_neighbours must lie in [1, |train|]");
  }
  if (train.feature_names != test.feature_names) {
    fail(ErrorCode::kInvalidArgument, "train and test feature spaces differ");
  }
  std::vector<std::string> names(labels);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  auto label_id = [&](const std::string& l) {
    return static_cast<int>(std::lower_bound(names.begin(), names.end(), l) - names.begin());
  };

  // Identical (features, label) training rows collapse into one weighted point.
  struct Point {
    Compact f;
    int label;
    int64_t count;
  };
  std::vector<std::pair<Compact, int>> rows;
  rows.reserve(train.rows());
  for (size_t r = 0; r < train.rows(); ++r) {
    rows.emplace_back(compact_row(train, r), label_id(labels[r]));
  }
  std::sort(rows.begin(), rows.end());
  std::vector<Point> points;
  for (auto& [f, l] : rows) {
    if (!points.empty() && points.back().label == l && points.back().f == f) {
      ++points.back().count;
    } else {
      points.push_back({std::move(f), l, 1});
    }
  }

  const auto& blocks = train.blocks;
  auto dist2 = [&](const Compact& a, const Compact& b) {
    double d = 0;
    size_t ni = 0;
    size_t ci = 0;
    for (const auto& blk : blocks) {
      if (blk.one_hot) {
        if (a.codes[ci] != b.codes[ci]) d += 2.0;
        ++ci;
      } else {
        const double diff = a.numeric[ni] - b.numeric[ni];
        d += diff * diff;
        ++ni;
      }
    }
    return d;
  };

  std::map<Compact, std::string> memo;
  std::vector<std::string> out;
  out.reserve(test.rows());
  std::vector<std::pair<double, int>> order;  // (distance^2, label) per point
  std::vector<size_t> idx(points.size());
  std::vector<int64_t> votes(names.size());
  std::vector<double> spread(names.size());
  for (size_t r = 0; r < test.rows(); ++r) {
    Compact q = compact_row(test, r);
    auto hit = memo.find(q);
    if (hit != memo.end()) {
      out.push_back(hit->second);
      continue;
    }
    order.resize(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
      order[i] = {dist2(q, points[i].f), points[i].label};
    }
    std::iota(idx.begin(), idx.end(), 0);
    auto less = [&](size_t a, size_t b) { return order[a] < order[b]; };
    const size_t head = std::min(n_neighbours, idx.size());
    std::nth_element(idx.begin(), idx.begin() + (head - 1), idx.end(), less);
    std::sort(idx.begin(), idx.begin() + head, less);
    // Distance of the n-th nearest training row, counting duplicates.
    double radius = 0;
    int64_t seen = 0;
    for (size_t i = 0; i < head; ++i) {
      radius = order[idx[i]].first;
      seen += points[idx[i]].count;
      if (seen >= static_cast<int64_t>(n_neighbours)) break;
    }
    // Every row tied with the n-th nearest one votes.
    std::fill(votes.begin(), votes.end(), 0);
    std::fill(spread.begin(), spread.end(), 0.0);
    for (size_t i = 0; i < points.size(); ++i) {
      if (order[i].first > radius) continue;
      const Point& p = points[i];
      votes[p.label] += p.count;
      spread[p.label] += static_cast<double>(p.count) * std::sqrt(order[i].first);
    }
    int winner = -1;
    for (int l = 0; l < static_cast<int>(names.size()); ++l) {
      if (votes[l] == 0) continue;
      if (winner < 0 || votes[l] > votes[winner] ||
          (votes[l] == votes[winner] && spread[l] < spread[winner])) {
        winner = l;
      }
    }
    memo.emplace(std::move(q), names[winner]);
    out.push_back(names[winner]);
  }
  return out;
}

ZeroRule zero_rule_predict(const std::vector<std::string>& test_labels) {
  if (test_labels.empty()) fail(ErrorCode::kInvalidArgument, "empty test labels");
  std::map<std::string, size_t> freq;
  for (const auto& l : test_labels) ++freq[l];
  ZeroRule z;
  size_t best = 0;
  for (const auto& [label, count] : freq) {
    if (count > best) {
      best = count;
      z.label = label;
    }
  }
  z.accuracy = static_cast<double>(best) / static_cast<double>(test_labels.size());
  z.predictions.assign(test_labels.size(), z.label);
  return z;
}

namespace {

double ratio(int64_t a, int64_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

double f1_of(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

}  // namespace

EvalReport evaluate(const std::vector<std::string>& predicted,
                    const std::vector<std::string>& actual,
                    const std::optional<std::string>& positive_class,
                    Averaging averaging) {
  if (predicted.size() != actual.size() || actual.empty()) {
    fail(ErrorCode::kInvalidArgument, "predictions and labels must be equally long and non-empty");
  }
  const auto n = static_cast<int64_t>(actual.size());
  std::set<std::string> labels(actual.begin(), actual.end());
  labels.insert(predicted.begin(), predicted.end());
  if (positive_class) labels.insert(*positive_class);
  EvalReport rep;
  int64_t hits = 0;
  for (size_t i = 0; i < actual.size(); ++i) hits += predicted[i] == actual[i];
  rep.accuracy = ratio(hits, n);
  for (const auto& l : labels) {
    ClassCounts c;
    c.label = l;
    for (size_t i = 0; i < actual.size(); ++i) {
      const bool p = predicted[i] == l;
      const bool a = actual[i] == l;
      c.tp += p && a;
      c.fp += p && !a;
      c.fn += !p && a;
      c.tn += !p && !a;
    }
    rep.counts.push_back(c);
  }
  if (positive_class) {
    for (const auto& c : rep.counts) {
      if (c.label != *positive_class) continue;
      rep.precision = ratio(c.tp, c.tp + c.fp);
      rep.recall = ratio(c.tp, c.tp + c.fn);
      rep.f1 = f1_of(rep.precision, rep.recall);
    }
    return rep;
  }
  double p = 0;
  double r = 0;
  double f = 0;
  for (const auto& c : rep.counts) {
    const double cp = ratio(c.tp, c.tp + c.fp);
    const double cr = ratio(c.tp, c.tp + c.fn);
    const double w = averaging == Averaging::kMacro
                         ? 1.0 / static_cast<double>(rep.counts.size())
                         : ratio(c.tp + c.fn, n);
    p += w * cp;
    r += w * cr;
    f += w * f1_of(cp, cr);
  }
  rep.precision = p;
  rep.recall = r;
  rep.f1 = f;
  return rep;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (size_t i = 0; i < idx.size();) {
    size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2 + 1;
    for (size_t t = i; t <= j; ++t) ranks[idx[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> spearman_rank_correlation(const std::vector<double>& x,
                                                const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    fail(ErrorCode::kInvalidArgument, "spearman needs two equally long columns of length >= 2");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0;
  double sxx = 0;
  double syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<HomogeneityRow> homogeneity_histogram(const Partition& p, const Table& table) {
  std::vector<HomogeneityRow> out;
  const size_t t = table.target_column();
  for (size_t i = 0; i < p.classes.size(); ++i) {
    std::map<std::string, size_t> freq;
    for (size_t id : p.classes[i].members) ++freq[table.cell(id, t)];
    size_t modal = 0;
    for (const auto& [label, count] : freq) modal = std::max(modal, count);
    const size_t size = p.classes[i].members.size();
    out.push_back({i, size == 0 ? 0.0 : static_cast<double>(modal) / size, size});
  }
  return out;
}

}  // namespace anonylat
