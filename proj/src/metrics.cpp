// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace relclust {

namespace {

std::vector<int> factor_encode(std::span<const int> labels, int& K) {
  std::unordered_map<int, int> remap;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto [it, inserted] =
        remap.try_emplace(labels[i], static_cast<int>(remap.size()));
    out[i] = it->second;
    (void)inserted;
  }
  K = static_cast<int>(remap.size());
  return out;
}

double choose2(long long m) { return 0.5 * static_cast<double>(m) * (m - 1); }

}  // namespace

ContingencyTable ContingencyTable::build(std::span<const int> pred,
                                         std::span<const int> truth) {
  if (pred.size() != truth.size())
    throw std::invalid_argument("ContingencyTable: length mismatch");
  if (pred.empty()) throw std::invalid_argument("ContingencyTable: empty input");
  int kp = 0, kt = 0;
  const std::vector<int> p = factor_encode(pred, kp);
  const std::vector<int> t = factor_encode(truth, kt);
  ContingencyTable table;
  table.n = static_cast<int>(pred.size());
  table.counts.assign(kp, std::vector<long long>(kt, 0));
  table.row_marginals.assign(kp, 0);
  table.col_marginals.assign(kt, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    ++table.counts[p[i]][t[i]];
    ++table.row_marginals[p[i]];
    ++table.col_marginals[t[i]];
  }
  return table;
}

double pairwise_f(std::span<const int> pred, std::span<const int> truth) {
  const ContingencyTable table = ContingencyTable::build(pred, truth);
  double both = 0.0;
  for (const auto& row : table.counts)
    for (long long c : row) both += choose2(c);
  double same_pred = 0.0, same_true = 0.0;
  for (long long m : table.row_marginals) same_pred += choose2(m);
  for (long long m : table.col_marginals) same_true += choose2(m);
  const double precision = same_pred > 0.0 ? both / same_pred : 0.0;
  const double recall = same_true > 0.0 ? both / same_true : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double adjusted_rand(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() < 2) throw std::invalid_argument("adjusted_rand: need n >= 2");
  const ContingencyTable table = ContingencyTable::build(pred, truth);
  double index = 0.0;
  for (const auto& row : table.counts)
    for (long long c : row) index += choose2(c);
  double sum_pred = 0.0, sum_true = 0.0;
  for (long long m : table.row_marginals) sum_pred += choose2(m);
  for (long long m : table.col_marginals) sum_true += choose2(m);
  const double total_pairs = choose2(table.n);
  const double expected = sum_pred * sum_true / total_pairs;
  const double max_index = 0.5 * (sum_pred + sum_true);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (index - expected) / (max_index - expected);
}

double nmi(std::span<const int> pred, std::span<const int> truth) {
  const ContingencyTable table = ContingencyTable::build(pred, truth);
  const double n = static_cast<double>(table.n);
  double h_pred = 0.0, h_true = 0.0, mutual = 0.0;
  for (long long m : table.row_marginals) {
    if (m > 0) h_pred -= (m / n) * std::log(m / n);
  }
  for (long long m : table.col_marginals) {
    if (m > 0) h_true -= (m / n) * std::log(m / n);
  }
  if (h_pred == 0.0 && h_true == 0.0) return 1.0;
  if (h_pred == 0.0 || h_true == 0.0) return 0.0;
  for (std::size_t r = 0; r < table.counts.size(); ++r) {
    for (std::size_t c = 0; c < table.counts[r].size(); ++c) {
      const long long m = table.counts[r][c];
      if (m == 0) continue;
      const double joint = m / n;
      mutual += joint * std::log(joint * n * n /
                                 (static_cast<double>(table.row_marginals[r]) *
                                  static_cast<double>(table.col_marginals[c])));
    }
  }
  const double value = mutual / std::sqrt(h_pred * h_true);
  return value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
}

}  // namespace relclust
