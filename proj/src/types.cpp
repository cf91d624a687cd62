// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relclust {

DataMatrix::DataMatrix(int rows, int cols, std::vector<double> values,
                       DataKind kind)
    : rows_(rows), cols_(cols), kind_(kind), values_(std::move(values)) {
  if (rows_ < 1 || cols_ < 1)
    throw std::invalid_argument("DataMatrix: need rows >= 1 and cols >= 1");
  if (values_.size() != static_cast<std::size_t>(rows_) * cols_)
    throw std::invalid_argument("DataMatrix: value count does not match shape");
  for (double v : values_) {
    if (!std::isfinite(v))
      throw std::invalid_argument("DataMatrix: non-finite value");
    if (kind_ == DataKind::Counts && v < 0.0)
      throw std::invalid_argument("DataMatrix: negative value in Counts data");
  }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                 DataKind kind) {
  if (rows.empty()) throw std::invalid_argument("DataMatrix: no rows");
  const int d = static_cast<int>(rows[0].size());
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != d)
      throw std::invalid_argument("DataMatrix: ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return DataMatrix(static_cast<int>(rows.size()), d, std::move(flat), kind);
}

std::vector<double> DataMatrix::column_means() const {
  std::vector<double> mean(cols_, 0.0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) mean[j] += at(i, j);
  for (double& m : mean) m /= rows_;
  return mean;
}

std::vector<double> DataMatrix::column_variances() const {
  const std::vector<double> mean = column_means();
  std::vector<double> var(cols_, 0.0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const double c = at(i, j) - mean[j];
      var[j] += c * c;
    }
  for (double& v : var) v /= rows_;
  return var;
}

SideInfo::SideInfo(int n) : n_(n), adj_(n) {
  if (n < 1) throw std::invalid_argument("SideInfo: n must be >= 1");
}

void SideInfo::add(int i, int j, Link link) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("SideInfo::add: index out of range");
  if (i == j) throw std::invalid_argument("SideInfo::add: self links forbidden");
  if (lookup(i, j))
    throw std::invalid_argument("SideInfo::add: pair already has a value");
  adj_[i].emplace_back(j, link);
  adj_[j].emplace_back(i, link);
  ++size_;
}

std::optional<Link> SideInfo::lookup(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::out_of_range("SideInfo::lookup: index out of range");
  const auto& row = adj_[i].size() <= adj_[j].size() ? adj_[i] : adj_[j];
  const int other = adj_[i].size() <= adj_[j].size() ? j : i;
  for (const auto& [k, link] : row)
    if (k == other) return link;
  return std::nullopt;
}

Partition Partition::single_cluster(int n) {
  if (n < 1) throw std::invalid_argument("Partition: n must be >= 1");
  Partition p;
  p.assignments.assign(n, 0);
  p.counts.assign(1, n);
  return p;
}

Partition Partition::from_dense(std::vector<int> assignments, int K) {
  Partition p;
  p.assignments = std::move(assignments);
  p.counts.assign(K, 0);
  for (int z : p.assignments) {
    if (z < 0 || z >= K)
      throw std::invalid_argument("Partition: assignment outside 0..K-1");
    ++p.counts[z];
  }
  p.validate();
  return p;
}

Partition Partition::from_labels(std::span<const int> labels) {
  std::vector<int> remapped(labels.size());
  std::vector<int> seen;  // label value per new id, in first-appearance order
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = std::find(seen.begin(), seen.end(), labels[i]);
    if (it == seen.end()) {
      remapped[i] = static_cast<int>(seen.size());
      seen.push_back(labels[i]);
    } else {
      remapped[i] = static_cast<int>(it - seen.begin());
    }
  }
  return from_dense(std::move(remapped), static_cast<int>(seen.size()));
}

void Partition::validate() const {
  if (assignments.empty()) throw std::invalid_argument("Partition: empty");
  if (counts.empty()) throw std::invalid_argument("Partition: no clusters");
  std::vector<int> tally(counts.size(), 0);
  for (int z : assignments) {
    if (z < 0 || z >= K())
      throw std::invalid_argument("Partition: assignment outside 0..K-1");
    ++tally[z];
  }
  for (int k = 0; k < K(); ++k) {
    if (counts[k] != tally[k])
      throw std::invalid_argument("Partition: counts inconsistent");
    if (counts[k] == 0) throw std::invalid_argument("Partition: empty cluster");
  }
}

std::vector<int> compact_empty_clusters(std::vector<int>& assignments,
                                        std::vector<int>& counts) {
  const int K = static_cast<int>(counts.size());
  std::vector<int> map(K, -1);
  int next = 0;
  for (int k = 0; k < K; ++k)
    if (counts[k] > 0) map[k] = next++;
  if (next == K) return map;
  std::vector<int> new_counts(next, 0);
  for (int k = 0; k < K; ++k)
    if (map[k] >= 0) new_counts[map[k]] = counts[k];
  counts = std::move(new_counts);
  for (int& z : assignments) {
    if (z >= 0 && z < K && map[z] >= 0) z = map[z];
  }
  return map;
}

void CredibilityParams::validate() const {
  if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0))
    throw std::invalid_argument("CredibilityParams: p and q must lie in (0,1)");
  if (!(alpha_p > 0.0 && beta_p > 0.0 && alpha_q > 0.0 && beta_q > 0.0))
    throw std::invalid_argument("CredibilityParams: Beta hyperparameters must be positive");
}

void RdpHyperParams::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("RdpHyperParams: lambda must be positive");
  if (!(xi0 >= 0.0)) throw std::invalid_argument("RdpHyperParams: xi0 must be nonnegative");
  if (!(xi_rate >= 1.0)) throw std::invalid_argument("RdpHyperParams: xi_rate must be >= 1");
  if (!(xi1_xi2_ratio > 0.0))
    throw std::invalid_argument("RdpHyperParams: xi1_xi2_ratio must be positive");
  if (stable_iters < 1 || max_iters < stable_iters)
    throw std::invalid_argument("RdpHyperParams: need max_iters >= stable_iters >= 1");
}

FriendStrangerCounts friend_stranger_counts(int i, const Partition& part,
                                            const SideInfo& E) {
  if (i < 0 || i >= part.n())
    throw std::out_of_range("friend_stranger_counts: index out of range");
  if (part.n() != E.n())
    throw std::invalid_argument("friend_stranger_counts: partition/side-info size mismatch");
  FriendStrangerCounts out;
  out.friends.assign(part.K(), 0);
  out.strangers.assign(part.K(), 0);
  accumulate_friend_stranger(i, part.assignments, part.K(), E, out.friends,
                             out.strangers);
  return out;
}

void accumulate_friend_stranger(int i, const std::vector<int>& assignments,
                                int K, const SideInfo& E, std::vector<int>& f,
                                std::vector<int>& s) {
  for (const auto& [j, link] : E.neighbors(i)) {
    const int k = assignments[j];
    if (k < 0 || k >= K) continue;
    if (link == Link::May)
      ++f[k];
    else
      ++s[k];
  }
}

}  // namespace relclust
