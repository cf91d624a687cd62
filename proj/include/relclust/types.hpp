// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relclust {

enum class DataKind { Real, Counts };

// n x d row-major observation matrix. Counts data must be nonnegative; every
// value must be finite. Immutable after construction.
class DataMatrix {
public:
  DataMatrix(int rows, int cols, std::vector<double> values, DataKind kind);

  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows,
                              DataKind kind);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  DataKind kind() const { return kind_; }

  std::span<const double> row(int i) const {
    return {values_.data() + static_cast<std::size_t>(i) * cols_,
            static_cast<std::size_t>(cols_)};
  }
  double at(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const std::vector<double>& values() const { return values_; }

  std::vector<double> column_means() const;
  std::vector<double> column_variances() const;  // population variance

private:
  int rows_;
  int cols_;
  DataKind kind_;
  std::vector<double> values_;
};

enum class Link : std::uint8_t { MayNot = 0, May = 1 };

// Sparse symmetric pairwise relation matrix. An absent pair means no side
// information; a pair holds exactly one value. Self links are rejected.
class SideInfo {
public:
  explicit SideInfo(int n);

  void add(int i, int j, Link link);

  int n() const { return n_; }
  std::size_t size() const { return size_; }

  const std::vector<std::pair<int, Link>>& neighbors(int i) const {
    return adj_.at(i);
  }

  std::optional<Link> lookup(int i, int j) const;

  // visits each stored pair once with i < j
  template <class F>
  void for_each_entry(F&& f) const {
    for (int i = 0; i < n_; ++i) {
      for (const auto& [j, link] : adj_[i]) {
        if (i < j) f(i, j, link);
      }
    }
  }

private:
  int n_;
  std::size_t size_ = 0;
  std::vector<std::vector<std::pair<int, Link>>> adj_;
};

// Assignment of n instances to K dense cluster ids 0..K-1 with per-cluster
// sizes. validate() enforces the no-empty-cluster invariant.
struct Partition {
  std::vector<int> assignments;
  std::vector<int> counts;

  int n() const { return static_cast<int>(assignments.size()); }
  int K() const { return static_cast<int>(counts.size()); }

  static Partition single_cluster(int n);
  // accepts dense ids 0..K-1 covering every id
  static Partition from_dense(std::vector<int> assignments, int K);
  // factor-encodes arbitrary label values in first-appearance order
  static Partition from_labels(std::span<const int> labels);

  void validate() const;

  bool operator==(const Partition& other) const = default;
};

// Relabels cluster ids so empty ids disappear and survivors keep their
// relative order. Returns old-id -> new-id (-1 for removed ids).
std::vector<int> compact_empty_clusters(std::vector<int>& assignments,
                                        std::vector<int>& counts);

struct CredibilityParams {
  double p = 0.9;
  double q = 0.9;
  bool learn = true;
  double alpha_p = 9.0;
  double beta_p = 1.0;
  double alpha_q = 9.0;
  double beta_q = 1.0;

  void validate() const;
};

struct RdpHyperParams {
  double lambda = 1.0;
  double xi0 = 1e-3;
  double xi_rate = 2.0;
  double xi1_xi2_ratio = 1.0;
  int max_iters = 500;
  int stable_iters = 20;
  double xi_cap = 0.0;  // 0 -> 1e6 * xi0

  double effective_xi_cap() const { return xi_cap > 0.0 ? xi_cap : 1e6 * xi0; }
  void validate() const;
};

struct FriendStrangerCounts {
  std::vector<int> friends;    // f_k: may-linked neighbors of i in cluster k
  std::vector<int> strangers;  // s_k: may-not-linked neighbors of i in cluster k
};

// Counts i's linked neighbors per cluster, excluding i itself; pairs without
// side information contribute to neither count.
FriendStrangerCounts friend_stranger_counts(int i, const Partition& part,
                                            const SideInfo& E);

// Low-level variant over a raw assignment vector: entries outside 0..K-1
// (e.g. a removed instance) are skipped. f and s must have size K.
void accumulate_friend_stranger(int i, const std::vector<int>& assignments,
                                int K, const SideInfo& E, std::vector<int>& f,
                                std::vector<int>& s);

}  // namespace relclust
