// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <span>
#include <vector>

#include "relclust/types.hpp"

namespace relclust {

// Joint label-count table between a predicted and a reference partition.
// Labels may be arbitrary ints; they are factor-encoded on construction.
struct ContingencyTable {
  int n = 0;
  std::vector<std::vector<long long>> counts;  // K_pred x K_true
  std::vector<long long> row_marginals;
  std::vector<long long> col_marginals;

  static ContingencyTable build(std::span<const int> pred,
                                std::span<const int> truth);
};

// Pairwise F-measure over unordered instance pairs: harmonic mean of pair
// precision and recall, with 0/0 ratios taken as 0.
double pairwise_f(std::span<const int> pred, std::span<const int> truth);

// Hubert-Arabie adjusted Rand index. Degenerate tables where Max == Expected
// (both partitions trivial) score 1.
double adjusted_rand(std::span<const int> pred, std::span<const int> truth);

// Mutual information normalized by the geometric mean of the entropies
// (natural logs). Both partitions trivial -> 1; exactly one entropy zero -> 0.
double nmi(std::span<const int> pred, std::span<const int> truth);

inline double pairwise_f(const Partition& pred, std::span<const int> truth) {
  return pairwise_f(std::span<const int>(pred.assignments), truth);
}
inline double adjusted_rand(const Partition& pred, std::span<const int> truth) {
  return adjusted_rand(std::span<const int>(pred.assignments), truth);
}
inline double nmi(const Partition& pred, std::span<const int> truth) {
  return nmi(std::span<const int>(pred.assignments), truth);
}

}  // namespace relclust
