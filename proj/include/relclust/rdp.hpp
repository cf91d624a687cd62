// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relclust/bregman.hpp"
#include "relclust/types.hpp"

namespace relclust {

// Event emitted when an assignment pass opens a cluster: the founding point
// and the smallest augmented distance to the centers that existed at that
// moment (always > lambda).
struct NewClusterEvent {
  int point = -1;
  double min_distance = 0.0;
};

struct RdpState {
  std::vector<int> assignments;
  std::vector<int> counts;
  std::vector<std::vector<double>> centers;
  double xi1 = 0.0;
  double xi2 = 0.0;
  int iter = 0;
  std::vector<NewClusterEvent> creations;  // from the most recent pass

  int K() const { return static_cast<int>(centers.size()); }
};

struct RdpResult {
  Partition partition;
  std::vector<std::vector<double>> centers;
  std::vector<double> objective_trace;  // one value per completed iteration
  int iterations = 0;
};

struct KmeansResult {
  Partition partition;
  std::vector<std::vector<double>> centers;
  int iterations = 0;
};

// D(x, mu) - xi1 * f + xi2 * s. May be negative.
double augmented_distance(const DivergenceModel& model, std::span<const double> x,
                          std::span<const double> mu, int f, int s, double xi1,
                          double xi2);

// One-cluster starting state: every point assigned to the global mean,
// xi1 = ratio * xi0, xi2 = xi0.
RdpState rdp_init(const DataMatrix& data, const RdpHyperParams& hp,
                  const DivergenceModel& model);

// One sequential pass over the points. Each point joins the cluster with the
// smallest augmented distance if that distance is <= lambda, otherwise founds
// a new singleton cluster centered at itself. Friend/stranger counts use the
// assignments as already updated within this pass; centers stay fixed except
// for clusters opened during the pass.
RdpState rdp_assign_step(RdpState state, const DataMatrix& data,
                         const SideInfo& E, const RdpHyperParams& hp,
                         const DivergenceModel& model);

// Full algorithm: repeat {assign pass; drop empty clusters; recenter on the
// member means; record the objective; grow xi} until the assignments survive
// hp.stable_iters consecutive iterations or hp.max_iters is reached.
RdpResult rdp_means(const DataMatrix& data, const SideInfo& E,
                    const RdpHyperParams& hp, const DivergenceModel& model);

// rdp_means with no side information and xi frozen at zero.
RdpResult dp_means(const DataMatrix& data, const RdpHyperParams& hp,
                   const DivergenceModel& model);

// Lloyd iterations under the model divergence, initialized from k distinct
// data points chosen uniformly by seed. Stops when assignments stabilize or
// after 300 iterations.
KmeansResult kmeans(const DataMatrix& data, int k, const DivergenceModel& model,
                    std::uint64_t seed);

// Farthest-first traversal seeded at the global mean: lambda is the max-min
// divergence at the moment of the last of k-1 greedy additions (for k = 1,
// the largest divergence to the mean).
double lambda_kth_furthest(const DataMatrix& data, int k,
                           const DivergenceModel& model);

// sum_k sum_{i in I_k} [D(x_i, mu_k) - xi1 f_k^i + xi2 s_k^i] + lambda K,
// where each member counts its own in-cluster friends and strangers.
double objective(const DataMatrix& data, const SideInfo& E,
                 const Partition& partition,
                 const std::vector<std::vector<double>>& centers, double xi1,
                 double xi2, double lambda, const DivergenceModel& model);

}  // namespace relclust
