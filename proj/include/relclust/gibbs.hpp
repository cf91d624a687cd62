// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "relclust/bregman.hpp"
#include "relclust/rng.hpp"
#include "relclust/types.hpp"

namespace relclust {

struct GibbsConfig {
  double alpha = 1.0;  // DP concentration
  CredibilityParams cred;
  int sweeps = 1000;
  int burn_in = 500;
  int thin = 5;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GibbsTrace {
  std::vector<Partition> samples;   // post burn-in, thinned
  std::vector<int> sample_sweeps;   // sweep index of each sample
  std::vector<double> p_samples;
  std::vector<double> q_samples;
  std::vector<double> log_joint;    // collapsed score, one per sweep
};

// Mutable chain state: assignments plus explicitly instantiated cluster
// parameters, refreshed from their conjugate posteriors once per sweep.
struct GibbsState {
  std::vector<int> assignments;
  std::vector<int> counts;
  std::vector<std::vector<double>> params;  // theta*_k
  double p = 0.9;
  double q = 0.9;

  int K() const { return static_cast<int>(params.size()); }
};

// The K+1 unnormalized assignment weights for instance i (which must already
// be removed from the counts): existing cluster k gets
//   n_{-i,k} * p(x_i | theta*_k) * (p/(1-q))^{f_k} * ((1-p)/q)^{s_k}
// and a new cluster gets alpha * marginal(x_i). Composed in log space; the
// returned values are the plain exponentials (the sampler itself draws from
// the log weights with max-subtraction).
std::vector<double> gibbs_assignment_weights(
    int i, const std::vector<int>& assignments, const std::vector<int>& counts,
    const std::vector<std::vector<double>>& params, const DataMatrix& data,
    const SideInfo& E, const DivergenceModel& model, const PriorParams& prior,
    double p, double q, double alpha);

// Beta-posterior draw of (p, q) given the co-membership pattern of the
// current assignments.
std::pair<double, double> resample_credibility(const SideInfo& E,
                                               const Partition& partition,
                                               const CredibilityParams& cred,
                                               Rng& rng);

// One full sweep: sequential reassignment of every instance followed by a
// conjugate refresh of every cluster parameter and (optionally) of (p, q).
GibbsState gibbs_sweep(GibbsState state, const DataMatrix& data,
                       const SideInfo& E, const DivergenceModel& model,
                       const PriorParams& prior, const GibbsConfig& cfg,
                       Rng& rng);

// Collapsed score of a partition: CRP prior mass, per-cluster marginal
// likelihood, and the side-information likelihood at (p, q).
double log_joint_score(const DataMatrix& data, const SideInfo& E,
                       const Partition& partition, const DivergenceModel& model,
                       const PriorParams& prior, double alpha, double p,
                       double q);

// Runs the chain from the all-in-one-cluster state and records the thinned
// post burn-in trace.
GibbsTrace run_gibbs(const DataMatrix& data, const SideInfo& E,
                     const DivergenceModel& model, const PriorParams& prior,
                     const GibbsConfig& cfg);

// The sampled partition with the highest recorded log-joint.
Partition map_partition(const GibbsTrace& trace);

}  // namespace relclust
