// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/rdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relclust/rng.hpp"

namespace relclust {

namespace {

std::vector<double> global_mean(const DataMatrix& data,
                                const DivergenceModel& model) {
  std::vector<std::span<const double>> rows;
  rows.reserve(data.rows());
  for (int i = 0; i < data.rows(); ++i) rows.push_back(data.row(i));
  return cluster_mean(model, rows);
}

// member means per cluster; counts must already be positive for every id
std::vector<std::vector<double>> recompute_centers(
    const DataMatrix& data, const std::vector<int>& assignments, int K,
    const DivergenceModel& model) {
  std::vector<std::vector<std::span<const double>>> members(K);
  for (int i = 0; i < data.rows(); ++i)
    members[assignments[i]].push_back(data.row(i));
  std::vector<std::vector<double>> centers(K);
  for (int k = 0; k < K; ++k) centers[k] = cluster_mean(model, members[k]);
  return centers;
}

}  // namespace

double augmented_distance(const DivergenceModel& model, std::span<const double> x,
                          std::span<const double> mu, int f, int s, double xi1,
                          double xi2) {
  if (f < 0 || s < 0)
    throw std::invalid_argument("augmented_distance: negative counts");
  if (xi1 < 0.0 || xi2 < 0.0)
    throw std::invalid_argument("augmented_distance: negative weights");
  return divergence(model, x, mu) - xi1 * f + xi2 * s;
}

RdpState rdp_init(const DataMatrix& data, const RdpHyperParams& hp,
                  const DivergenceModel& model) {
  hp.validate();
  RdpState state;
  state.assignments.assign(data.rows(), 0);
  state.counts.assign(1, data.rows());
  state.centers.push_back(global_mean(data, model));
  state.xi2 = hp.xi0;
  state.xi1 = hp.xi1_xi2_ratio * hp.xi0;
  state.iter = 0;
  return state;
}

RdpState rdp_assign_step(RdpState state, const DataMatrix& data,
                         const SideInfo& E, const RdpHyperParams& hp,
                         const DivergenceModel& model) {
  const int n = data.rows();
  if (E.n() != n)
    throw std::invalid_argument("rdp_assign_step: side info size mismatch");
  state.creations.clear();
  std::vector<int> f, s;
  for (int i = 0; i < n; ++i) {
    const int K = state.K();
    f.assign(K, 0);
    s.assign(K, 0);
    accumulate_friend_stranger(i, state.assignments, K, E, f, s);
    int best = -1;
    double best_value = std::numeric_limits<double>::infinity();
    const auto x = data.row(i);
    for (int k = 0; k < K; ++k) {
      const double value =
          divergence(model, x, state.centers[k]) - state.xi1 * f[k] + state.xi2 * s[k];
      if (value < best_value) {
        best_value = value;
        best = k;
      }
    }
    if (best_value > hp.lambda) {
      // every existing center is worse than opening a new cluster here
      state.creations.push_back({i, best_value});
      best = K;
      state.centers.emplace_back(x.begin(), x.end());
      state.counts.push_back(0);
    }
    --state.counts[state.assignments[i]];
    ++state.counts[best];
    state.assignments[i] = best;
  }
  return state;
}

namespace {

RdpResult rdp_run(const DataMatrix& data, const SideInfo& E,
                  const RdpHyperParams& hp, const DivergenceModel& model) {
  hp.validate();
  if (data.rows() < 1) throw std::invalid_argument("rdp_means: empty data");
  const double xi_cap = hp.effective_xi_cap();

  RdpState state = rdp_init(data, hp, model);
  RdpResult result;
  std::vector<int> previous = state.assignments;
  int stable = 0;

  for (int iter = 1; iter <= hp.max_iters; ++iter) {
    state = rdp_assign_step(std::move(state), data, E, hp, model);
    compact_empty_clusters(state.assignments, state.counts);
    state.centers = recompute_centers(
        data, state.assignments, static_cast<int>(state.counts.size()), model);
    state.iter = iter;

    Partition part;
    part.assignments = state.assignments;
    part.counts = state.counts;
    result.objective_trace.push_back(objective(
        data, E, part, state.centers, state.xi1, state.xi2, hp.lambda, model));
    result.iterations = iter;

    stable = state.assignments == previous ? stable + 1 : 0;
    previous = state.assignments;
    if (stable >= hp.stable_iters) break;

    state.xi2 = std::min(state.xi2 * hp.xi_rate, xi_cap);
    state.xi1 = hp.xi1_xi2_ratio * state.xi2;
  }

  result.partition.assignments = std::move(state.assignments);
  result.partition.counts = std::move(state.counts);
  result.partition.validate();
  result.centers = std::move(state.centers);
  return result;
}

}  // namespace

RdpResult rdp_means(const DataMatrix& data, const SideInfo& E,
                    const RdpHyperParams& hp, const DivergenceModel& model) {
  return rdp_run(data, E, hp, model);
}

RdpResult dp_means(const DataMatrix& data, const RdpHyperParams& hp,
                   const DivergenceModel& model) {
  RdpHyperParams frozen = hp;
  frozen.xi0 = 0.0;
  frozen.xi_rate = 1.0;
  return rdp_run(data, SideInfo(data.rows()), frozen, model);
}

KmeansResult kmeans(const DataMatrix& data, int k, const DivergenceModel& model,
                    std::uint64_t seed) {
  const int n = data.rows();
  if (k < 1 || k > n)
    throw std::invalid_argument("kmeans: k must lie in 1..n");

  Rng rng(seed);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle_prefix(order, static_cast<std::size_t>(k));
  std::vector<std::vector<double>> centers(k);
  for (int c = 0; c < k; ++c) {
    const auto row = data.row(order[c]);
    centers[c].assign(row.begin(), row.end());
  }

  std::vector<int> assignments(n, -1);
  KmeansResult result;
  for (int iter = 1; iter <= 300; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_value = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double value = divergence(model, data.row(i), centers[c]);
        if (value < best_value) {
          best_value = value;
          best = c;
        }
      }
      if (assignments[i] != best) {
        assignments[i] = best;
        changed = true;
      }
    }
    std::vector<std::vector<std::span<const double>>> members(k);
    for (int i = 0; i < n; ++i) members[assignments[i]].push_back(data.row(i));
    for (int c = 0; c < k; ++c) {
      if (!members[c].empty()) centers[c] = cluster_mean(model, members[c]);
    }
    result.iterations = iter;
    if (!changed) break;
  }

  std::vector<int> counts(k, 0);
  for (int z : assignments) ++counts[z];
  const std::vector<int> map = compact_empty_clusters(assignments, counts);
  std::vector<std::vector<double>> kept;
  for (int c = 0; c < k; ++c)
    if (map[c] >= 0) kept.push_back(std::move(centers[c]));
  result.partition.assignments = std::move(assignments);
  result.partition.counts = std::move(counts);
  result.partition.validate();
  result.centers = std::move(kept);
  return result;
}

double lambda_kth_furthest(const DataMatrix& data, int k,
                           const DivergenceModel& model) {
  const int n = data.rows();
  if (k < 1 || k > n)
    throw std::invalid_argument("lambda_kth_furthest: k must lie in 1..n");
  const std::vector<double> mean = global_mean(data, model);
  std::vector<double> min_div(n);
  for (int i = 0; i < n; ++i) min_div[i] = divergence(model, data.row(i), mean);

  const auto max_entry = [&]() {
    int arg = 0;
    for (int i = 1; i < n; ++i)
      if (min_div[i] > min_div[arg]) arg = i;
    return arg;
  };

  int arg = max_entry();
  double lambda = min_div[arg];
  for (int t = 1; t < k; ++t) {
    arg = max_entry();
    lambda = min_div[arg];
    const auto added = data.row(arg);
    for (int i = 0; i < n; ++i)
      min_div[i] = std::min(min_div[i], divergence(model, data.row(i), added));
  }
  return lambda;
}

double objective(const DataMatrix& data, const SideInfo& E,
                 const Partition& partition,
                 const std::vector<std::vector<double>>& centers, double xi1,
                 double xi2, double lambda, const DivergenceModel& model) {
  if (partition.n() != data.rows() || partition.K() != static_cast<int>(centers.size()))
    throw std::invalid_argument("objective: inconsistent shapes");
  double total = lambda * partition.K();
  for (int i = 0; i < data.rows(); ++i) {
    const int k = partition.assignments[i];
    total += divergence(model, data.row(i), centers[k]);
    for (const auto& [j, link] : E.neighbors(i)) {
      if (partition.assignments[j] != k) continue;
      total += link == Link::May ? -xi1 : xi2;
    }
  }
  return total;
}

}  // namespace relclust
