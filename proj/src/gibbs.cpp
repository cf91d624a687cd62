// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/gibbs.hpp"

#include <cmath>
#include <stdexcept>

namespace relclust {

namespace {

constexpr double kCredibilityClamp = 1.0 - 1e-9;

double clamp_credibility(double v) {
  return v >= 1.0 ? kCredibilityClamp : (v <= 0.0 ? 1.0 - kCredibilityClamp : v);
}

std::vector<std::span<const double>> member_rows(const DataMatrix& data,
                                                 const std::vector<int>& assignments,
                                                 int k) {
  std::vector<std::span<const double>> rows;
  for (int i = 0; i < data.rows(); ++i)
    if (assignments[i] == k) rows.push_back(data.row(i));
  return rows;
}

}  // namespace

void GibbsConfig::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("GibbsConfig: alpha must be positive");
  if (sweeps < 1) throw std::invalid_argument("GibbsConfig: sweeps must be positive");
  if (burn_in < 0 || burn_in >= sweeps)
    throw std::invalid_argument("GibbsConfig: need 0 <= burn_in < sweeps");
  if (thin < 1) throw std::invalid_argument("GibbsConfig: thin must be positive");
  if (cred.p >= 1.0 && cred.q >= 1.0)
    throw std::invalid_argument("GibbsConfig: p = 1 with q = 1 leaves the link ratio undefined");
  CredibilityParams clamped = cred;
  clamped.p = clamp_credibility(cred.p);
  clamped.q = clamp_credibility(cred.q);
  clamped.validate();
}

std::vector<double> gibbs_assignment_weights(
    int i, const std::vector<int>& assignments, const std::vector<int>& counts,
    const std::vector<std::vector<double>>& params, const DataMatrix& data,
    const SideInfo& E, const DivergenceModel& model, const PriorParams& prior,
    double p, double q, double alpha) {
  const int K = static_cast<int>(params.size());
  p = clamp_credibility(p);
  q = clamp_credibility(q);
  const double log_friend = std::log(p) - std::log1p(-q);
  const double log_stranger = std::log1p(-p) - std::log(q);

  std::vector<int> f(K, 0), s(K, 0);
  accumulate_friend_stranger(i, assignments, K, E, f, s);

  std::vector<double> logw(K + 1);
  const auto x = data.row(i);
  for (int k = 0; k < K; ++k) {
    if (counts[k] < 1)
      throw std::invalid_argument("gibbs_assignment_weights: empty cluster in counts");
    logw[k] = std::log(static_cast<double>(counts[k])) +
              log_likelihood(model, x, params[k]) + f[k] * log_friend +
              s[k] * log_stranger;
  }
  logw[K] = std::log(alpha) + log_marginal(model, prior, x);

  std::vector<double> w(K + 1);
  for (int k = 0; k <= K; ++k) w[k] = std::exp(logw[k]);
  return w;
}

std::pair<double, double> resample_credibility(const SideInfo& E,
                                               const Partition& partition,
                                               const CredibilityParams& cred,
                                               Rng& rng) {
  long long may_same = 0, maynot_same = 0, maynot_diff = 0, may_diff = 0;
  E.for_each_entry([&](int i, int j, Link link) {
    const bool same = partition.assignments[i] == partition.assignments[j];
    if (link == Link::May) {
      (same ? may_same : may_diff) += 1;
    } else {
      (same ? maynot_same : maynot_diff) += 1;
    }
  });
  const double p = rng.beta(cred.alpha_p + may_same, cred.beta_p + maynot_same);
  const double q = rng.beta(cred.alpha_q + maynot_diff, cred.beta_q + may_diff);
  return {clamp_credibility(p), clamp_credibility(q)};
}

GibbsState gibbs_sweep(GibbsState state, const DataMatrix& data,
                       const SideInfo& E, const DivergenceModel& model,
                       const PriorParams& prior, const GibbsConfig& cfg,
                       Rng& rng) {
  const int n = data.rows();
  const double log_friend = std::log(state.p) - std::log1p(-state.q);
  const double log_stranger = std::log1p(-state.p) - std::log(state.q);
  std::vector<int> f, s;

  for (int i = 0; i < n; ++i) {
    // remove i; drop its cluster if that empties it
    const int old = state.assignments[i];
    state.assignments[i] = -1;
    if (--state.counts[old] == 0) {
      const std::vector<int> map = compact_empty_clusters(state.assignments, state.counts);
      std::vector<std::vector<double>> kept;
      kept.reserve(state.params.size() - 1);
      for (std::size_t k = 0; k < state.params.size(); ++k)
        if (map[k] >= 0) kept.push_back(std::move(state.params[k]));
      state.params = std::move(kept);
    }

    const int K = state.K();
    f.assign(K, 0);
    s.assign(K, 0);
    accumulate_friend_stranger(i, state.assignments, K, E, f, s);
    std::vector<double> logw(K + 1);
    const auto x = data.row(i);
    for (int k = 0; k < K; ++k) {
      logw[k] = std::log(static_cast<double>(state.counts[k])) +
                log_likelihood(model, x, state.params[k]) + f[k] * log_friend +
                s[k] * log_stranger;
    }
    logw[K] = std::log(cfg.alpha) + log_marginal(model, prior, x);

    const int pick = static_cast<int>(rng.categorical_from_log(logw));
    if (pick == K) {
      state.params.push_back(posterior_sample(model, prior, {x}, rng));
      state.counts.push_back(0);
    }
    state.assignments[i] = pick;
    ++state.counts[pick];
  }

  // conjugate refresh of every cluster parameter
  for (int k = 0; k < state.K(); ++k)
    state.params[k] =
        posterior_sample(model, prior, member_rows(data, state.assignments, k), rng);

  if (cfg.cred.learn) {
    Partition part;
    part.assignments = state.assignments;
    part.counts = state.counts;
    const auto [p, q] = resample_credibility(E, part, cfg.cred, rng);
    state.p = p;
    state.q = q;
  }
  return state;
}

double log_joint_score(const DataMatrix& data, const SideInfo& E,
                       const Partition& partition, const DivergenceModel& model,
                       const PriorParams& prior, double alpha, double p,
                       double q) {
  p = clamp_credibility(p);
  q = clamp_credibility(q);
  const int n = partition.n();
  // CRP mass of the labeled partition
  double score = partition.K() * std::log(alpha);
  for (int c : partition.counts) score += std::lgamma(static_cast<double>(c));
  for (int i = 0; i < n; ++i) score -= std::log(alpha + i);

  for (int k = 0; k < partition.K(); ++k) {
    std::vector<std::span<const double>> rows;
    for (int i = 0; i < n; ++i)
      if (partition.assignments[i] == k) rows.push_back(data.row(i));
    score += log_marginal_rows(model, prior, rows);
  }

  E.for_each_entry([&](int i, int j, Link link) {
    const bool same = partition.assignments[i] == partition.assignments[j];
    if (same)
      score += link == Link::May ? std::log(p) : std::log1p(-p);
    else
      score += link == Link::MayNot ? std::log(q) : std::log1p(-q);
  });
  return score;
}

GibbsTrace run_gibbs(const DataMatrix& data, const SideInfo& E,
                     const DivergenceModel& model, const PriorParams& prior,
                     const GibbsConfig& cfg) {
  cfg.validate();
  if (data.rows() != E.n())
    throw std::invalid_argument("run_gibbs: side info size mismatch");
  Rng rng(cfg.seed);

  GibbsState state;
  state.assignments.assign(data.rows(), 0);
  state.counts.assign(1, data.rows());
  state.p = clamp_credibility(cfg.cred.p);
  state.q = clamp_credibility(cfg.cred.q);
  std::vector<std::span<const double>> all_rows;
  for (int i = 0; i < data.rows(); ++i) all_rows.push_back(data.row(i));
  state.params.push_back(posterior_sample(model, prior, all_rows, rng));

  GibbsTrace trace;
  trace.log_joint.reserve(cfg.sweeps);
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    state = gibbs_sweep(std::move(state), data, E, model, prior, cfg, rng);
    Partition part;
    part.assignments = state.assignments;
    part.counts = state.counts;
    trace.log_joint.push_back(log_joint_score(data, E, part, model, prior,
                                              cfg.alpha, state.p, state.q));
    if (sweep >= cfg.burn_in && (sweep - cfg.burn_in + 1) % cfg.thin == 0) {
      trace.samples.push_back(std::move(part));
      trace.sample_sweeps.push_back(sweep);
      trace.p_samples.push_back(state.p);
      trace.q_samples.push_back(state.q);
    }
  }
  return trace;
}

Partition map_partition(const GibbsTrace& trace) {
  if (trace.samples.empty())
    throw std::invalid_argument("map_partition: empty trace");
  std::size_t best = 0;
  for (std::size_t s = 1; s < trace.samples.size(); ++s) {
    if (trace.log_joint[trace.sample_sweeps[s]] >
        trace.log_joint[trace.sample_sweeps[best]])
      best = s;
  }
  return trace.samples[best];
}

}  // namespace relclust
