// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "relclust/metrics.hpp"
#include "relclust/spectral.hpp"

namespace relclust {

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "kmeans") return Algorithm::Kmeans;
  if (name == "dp_means") return Algorithm::DpMeans;
  if (name == "rdp_means") return Algorithm::RdpMeans;
  if (name == "tvclust") return Algorithm::TvClust;
  if (name == "spectral") return Algorithm::Spectral;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Kmeans: return "kmeans";
    case Algorithm::DpMeans: return "dp_means";
    case Algorithm::RdpMeans: return "rdp_means";
    case Algorithm::TvClust: return "tvclust";
    case Algorithm::Spectral: return "spectral";
  }
  throw std::invalid_argument("unknown algorithm");
}

LabeledData gen_topic_counts(const TopicSpec& spec, std::uint64_t seed) {
  if (spec.topics < 1 || spec.docs_per_topic < 1 || spec.dim < spec.topics ||
      spec.doc_length < 1)
    throw std::invalid_argument("gen_topic_counts: bad spec");
  if (!(spec.background_weight >= 0.0 && spec.background_weight < 1.0))
    throw std::invalid_argument("gen_topic_counts: background_weight must lie in [0,1)");

  Rng rng(seed);
  const int stride = spec.dim / spec.topics;
  const int block = std::min(spec.dim, stride + stride / 2);  // half-overlap chain
  const double bg = spec.background_weight / spec.dim;
  const double fg = (1.0 - spec.background_weight) / block;

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<double> cumulative(spec.dim);
  for (int t = 0; t < spec.topics; ++t) {
    double acc = 0.0;
    for (int c = 0; c < spec.dim; ++c) {
      const int offset = ((c - t * stride) % spec.dim + spec.dim) % spec.dim;
      acc += bg + (offset < block ? fg : 0.0);
      cumulative[c] = acc;
    }
    for (int d = 0; d < spec.docs_per_topic; ++d) {
      std::vector<double> counts(spec.dim, 0.0);
      for (int w = 0; w < spec.doc_length; ++w) {
        const double u = rng.uniform01() * acc;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        const auto idx = std::min<std::size_t>(it - cumulative.begin(), spec.dim - 1);
        counts[idx] += 1.0;
      }
      rows.push_back(std::move(counts));
      labels.push_back(t);
    }
  }
  return LabeledData{DataMatrix::from_rows(rows, DataKind::Counts),
                     std::move(labels)};
}

DatasetSpec DatasetSpec::csv(std::string path, std::optional<int> label_column,
                             DataKind kind) {
  DatasetSpec s;
  s.source = Source::Csv;
  s.path = std::move(path);
  s.label_column = label_column;
  s.kind = kind;
  const auto slash = s.path.find_last_of('/');
  const auto stem = slash == std::string::npos ? s.path : s.path.substr(slash + 1);
  const auto dot = stem.find_last_of('.');
  s.name = dot == std::string::npos ? stem : stem.substr(0, dot);
  return s;
}

DatasetSpec DatasetSpec::make_pattern(Pattern p, int n, double noise_sd,
                                      std::uint64_t seed) {
  DatasetSpec s;
  s.source = Source::Pattern;
  s.pattern = p;
  s.pattern_n = n;
  s.pattern_noise_sd = noise_sd;
  s.data_seed = seed;
  s.name = pattern_name(p);
  return s;
}

DatasetSpec DatasetSpec::make_topics(TopicSpec spec, std::uint64_t seed) {
  DatasetSpec s;
  s.source = Source::Topics;
  s.topics = spec;
  s.data_seed = seed;
  s.name = "topics";
  return s;
}

void RunConfig::validate() const {
  const bool needs_k = algorithm != Algorithm::TvClust;
  if (needs_k && k.has_value() == k_deviation.has_value())
    throw std::invalid_argument(
        "RunConfig: set exactly one of k and k-deviation for this algorithm");
  if (k && *k < 1) throw std::invalid_argument("RunConfig: k must be positive");
  if (trials < 1) throw std::invalid_argument("RunConfig: trials must be positive");
  if (!(laplace_alpha >= 0.0))
    throw std::invalid_argument("RunConfig: laplace_alpha must be nonnegative");
  noise.validate();
  if (algorithm == Algorithm::TvClust) gibbs.validate();
}

namespace {

struct PreparedData {
  DataMatrix raw;         // as loaded or generated
  DataMatrix clustering;  // the view the divergence algorithms see
  std::optional<std::vector<int>> labels;
  DivergenceModel model;
  PriorParams prior;
  bool gibbs_on_raw = false;  // multinomial sampler consumes raw counts
};

double auto_sigma2(const DataMatrix& data) {
  const auto var = data.column_variances();
  double mean = 0.0;
  for (double v : var) mean += v;
  mean /= var.empty() ? 1.0 : static_cast<double>(var.size());
  return mean > 0.0 ? mean / 10.0 : 1.0;
}

PreparedData prepare_data(const RunConfig& cfg) {
  DataMatrix raw(1, 1, {0.0}, DataKind::Real);
  std::optional<std::vector<int>> labels;
  switch (cfg.dataset.source) {
    case DatasetSpec::Source::Csv: {
      LoadedCsv loaded =
          load_csv(cfg.dataset.path, cfg.dataset.label_column, cfg.dataset.kind);
      raw = std::move(loaded.data);
      labels = std::move(loaded.labels);
      break;
    }
    case DatasetSpec::Source::Pattern: {
      LabeledData gen =
          gen_pattern(cfg.dataset.pattern, cfg.dataset.pattern_n,
                      cfg.dataset.pattern_noise_sd, cfg.dataset.data_seed);
      raw = std::move(gen.data);
      labels = std::move(gen.labels);
      break;
    }
    case DatasetSpec::Source::Topics: {
      LabeledData gen = gen_topic_counts(cfg.dataset.topics, cfg.dataset.data_seed);
      raw = std::move(gen.data);
      labels = std::move(gen.labels);
      break;
    }
  }

  const bool multinomial =
      cfg.model == ModelChoice::Multinomial ||
      (cfg.model == ModelChoice::Auto && raw.kind() == DataKind::Counts);
  if (multinomial && raw.kind() != DataKind::Counts)
    throw std::invalid_argument("run_experiment: multinomial model needs Counts data");

  if (multinomial) {
    DataMatrix smoothed = laplace_smooth_rows(raw, cfg.laplace_alpha);
    DivergenceModel model = DivergenceModel::multinomial(raw.cols(), cfg.laplace_alpha);
    PriorParams prior = PriorParams::multinomial_default(raw.cols());
    return PreparedData{std::move(raw), std::move(smoothed), std::move(labels),
                        model, std::move(prior), true};
  }

  DataMatrix view = cfg.standardize && raw.kind() == DataKind::Real
                        ? standardize_columns(raw)
                        : DataMatrix(raw);
  const double sigma2 = cfg.sigma2 > 0.0 ? cfg.sigma2 : auto_sigma2(view);
  DivergenceModel model = DivergenceModel::spherical_gaussian(view.cols(), sigma2);
  PriorParams prior = PriorParams::gaussian_default(view);
  return PreparedData{std::move(raw), std::move(view), std::move(labels),
                      model, std::move(prior), false};
}

int effective_k(const RunConfig& cfg, const std::optional<std::vector<int>>& labels) {
  if (cfg.k) return *cfg.k;
  if (!labels)
    throw std::invalid_argument("run_experiment: k-deviation needs ground-truth labels");
  int truth_k = 0;
  {
    std::vector<int> seen;
    for (int v : *labels)
      if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
    truth_k = static_cast<int>(seen.size());
  }
  const int k = truth_k - cfg.k_deviation.value_or(0);
  if (k < 1)
    throw std::invalid_argument("run_experiment: non-positive effective k");
  return k;
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg) {
  cfg.validate();
  const PreparedData prep = prepare_data(cfg);
  const int n = prep.clustering.rows();

  const bool needs_k = cfg.algorithm != Algorithm::TvClust;
  int k_eff = 0;
  double lambda = 0.0;
  if (needs_k) {
    k_eff = effective_k(cfg, prep.labels);
    if (k_eff > n) throw std::invalid_argument("run_experiment: k exceeds n");
    if (cfg.algorithm != Algorithm::Kmeans) {
      const DivergenceModel lambda_model =
          cfg.algorithm == Algorithm::Spectral
              ? DivergenceModel::spherical_gaussian(prep.clustering.cols(), 0.5)
              : prep.model;
      lambda = lambda_kth_furthest(prep.clustering, k_eff, lambda_model);
      if (!(lambda > 0.0))
        throw std::invalid_argument("run_experiment: degenerate data, lambda is zero");
    }
  }

  RunResult result;
  result.lambda = lambda;
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed_t = cfg.seed + static_cast<std::uint64_t>(t);

    SideInfo E(n);
    if (!cfg.constraints_path.empty()) {
      E = load_constraints_csv(cfg.constraints_path, n);
    } else if (cfg.noise.r > 0.0) {
      if (!prep.labels)
        throw std::invalid_argument(
            "run_experiment: constraint sampling needs ground-truth labels");
      NoiseSpec noise = cfg.noise;
      noise.seed = seed_t;
      E = sample_constraints(*prep.labels, noise);
    }

    const auto start = std::chrono::steady_clock::now();
    TrialResult trial;
    trial.trial = t;
    trial.seed = seed_t;

    Partition part = Partition::single_cluster(n);
    bool have_partition = true;
    switch (cfg.algorithm) {
      case Algorithm::Kmeans: {
        KmeansResult r = kmeans(prep.clustering, k_eff, prep.model, seed_t);
        part = std::move(r.partition);
        trial.iterations = r.iterations;
        break;
      }
      case Algorithm::DpMeans: {
        RdpHyperParams hp = cfg.rdp;
        hp.lambda = lambda;
        RdpResult r = dp_means(prep.clustering, hp, prep.model);
        part = std::move(r.partition);
        trial.iterations = r.iterations;
        break;
      }
      case Algorithm::RdpMeans: {
        RdpHyperParams hp = cfg.rdp;
        hp.lambda = lambda;
        RdpResult r = rdp_means(prep.clustering, E, hp, prep.model);
        part = std::move(r.partition);
        trial.iterations = r.iterations;
        break;
      }
      case Algorithm::TvClust: {
        GibbsConfig gc = cfg.gibbs;
        gc.seed = seed_t;
        const DataMatrix& gibbs_data = prep.gibbs_on_raw ? prep.raw : prep.clustering;
        GibbsTrace trace = run_gibbs(gibbs_data, E, prep.model, prep.prior, gc);
        part = map_partition(trace);
        trial.iterations = gc.sweeps;
        break;
      }
      case Algorithm::Spectral: {
        Matrix B = build_spectral_matrix(gram_matrix(prep.clustering), E,
                                         cfg.spectral_xi, cfg.spectral_xi, 0.0);
        SpectralResult r = spectral_relaxation(B, lambda);
        trial.k_found = r.k_hat;
        trial.relaxed_value = r.relaxed_value;
        have_partition = false;
        break;
      }
    }

    if (have_partition) {
      trial.k_found = part.K();
      if (prep.labels) {
        trial.f = pairwise_f(part, *prep.labels);
        trial.ari = adjusted_rand(part, *prep.labels);
        trial.nmi = nmi(part, *prep.labels);
      }
    }
    trial.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    result.trials.push_back(trial);
  }

  for (const TrialResult& t : result.trials) {
    result.mean_f += t.f;
    result.mean_ari += t.ari;
    result.mean_nmi += t.nmi;
    result.mean_k += t.k_found;
  }
  const double m = static_cast<double>(result.trials.size());
  result.mean_f /= m;
  result.mean_ari /= m;
  result.mean_nmi /= m;
  result.mean_k /= m;
  return result;
}

namespace {

int worker_count() {
  if (const char* env = std::getenv("RELCLUST_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

std::vector<SweepCell> run_sweep(const SweepGrid& grid) {
  if (grid.datasets.empty() || grid.algorithms.empty() || grid.rs.empty() ||
      grid.ps.empty() || grid.deviations.empty())
    throw std::invalid_argument("run_sweep: empty grid");

  std::vector<SweepCell> cells;
  for (const DatasetSpec& ds : grid.datasets) {
    for (Algorithm alg : grid.algorithms) {
      for (double r : grid.rs) {
        for (double p : grid.ps) {
          for (int dev : grid.deviations) {
            SweepCell cell;
            cell.config = grid.base;
            cell.config.dataset = ds;
            cell.config.algorithm = alg;
            cell.config.noise.r = r;
            cell.config.noise.p = p;
            cell.config.k.reset();
            cell.config.k_deviation = dev;
            cell.r = r;
            cell.p = p;
            cell.deviation = dev;
            cells.push_back(std::move(cell));
          }
        }
      }
    }
  }

  // drop non-positive effective k up front (protocol skip, not a failure)
  std::vector<SweepCell> runnable;
  for (SweepCell& cell : cells) {
    if (cell.config.algorithm != Algorithm::TvClust) {
      try {
        PreparedData prep = prepare_data(cell.config);
        effective_k(cell.config, prep.labels);
      } catch (const std::invalid_argument& e) {
        if (std::string(e.what()).find("non-positive effective k") !=
            std::string::npos)
          continue;
      } catch (...) {
        // leave other problems to surface as recorded cell failures
      }
    }
    runnable.push_back(std::move(cell));
  }

  const int workers =
      std::min<int>(worker_count(), static_cast<int>(runnable.size()));
  std::atomic<std::size_t> next{0};
  const auto work = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= runnable.size()) return;
      SweepCell& cell = runnable[idx];
      try {
        cell.result = run_experiment(cell.config);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();
  return runnable;
}

namespace {

double round6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::strtod(buf, nullptr);
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["dataset"] = cfg.dataset.name;
  switch (cfg.dataset.source) {
    case DatasetSpec::Source::Csv:
      j["source"] = "csv";
      j["path"] = cfg.dataset.path;
      break;
    case DatasetSpec::Source::Pattern:
      j["source"] = "pattern";
      j["pattern_n"] = cfg.dataset.pattern_n;
      j["pattern_noise_sd"] = round6(cfg.dataset.pattern_noise_sd);
      j["data_seed"] = cfg.dataset.data_seed;
      break;
    case DatasetSpec::Source::Topics:
      j["source"] = "topics";
      j["topics"] = cfg.dataset.topics.topics;
      j["docs_per_topic"] = cfg.dataset.topics.docs_per_topic;
      j["dim"] = cfg.dataset.topics.dim;
      j["data_seed"] = cfg.dataset.data_seed;
      break;
  }
  j["algorithm"] = algorithm_name(cfg.algorithm);
  j["model"] = cfg.model == ModelChoice::Auto
                   ? "auto"
                   : (cfg.model == ModelChoice::Gaussian ? "gaussian" : "multinomial");
  j["r"] = round6(cfg.noise.r);
  j["p"] = round6(cfg.noise.p);
  j["q"] = round6(cfg.noise.effective_q());
  if (cfg.k) j["k"] = *cfg.k;
  if (cfg.k_deviation) j["k_deviation"] = *cfg.k_deviation;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["standardize"] = cfg.standardize;
  j["laplace_alpha"] = round6(cfg.laplace_alpha);
  j["xi0"] = round6(cfg.rdp.xi0);
  j["xi_rate"] = round6(cfg.rdp.xi_rate);
  j["xi_cap"] = round6(cfg.rdp.effective_xi_cap());
  j["stable_iters"] = cfg.rdp.stable_iters;
  j["max_iters"] = cfg.rdp.max_iters;
  if (cfg.algorithm == Algorithm::TvClust) {
    j["alpha"] = round6(cfg.gibbs.alpha);
    j["sweeps"] = cfg.gibbs.sweeps;
    j["burn_in"] = cfg.gibbs.burn_in;
    j["thin"] = cfg.gibbs.thin;
    j["learn_pq"] = cfg.gibbs.cred.learn;
  }
  return j;
}

}  // namespace

void emit_json(const std::vector<SweepCell>& cells, std::ostream& out) {
  if (cells.empty()) throw std::invalid_argument("emit_json: no results");
  for (const SweepCell& cell : cells) {
    nlohmann::json j;
    j["config"] = config_json(cell.config);
    j["deviation"] = cell.deviation;
    j["ok"] = cell.ok;
    if (!cell.ok) {
      j["error"] = cell.error;
    } else {
      j["lambda"] = round6(cell.result.lambda);
      j["mean_F"] = round6(cell.result.mean_f);
      j["mean_ARI"] = round6(cell.result.mean_ari);
      j["mean_NMI"] = round6(cell.result.mean_nmi);
      j["mean_K"] = round6(cell.result.mean_k);
      nlohmann::json trials = nlohmann::json::array();
      for (const TrialResult& t : cell.result.trials) {
        nlohmann::json tj;
        tj["trial"] = t.trial;
        tj["F"] = round6(t.f);
        tj["ARI"] = round6(t.ari);
        tj["NMI"] = round6(t.nmi);
        tj["K_found"] = t.k_found;
        tj["iterations"] = t.iterations;
        tj["wall_time"] = round6(t.wall_time);
        tj["seed"] = t.seed;
        if (cell.config.algorithm == Algorithm::Spectral)
          tj["relaxed_value"] = round6(t.relaxed_value);
        trials.push_back(std::move(tj));
      }
      j["trials"] = std::move(trials);
    }
    out << j.dump() << "\n";
  }
}

void emit_csv(const std::vector<SweepCell>& cells, std::ostream& out) {
  if (cells.empty()) throw std::invalid_argument("emit_csv: no results");
  out << "dataset,algorithm,r,p,deviation,trial,F,ARI,NMI,K_found,seed\n";
  char buf[40];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  for (const SweepCell& cell : cells) {
    if (!cell.ok) continue;
    for (const TrialResult& t : cell.result.trials) {
      out << cell.config.dataset.name << "," << algorithm_name(cell.config.algorithm)
          << "," << num(cell.r) << "," << num(cell.p) << "," << cell.deviation
          << "," << t.trial << "," << num(t.f) << "," << num(t.ari) << ","
          << num(t.nmi) << "," << t.k_found << "," << t.seed << "\n";
    }
  }
}

}  // namespace relclust
