// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relclust/gibbs.hpp"
#include "relclust/io.hpp"
#include "relclust/rdp.hpp"
#include "relclust/sideinfo.hpp"
#include "relclust/types.hpp"

namespace relclust {

enum class Algorithm { Kmeans, DpMeans, RdpMeans, TvClust, Spectral };

Algorithm algorithm_from_string(const std::string& name);
std::string algorithm_name(Algorithm a);

enum class ModelChoice { Auto, Gaussian, Multinomial };

// Synthetic topic-count corpus: each document draws doc_length tokens from a
// mixture of a flat background and its topic's coordinate block; adjacent
// blocks overlap by half so the topics are not trivially separable.
struct TopicSpec {
  int topics = 10;
  int docs_per_topic = 10;
  int dim = 1000;
  int doc_length = 100;
  double background_weight = 0.5;
};

LabeledData gen_topic_counts(const TopicSpec& spec, std::uint64_t seed);

struct DatasetSpec {
  enum class Source { Csv, Pattern, Topics };
  Source source = Source::Csv;
  std::string name;

  std::string path;
  std::optional<int> label_column;
  DataKind kind = DataKind::Real;

  Pattern pattern = Pattern::Blobs;
  int pattern_n = 200;
  double pattern_noise_sd = 0.05;

  TopicSpec topics;
  std::uint64_t data_seed = 1;

  static DatasetSpec csv(std::string path, std::optional<int> label_column,
                         DataKind kind = DataKind::Real);
  static DatasetSpec make_pattern(Pattern p, int n, double noise_sd,
                                  std::uint64_t seed);
  static DatasetSpec make_topics(TopicSpec spec, std::uint64_t seed);
};

struct RunConfig {
  DatasetSpec dataset;
  Algorithm algorithm = Algorithm::RdpMeans;
  ModelChoice model = ModelChoice::Auto;
  NoiseSpec noise;  // seed is overridden per trial
  std::optional<int> k;
  std::optional<int> k_deviation;  // effective k = true k - deviation
  int trials = 1;
  std::uint64_t seed = 0;
  bool standardize = true;  // Real-kind features only
  double sigma2 = 0.0;      // 0 -> mean per-column variance / 10
  double laplace_alpha = 0.3;
  double spectral_xi = 1.0;
  std::string constraints_path;  // overrides sampling when set
  RdpHyperParams rdp;            // lambda is derived from k via farthest-first
  GibbsConfig gibbs;             // seed is overridden per trial

  void validate() const;
};

struct TrialResult {
  int trial = 0;
  double f = 0.0;
  double ari = 0.0;
  double nmi = 0.0;
  int k_found = 0;
  int iterations = 0;
  double wall_time = 0.0;  // seconds
  std::uint64_t seed = 0;
  double relaxed_value = 0.0;  // spectral only
};

struct RunResult {
  std::vector<TrialResult> trials;
  double mean_f = 0.0;
  double mean_ari = 0.0;
  double mean_nmi = 0.0;
  double mean_k = 0.0;
  double lambda = 0.0;  // value used (when the algorithm takes one)
};

// Runs cfg.trials seeded trials (seed + t), sampling constraints and scoring
// against the dataset's ground truth when it has one.
RunResult run_experiment(const RunConfig& cfg);

struct SweepGrid {
  std::vector<DatasetSpec> datasets;
  std::vector<Algorithm> algorithms;
  std::vector<double> rs{0.05};
  std::vector<double> ps{1.0};
  std::vector<int> deviations{0};
  RunConfig base;  // trials, seed, hyperparameters, model choice
};

struct SweepCell {
  RunConfig config;
  double r = 0.0;
  double p = 1.0;
  int deviation = 0;
  bool ok = false;
  std::string error;
  RunResult result;
};

// Cartesian product in dataset x algorithm x r x p x deviation order. Cells
// run on a bounded worker pool (RELCLUST_THREADS caps it); results come back
// in grid order and per-cell failures are recorded without stopping the
// sweep. Deviations yielding a non-positive effective k are dropped from the
// grid up front.
std::vector<SweepCell> run_sweep(const SweepGrid& grid);

// One JSON object per cell (JSON lines), numbers rounded to 6 significant
// digits, alphabetical field order.
void emit_json(const std::vector<SweepCell>& cells, std::ostream& out);

// Per-trial rows under the fixed header
// dataset,algorithm,r,p,deviation,trial,F,ARI,NMI,K_found,seed.
// Failed cells contribute no rows.
void emit_csv(const std::vector<SweepCell>& cells, std::ostream& out);

}  // namespace relclust
