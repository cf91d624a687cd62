// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/bregman.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relclust {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void check_dim(const DivergenceModel& model, std::span<const double> v,
               const char* what) {
  if (static_cast<int>(v.size()) != model.dim)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

// log N(x; mean, var) for one coordinate
double log_normal_1d(double x, double mean, double var) {
  const double c = x - mean;
  return -0.5 * (kLog2Pi + std::log(var)) - c * c / (2.0 * var);
}

double require_counts(std::span<const double> x) {
  double total = 0.0;
  for (double v : x) {
    if (v < 0.0)
      throw std::invalid_argument("multinomial marginal: negative count");
    total += v;
  }
  return total;
}

}  // namespace

DivergenceModel DivergenceModel::spherical_gaussian(int dim, double sigma2) {
  DivergenceModel m;
  m.family = Family::SphericalGaussian;
  m.dim = dim;
  m.sigma2 = sigma2;
  m.validate();
  return m;
}

DivergenceModel DivergenceModel::multinomial(int dim, double laplace_alpha) {
  DivergenceModel m;
  m.family = Family::Multinomial;
  m.dim = dim;
  m.laplace_alpha = laplace_alpha;
  m.validate();
  return m;
}

void DivergenceModel::validate() const {
  if (dim < 1) throw std::invalid_argument("DivergenceModel: dim must be >= 1");
  if (family == Family::SphericalGaussian && !(sigma2 > 0.0))
    throw std::invalid_argument("DivergenceModel: sigma2 must be positive");
  if (family == Family::Multinomial && !(laplace_alpha >= 0.0))
    throw std::invalid_argument("DivergenceModel: laplace_alpha must be nonnegative");
}

PriorParams PriorParams::gaussian_default(const DataMatrix& data) {
  PriorParams p;
  p.tau = data.column_means();  // prior mean = data mean at eta = 1
  p.eta = 1.0;
  return p;
}

PriorParams PriorParams::multinomial_default(int dim, double concentration) {
  PriorParams p;
  p.tau.assign(dim, concentration);
  p.eta = 1.0;
  return p;
}

void PriorParams::validate() const {
  if (tau.empty()) throw std::invalid_argument("PriorParams: empty tau");
  if (!(eta > 0.0)) throw std::invalid_argument("PriorParams: eta must be positive");
  for (double t : tau)
    if (!std::isfinite(t)) throw std::invalid_argument("PriorParams: non-finite tau");
}

double divergence(const DivergenceModel& model, std::span<const double> x,
                  std::span<const double> mu) {
  check_dim(model, x, "divergence x");
  check_dim(model, mu, "divergence mu");
  if (model.family == Family::SphericalGaussian) {
    double ss = 0.0;
    for (int t = 0; t < model.dim; ++t) {
      const double c = x[t] - mu[t];
      ss += c * c;
    }
    return ss / (2.0 * model.sigma2);
  }
  double kl = 0.0;
  for (int t = 0; t < model.dim; ++t) {
    if (mu[t] <= 0.0)
      throw std::invalid_argument(
          "divergence: zero coordinate in multinomial mu (missing smoothing?)");
    if (x[t] == 0.0) continue;  // 0 ln 0 := 0
    kl += x[t] * std::log(x[t] / mu[t]);
  }
  return kl > 0.0 ? kl : 0.0;
}

std::vector<double> cluster_mean(const DivergenceModel& model,
                                 const std::vector<std::span<const double>>& members) {
  if (members.empty()) throw std::invalid_argument("cluster_mean: empty member set");
  std::vector<double> mean(model.dim, 0.0);
  for (const auto& m : members) {
    check_dim(model, m, "cluster_mean member");
    for (int t = 0; t < model.dim; ++t) mean[t] += m[t];
  }
  for (double& v : mean) v /= static_cast<double>(members.size());
  return mean;
}

double log_likelihood(const DivergenceModel& model, std::span<const double> x,
                      std::span<const double> theta) {
  check_dim(model, x, "log_likelihood x");
  check_dim(model, theta, "log_likelihood theta");
  if (model.family == Family::SphericalGaussian) {
    double acc = 0.0;
    for (int t = 0; t < model.dim; ++t)
      acc += log_normal_1d(x[t], theta[t], model.sigma2);
    return acc;
  }
  const double total = require_counts(x);
  double acc = std::lgamma(total + 1.0);
  for (int t = 0; t < model.dim; ++t) {
    acc -= std::lgamma(x[t] + 1.0);
    if (x[t] > 0.0) {
      if (theta[t] <= 0.0)
        throw std::invalid_argument("log_likelihood: zero multinomial parameter");
      acc += x[t] * std::log(theta[t]);
    }
  }
  return acc;
}

double log_marginal(const DivergenceModel& model, const PriorParams& prior,
                    std::span<const double> x) {
  return log_marginal_rows(model, prior, {x});
}

double log_marginal_rows(const DivergenceModel& model, const PriorParams& prior,
                         const std::vector<std::span<const double>>& rows) {
  prior.validate();
  if (static_cast<int>(prior.tau.size()) != model.dim)
    throw std::invalid_argument("log_marginal: prior dimension mismatch");
  if (model.family == Family::SphericalGaussian) {
    // chain of conjugate one-step predictives, each Gaussian with variance
    // sigma2 * (1 + 1/eta)
    std::vector<double> tau = prior.tau;
    double eta = prior.eta;
    double acc = 0.0;
    for (const auto& x : rows) {
      check_dim(model, x, "log_marginal row");
      const double var = model.sigma2 * (1.0 + 1.0 / eta);
      for (int t = 0; t < model.dim; ++t) {
        acc += log_normal_1d(x[t], tau[t] / eta, var);
        tau[t] += x[t];
      }
      eta += 1.0;
    }
    return acc;
  }
  // Dirichlet-multinomial over the pooled counts, with each row's
  // multinomial coefficient
  for (double t : prior.tau)
    if (!(t > 0.0))
      throw std::invalid_argument("log_marginal: Dirichlet tau must be positive");
  double tau_total = 0.0;
  for (double t : prior.tau) tau_total += t;
  std::vector<double> pooled(model.dim, 0.0);
  double pooled_total = 0.0;
  double acc = 0.0;
  for (const auto& x : rows) {
    check_dim(model, x, "log_marginal row");
    const double total = require_counts(x);
    acc += std::lgamma(total + 1.0);
    for (int t = 0; t < model.dim; ++t) {
      acc -= std::lgamma(x[t] + 1.0);
      pooled[t] += x[t];
    }
    pooled_total += total;
  }
  acc += std::lgamma(tau_total) - std::lgamma(tau_total + pooled_total);
  for (int t = 0; t < model.dim; ++t)
    acc += std::lgamma(prior.tau[t] + pooled[t]) - std::lgamma(prior.tau[t]);
  return acc;
}

std::vector<double> posterior_sample(const DivergenceModel& model,
                                     const PriorParams& prior,
                                     const std::vector<std::span<const double>>& rows,
                                     Rng& rng) {
  prior.validate();
  if (static_cast<int>(prior.tau.size()) != model.dim)
    throw std::invalid_argument("posterior_sample: prior dimension mismatch");
  if (model.family == Family::SphericalGaussian) {
    std::vector<double> sum(model.dim, 0.0);
    for (const auto& x : rows) {
      check_dim(model, x, "posterior_sample row");
      for (int t = 0; t < model.dim; ++t) sum[t] += x[t];
    }
    const double strength = prior.eta + static_cast<double>(rows.size());
    const double sd = std::sqrt(model.sigma2 / strength);
    std::vector<double> theta(model.dim);
    for (int t = 0; t < model.dim; ++t)
      theta[t] = (prior.tau[t] + sum[t]) / strength + sd * rng.normal();
    return theta;
  }
  std::vector<double> conc = prior.tau;
  for (const auto& x : rows) {
    check_dim(model, x, "posterior_sample row");
    require_counts(x);
    for (int t = 0; t < model.dim; ++t) conc[t] += x[t];
  }
  return rng.dirichlet(conc);
}

std::vector<double> laplace_smooth(std::span<const double> x, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("laplace_smooth: alpha must be nonnegative");
  double total = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("laplace_smooth: negative count");
    total += v;
  }
  const double denom = total + alpha * static_cast<double>(x.size());
  if (!(denom > 0.0))
    throw std::invalid_argument("laplace_smooth: all-zero row with alpha = 0");
  std::vector<double> out(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) out[t] = (x[t] + alpha) / denom;
  return out;
}

DataMatrix laplace_smooth_rows(const DataMatrix& data, double alpha) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(data.rows()) * data.cols());
  for (int i = 0; i < data.rows(); ++i) {
    const auto smoothed = laplace_smooth(data.row(i), alpha);
    values.insert(values.end(), smoothed.begin(), smoothed.end());
  }
  return DataMatrix(data.rows(), data.cols(), std::move(values), DataKind::Real);
}

}  // namespace relclust
