// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <span>
#include <vector>

#include "relclust/rng.hpp"
#include "relclust/types.hpp"

namespace relclust {

enum class Family { SphericalGaussian, Multinomial };

// An exponential-family choice expressed through its divergence: the pairing
// of a distance, the cluster-mean update, and the Bayesian marginal used by
// the sampler. SphericalGaussian pairs with squared Euclidean distance,
// Multinomial with KL divergence on simplex rows.
struct DivergenceModel {
  Family family = Family::SphericalGaussian;
  int dim = 1;
  double sigma2 = 1.0;         // Gaussian only
  double laplace_alpha = 0.3;  // Multinomial only

  static DivergenceModel spherical_gaussian(int dim, double sigma2);
  static DivergenceModel multinomial(int dim, double laplace_alpha = 0.3);
  void validate() const;
};

// Conjugate base-measure parameters: tau is the prior sufficient-statistic
// vector, eta the prior strength. Gaussian reads the prior mean as tau/eta
// with per-coordinate variance sigma2/eta; Multinomial reads tau as Dirichlet
// concentrations (eta unused).
struct PriorParams {
  std::vector<double> tau;
  double eta = 1.0;

  static PriorParams gaussian_default(const DataMatrix& data);
  static PriorParams multinomial_default(int dim, double concentration = 1.0);
  void validate() const;
};

// D(x, mu): squared Euclidean over 2*sigma2, or KL(x||mu) with 0 ln 0 := 0.
double divergence(const DivergenceModel& model, std::span<const double> x,
                  std::span<const double> mu);

// Arithmetic mean of the member vectors (the divergence minimizer for both
// families). Throws on an empty member set.
std::vector<double> cluster_mean(const DivergenceModel& model,
                                 const std::vector<std::span<const double>>& members);

// log p(x | theta): spherical Gaussian density or multinomial pmf (with the
// multinomial coefficient, so count vectors get a proper mass).
double log_likelihood(const DivergenceModel& model, std::span<const double> x,
                      std::span<const double> theta);

// log of the prior-predictive mass of one observation under the conjugate
// base measure.
double log_marginal(const DivergenceModel& model, const PriorParams& prior,
                    std::span<const double> x);

// Joint prior-predictive of a set of rows (the cluster-level marginal).
double log_marginal_rows(const DivergenceModel& model, const PriorParams& prior,
                         const std::vector<std::span<const double>>& rows);

// Draw a cluster parameter from its conjugate posterior given the member
// rows (Normal posterior of the mean / Dirichlet posterior).
std::vector<double> posterior_sample(const DivergenceModel& model,
                                     const PriorParams& prior,
                                     const std::vector<std::span<const double>>& rows,
                                     Rng& rng);

// (x_t + alpha) / (sum x + d*alpha); throws on an all-zero row with alpha=0.
std::vector<double> laplace_smooth(std::span<const double> x, double alpha);

// Applies laplace_smooth to every row, yielding simplex rows for KL ops.
DataMatrix laplace_smooth_rows(const DataMatrix& data, double alpha);

}  // namespace relclust
