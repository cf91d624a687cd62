// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "relclust/bregman.hpp"
#include "relclust/rng.hpp"

using namespace relclust;

namespace {

std::vector<std::span<const double>> spans(const std::vector<std::vector<double>>& rows) {
  std::vector<std::span<const double>> out;
  for (const auto& r : rows) out.emplace_back(r);
  return out;
}

}  // namespace

TEST_CASE("divergence worked examples") {
  const auto gauss = DivergenceModel::spherical_gaussian(2, 0.5);
  const std::vector<double> x{0, 3}, mu{4, 0};
  CHECK(divergence(gauss, x, mu) == doctest::Approx(25.0));
  CHECK(divergence(gauss, x, x) == 0.0);

  const auto multi = DivergenceModel::multinomial(2, 0.0);
  const std::vector<double> px{1.0, 0.0}, pmu{0.5, 0.5};
  CHECK(divergence(multi, px, pmu) == doctest::Approx(std::numbers::ln2));
  CHECK(divergence(multi, pmu, pmu) == 0.0);

  CHECK_THROWS_AS(divergence(multi, px, px), std::invalid_argument);  // mu has a zero
  const std::vector<double> short_vec{1.0};
  CHECK_THROWS_AS(divergence(gauss, short_vec, mu), std::invalid_argument);
}

TEST_CASE("divergence nonnegativity and identity of indiscernibles") {
  Rng rng(5);
  const auto gauss = DivergenceModel::spherical_gaussian(3, 0.7);
  const auto multi = DivergenceModel::multinomial(3, 0.0);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> x(3), mu(3);
    for (int t = 0; t < 3; ++t) {
      x[t] = 4.0 * rng.normal();
      mu[t] = 4.0 * rng.normal();
    }
    CHECK(divergence(gauss, x, mu) >= 0.0);
    CHECK(divergence(gauss, x, x) == 0.0);

    std::vector<double> counts(3), raw(3);
    for (int t = 0; t < 3; ++t) {
      counts[t] = static_cast<double>(rng.uniform_index(8));
      raw[t] = rng.uniform01() + 0.01;
    }
    const auto sx = laplace_smooth(counts, 0.5);  // strictly positive simplex
    const auto smu = laplace_smooth(raw, 0.0);
    const double d = divergence(multi, sx, smu);
    CHECK(d >= 0.0);
    CHECK(divergence(multi, sx, sx) == doctest::Approx(0.0).epsilon(1e-12));
    if (d == 0.0) {
      for (int t = 0; t < 3; ++t) CHECK(sx[t] == doctest::Approx(smu[t]));
    }
  }
}

TEST_CASE("cluster_mean worked examples") {
  const auto gauss = DivergenceModel::spherical_gaussian(2, 1.0);
  {
    const std::vector<std::vector<double>> members{{1, 1}};
    CHECK(cluster_mean(gauss, spans(members)) == std::vector<double>{1, 1});
  }
  {
    const std::vector<std::vector<double>> members{{0, 0}, {2, 4}};
    CHECK(cluster_mean(gauss, spans(members)) == std::vector<double>{1, 2});
  }
  {
    const std::vector<std::vector<double>> members{{0.2, 0.8}, {0.6, 0.4}, {0.4, 0.6}};
    const auto mean = cluster_mean(gauss, spans(members));
    CHECK(mean[0] == doctest::Approx(0.4));
    CHECK(mean[1] == doctest::Approx(0.6));
  }
  CHECK_THROWS_AS(cluster_mean(gauss, {}), std::invalid_argument);
}

TEST_CASE("cluster_mean minimizes the summed divergence") {
  Rng rng(11);
  const auto gauss = DivergenceModel::spherical_gaussian(2, 0.4);
  const auto multi = DivergenceModel::multinomial(2, 0.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int m = 2 + static_cast<int>(rng.uniform_index(5));
    std::vector<std::vector<double>> gm, mm;
    for (int i = 0; i < m; ++i) {
      gm.push_back({3 * rng.normal(), 3 * rng.normal()});
      const double a = rng.uniform01() * 0.8 + 0.1;
      mm.push_back({a, 1.0 - a});
    }
    const auto gmean = cluster_mean(gauss, spans(gm));
    const auto mmean = cluster_mean(multi, spans(mm));
    const auto total = [&](const DivergenceModel& model,
                           const std::vector<std::vector<double>>& rows,
                           const std::vector<double>& center) {
      double acc = 0.0;
      for (const auto& r : rows) acc += divergence(model, r, center);
      return acc;
    };
    const double gbase = total(gauss, gm, gmean);
    const double mbase = total(multi, mm, mmean);
    for (int pert = 0; pert < 100; ++pert) {
      const double e0 = 0.2 * rng.normal();
      CHECK(gbase <= total(gauss, gm, {gmean[0] + e0, gmean[1] + 0.2 * rng.normal()}) +
                         1e-12);
      // simplex-respecting perturbation
      double shift = 0.05 * rng.normal();
      shift = std::clamp(shift, -0.9 * mmean[0], 0.9 * mmean[1]);
      CHECK(mbase <= total(multi, mm, {mmean[0] + shift, mmean[1] - shift}) + 1e-12);
    }
  }
}

TEST_CASE("scaled gaussian likelihood concentrates as the scale grows") {
  const auto make = [](double gamma) {
    // scaling the family by gamma divides the variance by gamma
    return DivergenceModel::spherical_gaussian(1, 1.0 / gamma);
  };
  const std::vector<double> mu{0.0}, x1{1.3}, x2{0.0};
  double prev = 1.0;
  for (const double gamma : {1.0, 10.0, 100.0}) {
    const auto model = make(gamma);
    const double ratio = std::exp(-divergence(model, x1, mu)) /
                         std::exp(-divergence(model, x2, mu));
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev < 1e-30);
}

TEST_CASE("log_marginal worked examples") {
  {
    const auto model = DivergenceModel::spherical_gaussian(1, 1.0);
    PriorParams prior;
    prior.tau = {0.0};
    prior.eta = 1.0;
    const std::vector<double> x{0.0};
    // density of N(0, 2) at 0
    CHECK(log_marginal(model, prior, x) ==
          doctest::Approx(std::log(1.0 / std::sqrt(4.0 * std::numbers::pi)))
              .epsilon(1e-12));
    CHECK(log_marginal(model, prior, x) == doctest::Approx(-1.26551).epsilon(1e-4));
  }
  {
    const auto model = DivergenceModel::multinomial(2, 0.3);
    PriorParams prior;
    prior.tau = {1.0, 1.0};
    const std::vector<double> x{1.0, 0.0};
    CHECK(log_marginal(model, prior, x) == doctest::Approx(std::log(0.5)));
    const std::vector<double> bad{1.0, -1.0};
    CHECK_THROWS_AS(log_marginal(model, prior, bad), std::invalid_argument);
  }
  {
    // near-degenerate prior pins the marginal to the likelihood at the mode
    const auto model = DivergenceModel::spherical_gaussian(2, 0.8);
    const double eta = 1e9;
    PriorParams prior;
    prior.tau = {3.0 * eta, -1.0 * eta};
    prior.eta = eta;
    const std::vector<double> x{3.0, -1.0};
    const std::vector<double> theta{3.0, -1.0};
    CHECK(log_marginal(model, prior, x) ==
          doctest::Approx(log_likelihood(model, x, theta)).epsilon(1e-6));
  }
}

TEST_CASE("dirichlet-multinomial marginal matches simplex quadrature") {
  const auto model = DivergenceModel::multinomial(2, 0.3);
  for (const auto& [t1, t2] : std::vector<std::pair<double, double>>{{1, 1}, {2, 3}}) {
    PriorParams prior;
    prior.tau = {t1, t2};
    for (const auto& [x1, x2] : std::vector<std::pair<double, double>>{
             {1, 0}, {3, 2}, {0, 4}, {5, 5}}) {
      const std::vector<double> x{x1, x2};
      const double coeff = std::exp(std::lgamma(x1 + x2 + 1.0) -
                                    std::lgamma(x1 + 1.0) - std::lgamma(x2 + 1.0));
      const double B = std::exp(std::lgamma(t1) + std::lgamma(t2) -
                                std::lgamma(t1 + t2));
      const double integral = oracles::simpson(
          [&](double t) {
            // pow handles the endpoints (0^0 = 1); taus stay >= 1 here
            return coeff * std::pow(t, x1 + t1 - 1.0) *
                   std::pow(1.0 - t, x2 + t2 - 1.0) / B;
          },
          0.0, 1.0, 20000);
      CHECK(log_marginal(model, prior, x) ==
            doctest::Approx(std::log(integral)).epsilon(1e-6));
    }
  }
}

TEST_CASE("gaussian marginal matches quadrature over the mean") {
  const auto model = DivergenceModel::spherical_gaussian(1, 0.6);
  PriorParams prior;
  prior.tau = {0.8};
  prior.eta = 2.0;
  const std::vector<double> x{1.7};
  const double prior_mean = prior.tau[0] / prior.eta;
  const double prior_var = model.sigma2 / prior.eta;
  const auto normal_pdf = [](double v, double mean, double var) {
    return std::exp(-(v - mean) * (v - mean) / (2 * var)) /
           std::sqrt(2 * std::numbers::pi * var);
  };
  const double integral = oracles::simpson(
      [&](double theta) {
        return normal_pdf(x[0], theta, model.sigma2) *
               normal_pdf(theta, prior_mean, prior_var);
      },
      -12.0, 12.0, 20000);
  CHECK(log_marginal(model, prior, x) ==
        doctest::Approx(std::log(integral)).epsilon(1e-9));
}

TEST_CASE("set marginal equals the chain of one-point predictives") {
  Rng rng(23);
  const auto gauss = DivergenceModel::spherical_gaussian(2, 0.9);
  PriorParams gp;
  gp.tau = {0.3, -0.2};
  gp.eta = 1.5;
  const auto multi = DivergenceModel::multinomial(2, 0.3);
  PriorParams mp;
  mp.tau = {1.2, 0.8};

  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::vector<double>> grows, mrows;
    const int m = 1 + static_cast<int>(rng.uniform_index(4));
    for (int i = 0; i < m; ++i) {
      grows.push_back({rng.normal(), rng.normal()});
      mrows.push_back({static_cast<double>(rng.uniform_index(6)),
                       static_cast<double>(rng.uniform_index(6))});
    }
    // chain rule: m(x_1..x_m) = prod_j m(x_j | x_<j)
    const auto chained = [&](const DivergenceModel& model, const PriorParams& prior,
                             const std::vector<std::vector<double>>& rows) {
      double acc = 0.0;
      for (std::size_t j = 0; j < rows.size(); ++j) {
        std::vector<std::span<const double>> prefix;
        for (std::size_t t = 0; t < j; ++t) prefix.emplace_back(rows[t]);
        std::vector<std::span<const double>> with;
        with = prefix;
        with.emplace_back(rows[j]);
        acc += log_marginal_rows(model, prior, with) -
               (j ? log_marginal_rows(model, prior, prefix) : 0.0);
      }
      return acc;
    };
    CHECK(log_marginal_rows(gauss, gp, spans(grows)) ==
          doctest::Approx(chained(gauss, gp, grows)).epsilon(1e-10));
    CHECK(log_marginal_rows(multi, mp, spans(mrows)) ==
          doctest::Approx(chained(multi, mp, mrows)).epsilon(1e-10));
  }
}

TEST_CASE("laplace_smooth worked examples and errors") {
  const std::vector<double> a{1, 1};
  CHECK(laplace_smooth(a, 0.0) == std::vector<double>{0.5, 0.5});
  const std::vector<double> b{2, 0};
  CHECK(laplace_smooth(b, 1.0) == std::vector<double>{0.75, 0.25});
  const std::vector<double> c{0, 0, 0};
  const auto sc = laplace_smooth(c, 0.3);
  for (double v : sc) CHECK(v == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(laplace_smooth(c, 0.0), std::invalid_argument);
  const std::vector<double> neg{-1, 2};
  CHECK_THROWS_AS(laplace_smooth(neg, 0.3), std::invalid_argument);

  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(4);
    for (double& v : x) v = static_cast<double>(rng.uniform_index(10));
    if (x[0] + x[1] + x[2] + x[3] == 0) x[0] = 1;
    const auto sm = laplace_smooth(x, 0.3);
    double total = 0.0;
    for (double v : sm) {
      CHECK(v > 0.0);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("posterior_sample stays in the right domain") {
  Rng rng(9);
  const auto multi = DivergenceModel::multinomial(3, 0.3);
  PriorParams mp;
  mp.tau = {1.0, 1.0, 1.0};
  const std::vector<std::vector<double>> rows{{4, 0, 1}, {2, 2, 2}};
  const auto theta = posterior_sample(multi, mp, spans(rows), rng);
  double total = 0.0;
  for (double v : theta) {
    CHECK(v > 0.0);
    total += v;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  const auto gauss = DivergenceModel::spherical_gaussian(1, 0.5);
  PriorParams gp;
  gp.tau = {0.0};
  gp.eta = 1e12;  // pinned prior
  const auto t2 = posterior_sample(gauss, gp, {}, rng);
  CHECK(t2[0] == doctest::Approx(0.0).epsilon(1e-4));
}
