// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace relclust {

// Seeded sampling built directly on mt19937_64. The std:: distribution
// classes are implementation-defined, so we roll the few draws we need to
// keep runs reproducible across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_raw() { return eng_(); }

  // uniform in [0, 1)
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // uniform integer in {0, ..., n-1}
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = eng_();
    while (x >= limit) x = eng_();
    return static_cast<std::size_t>(x % n);
  }

  // standard normal, Marsaglia polar method
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Gamma(shape, 1), Marsaglia-Tsang
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
    if (shape < 1.0) {
      const double u = uniform01();
      return gamma(shape + 1.0) * std::pow(u > 0 ? u : 0x1.0p-53, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  std::vector<double> dirichlet(const std::vector<double>& alpha) {
    std::vector<double> out(alpha.size());
    double total = 0.0;
    for (std::size_t t = 0; t < alpha.size(); ++t) {
      out[t] = gamma(alpha[t]);
      total += out[t];
    }
    for (double& v : out) v /= total;
    return out;
  }

  // draw an index proportional to exp(logw), stable under large magnitudes
  std::size_t categorical_from_log(const std::vector<double>& logw) {
    if (logw.empty()) throw std::invalid_argument("categorical_from_log: empty weights");
    double mx = logw[0];
    for (double w : logw) mx = std::max(mx, w);
    double total = 0.0;
    std::vector<double> cum(logw.size());
    for (std::size_t k = 0; k < logw.size(); ++k) {
      total += std::exp(logw[k] - mx);
      cum[k] = total;
    }
    const double u = uniform01() * total;
    for (std::size_t k = 0; k + 1 < cum.size(); ++k) {
      if (u < cum[k]) return k;
    }
    return cum.size() - 1;
  }

  // Fisher-Yates on the first m slots; the prefix of length m1 < m is the
  // same selection the call with m1 would produce (nested subsets per seed).
  template <class T>
  void shuffle_prefix(std::vector<T>& v, std::size_t m) {
    const std::size_t n = v.size();
    if (m > n) throw std::invalid_argument("shuffle_prefix: m exceeds size");
    for (std::size_t t = 0; t < m; ++t) {
      const std::size_t j = t + uniform_index(n - t);
      std::swap(v[t], v[j]);
    }
  }

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace relclust
