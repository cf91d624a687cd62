// Apache License, Version 2.0, refer to LICENSE.txt

#include "relclust/sideinfo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "relclust/rng.hpp"

namespace relclust {

void NoiseSpec::validate() const {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("NoiseSpec: r must lie in [0,1]");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("NoiseSpec: p must lie in (0,1]");
  const double eq = effective_q();
  if (!(eq > 0.0 && eq <= 1.0))
    throw std::invalid_argument("NoiseSpec: q must lie in (0,1]");
}

SideInfo sample_constraints(std::span<const int> labels, const NoiseSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(labels.size());
  if (n < 1) throw std::invalid_argument("sample_constraints: empty labels");
  SideInfo E(n);
  const std::size_t total = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t m =
      static_cast<std::size_t>(std::floor(spec.r * static_cast<double>(total)));
  if (m == 0) return E;

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(total);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  // Selection and labeling interleave on one stream so that a shorter prefix
  // (smaller r) sees exactly the same draws.
  Rng rng(spec.seed);
  const double q = spec.effective_q();
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t j = t + rng.uniform_index(total - t);
    std::swap(pairs[t], pairs[j]);
    const auto [a, b] = pairs[t];
    const double u = rng.uniform01();
    if (labels[a] == labels[b]) {
      E.add(a, b, u < spec.p ? Link::May : Link::MayNot);
    } else {
      E.add(a, b, u < q ? Link::MayNot : Link::May);
    }
  }
  return E;
}

Pattern pattern_from_string(const std::string& name) {
  if (name == "blobs") return Pattern::Blobs;
  if (name == "moons") return Pattern::Moons;
  if (name == "circles") return Pattern::Circles;
  if (name == "elongated") return Pattern::Elongated;
  if (name == "spirals") return Pattern::Spirals;
  if (name == "aggregation") return Pattern::Aggregation;
  throw std::invalid_argument("unknown pattern name: " + name);
}

std::string pattern_name(Pattern p) {
  switch (p) {
    case Pattern::Blobs: return "blobs";
    case Pattern::Moons: return "moons";
    case Pattern::Circles: return "circles";
    case Pattern::Elongated: return "elongated";
    case Pattern::Spirals: return "spirals";
    case Pattern::Aggregation: return "aggregation";
  }
  throw std::invalid_argument("unknown pattern");
}

namespace {

constexpr double kPi = std::numbers::pi;

int clusters_of(Pattern pattern) {
  return pattern == Pattern::Aggregation ? 5 : 2;
}

}  // namespace

LabeledData gen_pattern(Pattern pattern, int n, double noise_sd,
                        std::uint64_t seed) {
  const int k = clusters_of(pattern);
  if (n < 2 * k)
    throw std::invalid_argument("gen_pattern: need n >= 2 * clusters");
  if (noise_sd < 0.0)
    throw std::invalid_argument("gen_pattern: noise_sd must be nonnegative");

  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  std::vector<int> labels;
  labels.reserve(n);
  const auto emit = [&](double x, double y, int label) {
    rows.push_back({x + noise_sd * rng.normal(), y + noise_sd * rng.normal()});
    labels.push_back(label);
  };

  switch (pattern) {
    case Pattern::Blobs: {
      for (int i = 0; i < n; ++i) {
        const int label = i < n / 2 ? 0 : 1;
        emit(label == 0 ? -2.0 : 2.0, 0.0, label);
      }
      break;
    }
    case Pattern::Moons: {
      for (int i = 0; i < n; ++i) {
        const int label = i < n / 2 ? 0 : 1;
        const double t = kPi * rng.uniform01();
        if (label == 0)
          emit(std::cos(t), std::sin(t), 0);
        else
          emit(1.0 - std::cos(t), 0.5 - std::sin(t), 1);
      }
      break;
    }
    case Pattern::Circles: {
      for (int i = 0; i < n; ++i) {
        const int label = i < n / 2 ? 0 : 1;
        const double t = 2.0 * kPi * rng.uniform01();
        const double rad = label == 0 ? 1.0 : 0.5;
        emit(rad * std::cos(t), rad * std::sin(t), label);
      }
      break;
    }
    case Pattern::Elongated: {
      for (int i = 0; i < n; ++i) {
        const int label = i < n / 2 ? 0 : 1;
        const double x = 4.0 * rng.uniform01() - 2.0;
        emit(x, label == 0 ? 0.75 : -0.75, label);
      }
      break;
    }
    case Pattern::Spirals: {
      for (int i = 0; i < n; ++i) {
        const int label = i < n / 2 ? 0 : 1;
        const double t = kPi / 4.0 + 2.75 * kPi * rng.uniform01();
        const double rad = 0.12 * t;
        const double sign = label == 0 ? 1.0 : -1.0;
        emit(sign * rad * std::cos(t), sign * rad * std::sin(t), label);
      }
      break;
    }
    case Pattern::Aggregation: {
      static const double centers[5][2] = {
          {-3.0, -2.0}, {0.0, 0.0}, {3.0, 2.5}, {-2.5, 3.0}, {3.0, -2.0}};
      static const int weights[5] = {3, 5, 2, 4, 2};
      int assigned = 0;
      for (int c = 0; c < 5; ++c) {
        int size = c == 4 ? n - assigned : std::max(2, n * weights[c] / 16);
        if (c < 4) size = std::min(size, n - assigned - 2 * (4 - c));
        for (int i = 0; i < size; ++i) {
          emit(centers[c][0] + 0.45 * rng.normal(),
               centers[c][1] + 0.45 * rng.normal(), c);
        }
        assigned += size;
      }
      break;
    }
  }
  return LabeledData{DataMatrix::from_rows(rows, DataKind::Real),
                     std::move(labels)};
}

}  // namespace relclust
