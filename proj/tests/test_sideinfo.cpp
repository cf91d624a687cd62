// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "relclust/rng.hpp"
#include "relclust/sideinfo.hpp"

using namespace relclust;

namespace {

std::vector<int> two_class_labels(int n) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i < n / 2 ? 0 : 1;
  return labels;
}

std::set<std::tuple<int, int, int>> entry_set(const SideInfo& E) {
  std::set<std::tuple<int, int, int>> out;
  E.for_each_entry([&](int i, int j, Link link) {
    out.insert({i, j, link == Link::May ? 1 : 0});
  });
  return out;
}

}  // namespace

TEST_CASE("sample_constraints endpoints") {
  const auto labels = two_class_labels(10);
  NoiseSpec spec;
  spec.r = 0.0;
  spec.seed = 3;
  CHECK(sample_constraints(labels, spec).size() == 0);

  spec.r = 1.0;
  const SideInfo full = sample_constraints(labels, spec);
  CHECK(full.size() == 45);
  full.for_each_entry([&](int i, int j, Link link) {
    CHECK((link == Link::May) == (labels[i] == labels[j]));
  });
}

TEST_CASE("sample_constraints count, purity, and validation") {
  const auto labels = two_class_labels(40);
  NoiseSpec spec;
  spec.r = 0.07;
  spec.seed = 11;
  const std::size_t expect =
      static_cast<std::size_t>(std::floor(0.07 * (40 * 39 / 2)));
  const SideInfo E = sample_constraints(labels, spec);
  CHECK(E.size() == expect);  // duplicates/self-links impossible by SideInfo

  NoiseSpec bad;
  bad.r = 1.5;
  CHECK_THROWS_AS(sample_constraints(labels, bad), std::invalid_argument);
}

TEST_CASE("flip rates converge to 1-p and 1-q") {
  const auto labels = two_class_labels(60);
  long long same_total = 0, same_flipped = 0;
  long long diff_total = 0, diff_flipped = 0;
  for (int seed = 0; seed < 400; ++seed) {
    NoiseSpec spec;
    spec.r = 0.1;
    spec.p = 0.8;
    spec.q = 0.9;
    spec.seed = static_cast<std::uint64_t>(seed);
    const SideInfo E = sample_constraints(labels, spec);
    E.for_each_entry([&](int i, int j, Link link) {
      if (labels[i] == labels[j]) {
        ++same_total;
        same_flipped += link == Link::MayNot;
      } else {
        ++diff_total;
        diff_flipped += link == Link::May;
      }
    });
  }
  // normal-approximation bound at the 1% level (z = 2.576)
  const auto within = [](long long flipped, long long total, double rate) {
    const double hat = static_cast<double>(flipped) / total;
    const double band = 2.576 * std::sqrt(rate * (1.0 - rate) / total);
    return std::abs(hat - rate) <= band;
  };
  CHECK(within(same_flipped, same_total, 0.2));
  CHECK(within(diff_flipped, diff_total, 0.1));
}

TEST_CASE("one seed yields nested pair sets across r and coupled flips across p") {
  const auto labels = two_class_labels(30);
  NoiseSpec lo, hi;
  lo.r = 0.05;
  hi.r = 0.2;
  lo.seed = hi.seed = 77;
  const auto small = entry_set(sample_constraints(labels, lo));
  const auto large = entry_set(sample_constraints(labels, hi));
  for (const auto& e : small) CHECK(large.count(e) == 1);

  NoiseSpec noisy = hi, clean = hi;
  noisy.p = 0.7;
  clean.p = 0.95;
  const SideInfo En = sample_constraints(labels, noisy);
  const SideInfo Ec = sample_constraints(labels, clean);
  // a same-label pair flipped at p=0.95 must also be flipped at p=0.7
  Ec.for_each_entry([&](int i, int j, Link link) {
    if (labels[i] == labels[j] && link == Link::MayNot)
      CHECK(En.lookup(i, j) == Link::MayNot);
  });
}

TEST_CASE("gen_pattern shapes and determinism") {
  {
    const auto blobs = gen_pattern(Pattern::Blobs, 40, 0.0, 5);
    CHECK(blobs.data.rows() == 40);
    for (int i = 0; i < 40; ++i) {
      const double x = blobs.data.at(i, 0);
      CHECK((x == -2.0 || x == 2.0));
      CHECK(blobs.data.at(i, 1) == 0.0);
      CHECK(blobs.labels[i] == (x < 0 ? 0 : 1));
    }
  }
  {
    const auto circles = gen_pattern(Pattern::Circles, 50, 0.0, 6);
    for (int i = 0; i < 50; ++i) {
      const double rad = std::hypot(circles.data.at(i, 0), circles.data.at(i, 1));
      CHECK(rad == doctest::Approx(circles.labels[i] == 0 ? 1.0 : 0.5));
    }
  }
  for (const Pattern p : {Pattern::Moons, Pattern::Elongated, Pattern::Spirals,
                          Pattern::Aggregation}) {
    const auto a = gen_pattern(p, 61, 0.05, 9);
    const auto b = gen_pattern(p, 61, 0.05, 9);
    CHECK(a.data.values() == b.data.values());
    CHECK(a.labels == b.labels);
    CHECK(a.data.rows() == 61);
    std::set<int> distinct(a.labels.begin(), a.labels.end());
    CHECK(static_cast<int>(distinct.size()) == (p == Pattern::Aggregation ? 5 : 2));
  }
  CHECK_THROWS_AS(gen_pattern(Pattern::Aggregation, 8, 0.1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(pattern_from_string("hexagons"), std::invalid_argument);
  CHECK(pattern_from_string("moons") == Pattern::Moons);
}
