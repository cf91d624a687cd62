// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "relclust/rng.hpp"
#include "relclust/types.hpp"

using namespace relclust;

TEST_CASE("DataMatrix validates shape and values") {
  CHECK_THROWS_AS(DataMatrix(0, 1, {}, DataKind::Real), std::invalid_argument);
  CHECK_THROWS_AS(DataMatrix(1, 2, {1.0}, DataKind::Real), std::invalid_argument);
  CHECK_THROWS_AS(DataMatrix(1, 1, {std::nan("")}, DataKind::Real),
                  std::invalid_argument);
  CHECK_THROWS_AS(DataMatrix(1, 2, {1.0, -0.5}, DataKind::Counts),
                  std::invalid_argument);
  const DataMatrix m(2, 2, {1, 2, 3, 4}, DataKind::Real);
  CHECK(m.at(1, 0) == 3.0);
  CHECK(m.row(1)[1] == 4.0);
  CHECK(m.column_means()[0] == doctest::Approx(2.0));
}

TEST_CASE("SideInfo rejects self links, duplicates and bad indices") {
  SideInfo E(4);
  E.add(0, 1, Link::May);
  E.add(2, 0, Link::MayNot);
  CHECK(E.size() == 2);
  CHECK(E.lookup(1, 0) == Link::May);
  CHECK(E.lookup(0, 2) == Link::MayNot);
  CHECK(!E.lookup(1, 2));
  CHECK_THROWS_AS(E.add(1, 1, Link::May), std::invalid_argument);
  CHECK_THROWS_AS(E.add(1, 0, Link::MayNot), std::invalid_argument);
  CHECK_THROWS_AS(E.add(0, 4, Link::May), std::out_of_range);
}

TEST_CASE("Partition construction and validation") {
  const auto p = Partition::single_cluster(3);
  CHECK(p.K() == 1);
  CHECK(p.counts[0] == 3);

  // factor encoding follows first appearance
  const std::vector<int> labels{7, 7, 2, 9, 2};
  const auto q = Partition::from_labels(labels);
  CHECK(q.assignments == std::vector<int>{0, 0, 1, 2, 1});
  CHECK(q.counts == std::vector<int>{2, 2, 1});

  CHECK_THROWS_AS(Partition::from_dense({0, 2}, 3), std::invalid_argument);
  Partition bad;
  bad.assignments = {0, 0};
  bad.counts = {1, 1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("compact_empty_clusters keeps survivor order") {
  std::vector<int> z{0, 3, 3, 5};
  std::vector<int> counts{1, 0, 0, 2, 0, 1};
  const auto map = compact_empty_clusters(z, counts);
  CHECK(map == std::vector<int>{0, -1, -1, 1, -1, 2});
  CHECK(z == std::vector<int>{0, 1, 1, 2});
  CHECK(counts == std::vector<int>{1, 2, 1});
}

TEST_CASE("hyperparameter validation") {
  CredibilityParams cred;
  cred.validate();
  cred.p = 1.0;
  CHECK_THROWS_AS(cred.validate(), std::invalid_argument);

  RdpHyperParams hp;
  hp.lambda = 2.0;
  hp.validate();
  CHECK(hp.effective_xi_cap() == doctest::Approx(1e6 * hp.xi0));
  hp.xi_rate = 0.5;
  CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
  hp.xi_rate = 1.0;
  hp.stable_iters = 600;
  CHECK_THROWS_AS(hp.validate(), std::invalid_argument);
}

TEST_CASE("friend_stranger_counts on the worked examples") {
  {
    SideInfo E(3);
    E.add(0, 1, Link::May);
    E.add(0, 2, Link::MayNot);
    const auto part = Partition::from_dense({0, 0, 1}, 2);
    const auto fs = friend_stranger_counts(0, part, E);
    CHECK(fs.friends == std::vector<int>{1, 0});
    CHECK(fs.strangers == std::vector<int>{0, 1});
  }
  {
    const SideInfo empty(5);
    const auto part = Partition::from_dense({0, 1, 0, 1, 0}, 2);
    for (int i = 0; i < 5; ++i) {
      const auto fs = friend_stranger_counts(i, part, empty);
      CHECK(std::count(fs.friends.begin(), fs.friends.end(), 0) == 2);
      CHECK(std::count(fs.strangers.begin(), fs.strangers.end(), 0) == 2);
    }
  }
  {
    SideInfo E(4);
    E.add(3, 0, Link::May);
    E.add(3, 1, Link::May);
    E.add(3, 2, Link::MayNot);
    const auto part = Partition::from_dense({0, 0, 0, 1}, 2);
    const auto fs = friend_stranger_counts(3, part, E);
    CHECK(fs.friends == std::vector<int>{2, 0});
    CHECK(fs.strangers == std::vector<int>{1, 0});
  }
  {
    const SideInfo E(2);
    const auto part = Partition::from_dense({0, 1}, 2);
    CHECK_THROWS_AS(friend_stranger_counts(2, part, E), std::out_of_range);
  }
}

TEST_CASE("friend/stranger totals equal i's entry count; relabel equivariance") {
  Rng rng(71);
  const int n = 24;
  for (int rep = 0; rep < 50; ++rep) {
    const int K = 2 + static_cast<int>(rng.uniform_index(4));
    std::vector<int> z(n);
    for (int i = 0; i < n; ++i) z[i] = static_cast<int>(rng.uniform_index(K));
    const auto part = Partition::from_labels(z);

    SideInfo E(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform01() < 0.2)
          E.add(i, j, rng.uniform01() < 0.5 ? Link::May : Link::MayNot);

    // relabeled copy: reverse the cluster ids
    std::vector<int> rev(part.assignments);
    for (int& v : rev) v = part.K() - 1 - v;
    const auto rpart = Partition::from_dense(rev, part.K());

    for (int i = 0; i < n; ++i) {
      const auto fs = friend_stranger_counts(i, part, E);
      int total = 0;
      for (int k = 0; k < part.K(); ++k) total += fs.friends[k] + fs.strangers[k];
      CHECK(total == static_cast<int>(E.neighbors(i).size()));

      const auto rfs = friend_stranger_counts(i, rpart, E);
      for (int k = 0; k < part.K(); ++k) {
        CHECK(rfs.friends[part.K() - 1 - k] == fs.friends[k]);
        CHECK(rfs.strangers[part.K() - 1 - k] == fs.strangers[k]);
      }
    }
  }
}
