#include "kfuse/partition.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numeric>

using namespace kfuse;

namespace {

Matrix<double> line_points(std::initializer_list<double> xs) {
  Matrix<double> pts(static_cast<Index>(xs.size()), 1);
  Index i = 0;
  for (double x : xs) pts(i++, 0) = x;
  return pts;
}

struct Stages {
  DistanceMatrix<double> dm;
  NeighborIndex index;
  DensityProfile<double> profile;
  SubClustering<double> initial;
  SubClustering<double> full;
};

Stages run(const Matrix<double>& pts, EnqueueMode mode = EnqueueMode::rep_image) {
  Stages s{pairwise_distances(pts), {}, {}, {}, {}};
  s.index = nan_search(s.dm);
  s.profile = compute_profile(s.index, s.dm, KMode::lambda);
  s.initial = divide_subclusters(s.index.nn, s.profile, mode);
  s.full = assign_outliers(s.initial, s.dm);
  return s;
}

}  // namespace

TEST_CASE("two separated pairs form two sub-clusters") {
  const auto s = run(line_points({0.0, 1.0, 10.0, 11.0}));
  CHECK(s.full.num_clusters() == 2);
  CHECK(s.full.labels == std::vector<int>{1, 1, 2, 2});
}

TEST_CASE("points 0, 1, 3 form one sub-cluster") {
  const auto s = run(line_points({0.0, 1.0, 3.0}));
  CHECK(s.full.num_clusters() == 1);
  CHECK(s.full.labels == std::vector<int>{1, 1, 1});
}

TEST_CASE("outlier assignment") {
  Matrix<double> pts = line_points({0.0, 1.0, 2.0, 3.0, 4.0});
  const auto dm = pairwise_distances(pts);
  SubClustering<double> sc;
  sc.labels = {1, 0, 0, 0, 2};
  sc.clusters = members_by_label(sc.labels, 2);

  SUBCASE("a chain resolves outward from both ends") {
    const auto out = assign_outliers(sc, dm);
    // 1 and 3 tie at distance 1 and 1 goes first. Then 2 and 3 tie again;
    // 2 joins through 1, and 3 picks its lower-index nearest neighbor 2.
    CHECK(out.labels == std::vector<int>{1, 1, 1, 1, 2});
    CHECK(out.clusters == NeighborLists{{0, 1, 2, 3}, {4}});
  }
  SUBCASE("matches the exhaustive oracle") {
    CHECK(assign_outliers(sc, dm).labels == oracle::assign_nearest(sc.labels, oracle::distances(oracle::to_points(pts))));
  }
  SUBCASE("nothing to do") {
    SubClustering<double> done;
    done.labels = {1, 1, 2, 2, 2};
    done.clusters = members_by_label(done.labels, 2);
    CHECK(assign_outliers(done, dm).labels == done.labels);
  }
  SUBCASE("no labeled point") {
    SubClustering<double> empty;
    empty.labels.assign(5, 0);
    CHECK_THROWS_AS(assign_outliers(empty, dm), Error);
  }
}

TEST_CASE("outlier assignment matches the oracle on random labelings") {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> label(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 3 + trial % 20;
    const auto pts = trial % 2 ? test::grid_points(rng, n, 2, 3) : test::uniform_points(rng, n, 2);
    SubClustering<double> sc;
    sc.labels.resize(static_cast<std::size_t>(n));
    for (auto& l : sc.labels) l = label(rng);
    sc.labels[0] = 1;
    sc.clusters = members_by_label(sc.labels, 3);
    const auto out = assign_outliers(sc, pairwise_distances(pts));
    CHECK(out.labels == oracle::assign_nearest(sc.labels, oracle::distances(oracle::to_points(pts))));
  }
}

TEST_CASE("cluster statistics") {
  Vector<double> rho(5);
  rho << 0.4, 0.0, 1.0, 1.0, 3.0;
  const auto stats = compute_cluster_stats(NeighborLists{{0, 1, 2}, {3, 4}}, rho);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].size == 3);
  CHECK(stats[0].mean == doctest::Approx(1.4 / 3.0));
  CHECK(stats[0].variance == doctest::Approx(oracle::mean_variance({0.4, 0.0, 1.0}).second));
  CHECK(stats[1].size == 2);
  CHECK(stats[1].mean == 2.0);
  CHECK(stats[1].variance == 1.0);
}

TEST_CASE("partition invariants on random data") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 5 + trial * 3;
    const auto pts = test::blob_points(rng, n, 1 + trial % 3, 1 + trial % 6);
    for (EnqueueMode mode : {EnqueueMode::rep_image, EnqueueMode::peaks_only}) {
      const auto s = run(pts, mode);
      const int m = static_cast<int>(s.full.num_clusters());
      CAPTURE(trial);
      REQUIRE(m >= 1);
      for (int l : s.full.labels) CHECK((l >= 1 && l <= m));
      for (const auto& members : s.full.clusters) CHECK_FALSE(members.empty());
      // Every sub-cluster is seeded by a peak.
      for (int c = 1; c <= m; ++c) {
        bool seeded = false;
        for (Index p : s.profile.peaks) seeded = seeded || s.initial.labels[static_cast<std::size_t>(p)] == c;
        CHECK(seeded);
      }
      for (std::size_t p = 0; p < s.initial.labels.size(); ++p) {
        if (s.initial.labels[p] != 0) CHECK(s.full.labels[p] == s.initial.labels[p]);
      }
      const auto ref = oracle::assign_nearest(s.initial.labels, oracle::distances(oracle::to_points(pts)));
      CHECK(s.full.labels == ref);
      for (int c = 0; c < m; ++c) {
        std::vector<double> values;
        for (Index p : s.initial.clusters[static_cast<std::size_t>(c)]) values.push_back(s.profile.rho(p));
        const auto [mean, variance] = oracle::mean_variance(values);
        CHECK(s.full.stats[static_cast<std::size_t>(c)].mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(s.full.stats[static_cast<std::size_t>(c)].variance == doctest::Approx(variance).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("point order does not change which points get labeled") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 40;
    const auto pts = test::blob_points(rng, n, 2, 3);
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix<double> shuffled(n, 2);
    for (Index i = 0; i < n; ++i) shuffled.row(i) = pts.row(perm[static_cast<std::size_t>(i)]);
    const auto a = run(pts);
    const auto b = run(shuffled);
    CHECK(a.full.num_clusters() == b.full.num_clusters());
    for (Index i = 0; i < n; ++i) {
      const auto p = static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]);
      CHECK(b.profile.rho(i) == a.profile.rho(static_cast<Index>(p)));
      CHECK((b.initial.labels[static_cast<std::size_t>(i)] == 0) == (a.initial.labels[p] == 0));
    }
  }
}

TEST_CASE("sub-clusters are permutation invariant when no boundary point is contested") {
  Matrix<double> pts(12, 2);
  pts << 0, 0, 0.5, 0.1, 1.1, 0, 0.4, 0.7, 20, 20, 20.6, 20.1, 21, 19.5, 20.2, 20.9,
         -15, 8, -15.3, 8.8, -14.2, 8.1, -14.9, 7.4;
  std::vector<Index> perm{7, 2, 11, 0, 9, 4, 1, 10, 5, 3, 8, 6};
  Matrix<double> shuffled(12, 2);
  for (Index i = 0; i < 12; ++i) shuffled.row(i) = pts.row(perm[static_cast<std::size_t>(i)]);
  const auto a = run(pts).full.labels;
  const auto b = run(shuffled).full.labels;
  std::vector<int> back(12);
  for (Index i = 0; i < 12; ++i) back[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = b[static_cast<std::size_t>(i)];
  CHECK(oracle::same_partition(a, back));
}
