#include "tada/count_sketch.hpp"
#include "tada/oracles.hpp"
#include "tada/rwr_sketch.hpp"
#include "tada/sketched_adjacency.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace tada;

TEST_CASE("count sketch construction: determinism, range, errors") {
  const CountSketch a = build_count_sketch(100, 16, 7);
  const CountSketch b = build_count_sketch(100, 16, 7);
  CHECK(a.hash == b.hash);
  CHECK(a.sign == b.sign);
  for (Index i = 0; i < 100; ++i) {
    CHECK(a.hash[static_cast<std::size_t>(i)] >= 0);
    CHECK(a.hash[static_cast<std::size_t>(i)] < 16);
    CHECK(std::abs(int(a.sign[static_cast<std::size_t>(i)])) == 1);
  }
  CHECK(build_count_sketch(100, 16, 8).hash != a.hash);
  CHECK_THROWS_AS(build_count_sketch(10, 0, 1), std::invalid_argument);
}

TEST_CASE("injective sketch is a signed permutation when k == n") {
  const CountSketch cs = build_injective_count_sketch(4, 4, 3);
  std::set<Index> buckets(cs.hash.begin(), cs.hash.end());
  CHECK(buckets.size() == 4);

  // Orthogonal up to signs: R^T R = I.
  const Matrix r = testutil::dense_sketch_operator(cs);
  CHECK((r.transpose() * r).isApprox(Matrix::Identity(4, 4), 1e-12));
  CHECK_THROWS_AS(build_injective_count_sketch(5, 4, 1), std::invalid_argument);
}

TEST_CASE("bucket histogram stays within 5 sigma of uniform (chi-square)") {
  const Index n = 1000, k = 16;
  const CountSketch cs = build_count_sketch(n, k, 1);
  std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
  for (Index h : cs.hash) counts[static_cast<std::size_t>(h)] += 1.0;
  const double expected = static_cast<double>(n) / static_cast<double>(k);
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // df = k-1 = 15; mean 15, sd sqrt(30).
  CHECK(chi2 <= 15.0 + 5.0 * std::sqrt(30.0));
}

TEST_CASE("apply_count_sketch marks neighbor buckets on the triangle") {
  CountSketch cs;
  cs.k = 3;
  cs.hash = {0, 1, 2};
  cs.sign = {1, 1, 1};
  const Matrix a = apply_count_sketch(testutil::triangle(), cs);
  Matrix want(3, 3);
  want << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  CHECK(a.isApprox(want, 1e-15));
}

TEST_CASE("star center row norm squares to its degree under injective hash") {
  const Graph st = testutil::star(5);
  const CountSketch cs = build_injective_count_sketch(6, 8, 9);
  const Matrix a = apply_count_sketch(st, cs);
  CHECK(a.row(0).squaredNorm() == doctest::Approx(5.0));
}

TEST_CASE("k = 1 collapses each row to the neighbor sign sum") {
  const Graph g = testutil::gnp(20, 0.3, 5);
  const CountSketch cs = build_count_sketch(20, 1, 5);
  const Matrix a = apply_count_sketch(g, cs);
  for (Index i = 0; i < 20; ++i) {
    double want = 0.0;
    for (Index j : g.neighbors(i)) want += cs.sign[static_cast<std::size_t>(j)];
    CHECK(a(i, 0) == doctest::Approx(want));
  }
}

TEST_CASE("apply_count_sketch equals the dense sketch product") {
  const Graph g = testutil::gnp(40, 0.2, 21);
  const CountSketch cs = build_count_sketch(40, 8, 21);
  const Matrix dense =
      oracles::dense_adjacency(g) * testutil::dense_sketch_operator(cs).transpose();
  CHECK(apply_count_sketch(g, cs).isApprox(dense, 1e-12));
}

TEST_CASE("exactness under injective hash: (A R^T)(R w) = A w") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = testutil::gnp(30, 0.25, seed + 40);
    const CountSketch cs = build_injective_count_sketch(30, 64, seed);
    const Matrix art = apply_count_sketch(g, cs);
    const Matrix r = testutil::dense_sketch_operator(cs);
    const Matrix a = oracles::dense_adjacency(g);
    for (int t = 0; t < 5; ++t) {
      const Vector w = testutil::random_unit_vector(30, seed * 10 + t);
      CHECK((art * (r * w) - a * w).cwiseAbs().maxCoeff() <= 1e-6);
    }
  }
}

TEST_CASE("rwr sketch on the two-triangle barbell") {
  // Triangles {0,1,2} and {3,4,5} joined by (2,3).
  const Graph g =
      Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
  const RwrSketch s = build_rwr_sketch(g, 2, 4, 2, 0.5);

  // The two degree-3 bridge nodes win the centrality ranking on both sides.
  CHECK(s.centroids.size() == 2);
  CHECK(std::set<Index>(s.centroids.begin(), s.centroids.end()) == std::set<Index>{2, 3});

  const Index left = s.centroids[0] == 2 ? 0 : 1;
  const Index right = 1 - left;
  CHECK(s.assignment[0] == left);
  CHECK(s.assignment[1] == left);
  CHECK(s.assignment[4] == right);
  CHECK(s.assignment[5] == right);
  CHECK(s.unreachable_nodes == 0);

  // Scores agree with the dense power-sum oracle, and with the hand value
  // for (node 0 -> centroid 2): 0.25 * 1/2 + 0.125 * 1/4 = 0.15625.
  const std::vector<Index> candidates = {2, 3, 0, 1};
  const RowMajorMatrix sparse = rwr_scores(g, candidates, 2, 0.5);
  const Matrix dense = oracles::exact_rwr_scores(g, candidates, 2, 0.5);
  CHECK((sparse - dense).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(sparse(0, 0) == doctest::Approx(0.15625).epsilon(1e-12));
}

TEST_CASE("rwr sketch with zero steps: centroids claim only themselves") {
  const Graph g = testutil::gnp(12, 0.3, 2);
  const RwrSketch s = build_rwr_sketch(g, 3, 6, 0, 0.5);
  for (Index r = 0; r < 3; ++r) {
    const Index c = s.centroids[static_cast<std::size_t>(r)];
    CHECK(s.assignment[static_cast<std::size_t>(c)] == r);
  }
  // Everyone else scores zero against every centroid and parks in slot 0.
  Index parked = 0;
  for (Index v = 0; v < 12; ++v) {
    const bool is_centroid =
        std::find(s.centroids.begin(), s.centroids.end(), v) != s.centroids.end();
    if (!is_centroid) {
      CHECK(s.assignment[static_cast<std::size_t>(v)] == 0);
      ++parked;
    }
  }
  CHECK(s.unreachable_nodes == parked);
}

TEST_CASE("rwr sketch with k = 1 gathers every node") {
  const Graph g = testutil::random_connected_nonbipartite(15, 0.3, 4);
  const RwrSketch s = build_rwr_sketch(g, 1, 5, 2, 0.5);
  CHECK(s.row_norm[0] == doctest::Approx(std::sqrt(15.0)));
  for (Index v = 0; v < 15; ++v) CHECK(s.assignment[static_cast<std::size_t>(v)] == 0);
}

TEST_CASE("rwr sketch precondition errors") {
  const Graph g = testutil::triangle();
  CHECK_THROWS_AS(build_rwr_sketch(g, 4, 3, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_rwr_sketch(g, 2, 4, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_rwr_sketch(g, 1, 2, 2, 1.5), std::invalid_argument);
}

TEST_CASE("rwr truncation obeys the geometric tail bound") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Graph g = testutil::gnp(25, 0.2, seed + 60);
    std::vector<Index> sources;
    for (Index v = 0; v < g.num_nodes(); v += 3) sources.push_back(v);
    for (double alpha : {0.3, 0.5}) {
      const RowMajorMatrix full = rwr_scores(g, sources, 200, alpha);
      for (Index t : {0, 1, 2, 5}) {
        const RowMajorMatrix part = rwr_scores(g, sources, t, alpha);
        CHECK((full - part).cwiseAbs().maxCoeff() <=
              std::pow(alpha, static_cast<double>(t + 1)));
      }
    }
  }
}

TEST_CASE("hybrid sketch with beta = 0 is the count sketch alone") {
  const Graph g = testutil::gnp(20, 0.3, 8);
  const CountSketch cs = build_count_sketch(20, 8, 8);
  const RwrSketch rs = build_rwr_sketch(g, 8, 16, 2, 0.5);
  const SketchedAdjacency a = hybrid_sketch(g, cs, rs, 0.0);
  CHECK(a.values.isApprox(apply_count_sketch(g, cs), 1e-15));
}

TEST_CASE("one-node graph sketches to all zeros for any beta") {
  const Graph g = Graph::from_edges(1, {});
  const CountSketch cs = build_count_sketch(1, 1, 0);
  const RwrSketch rs = build_rwr_sketch(g, 1, 1, 2, 0.5);
  for (double beta : {0.0, 1.0, 2.5}) {
    const SketchedAdjacency a = hybrid_sketch(g, cs, rs, beta);
    CHECK(a.values.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("hybrid adds the normalized centroid column") {
  // Every node assigned to slot 0 with pre-normalization norm sqrt(3): each
  // triangle row gains 2/sqrt(3) in column 0.
  const Graph g = testutil::triangle();
  CountSketch cs;
  cs.k = 3;
  cs.hash = {0, 1, 2};
  cs.sign = {1, 1, 1};
  RwrSketch rs;
  rs.k = 3;
  rs.assignment = {0, 0, 0};
  rs.row_norm = Vector::Zero(3);
  rs.row_norm[0] = std::sqrt(3.0);
  rs.centroids = {0, 1, 2};
  rs.candidate_set_size = 3;

  const SketchedAdjacency pure = hybrid_sketch(g, cs, rs, 0.0);
  const SketchedAdjacency mixed = hybrid_sketch(g, cs, rs, 1.0);
  const Matrix delta = mixed.values - pure.values;
  for (Index i = 0; i < 3; ++i) {
    CHECK(delta(i, 0) == doctest::Approx(2.0 / std::sqrt(3.0)));
    CHECK(delta(i, 1) == doctest::Approx(0.0));
    CHECK(delta(i, 2) == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(hybrid_sketch(g, build_count_sketch(3, 2, 0), rs, 1.0), std::invalid_argument);
}

TEST_CASE("common neighbor estimate is exact under injective hash") {
  const Graph g = testutil::gnp(25, 0.3, 17);
  const CountSketch cs = build_injective_count_sketch(25, 32, 17);
  SketchedAdjacency a;
  a.k = cs.k;
  a.beta = 0.0;
  a.values = apply_count_sketch(g, cs);
  for (Index i = 0; i < 25; i += 5)
    for (Index j = i; j < 25; j += 7)
      CHECK(estimate_common_neighbors(a, i, j) ==
            doctest::Approx(static_cast<double>(testutil::common_neighbors(g, i, j))));

  // Diagonal on a star center recovers the exact degree.
  const Graph st = testutil::star(5);
  SketchedAdjacency sa;
  sa.k = 8;
  sa.beta = 0.0;
  sa.values = apply_count_sketch(st, build_injective_count_sketch(6, 8, 2));
  CHECK(estimate_common_neighbors(sa, 0, 0) == doctest::Approx(5.0));

  sa.beta = 1.0;
  CHECK_THROWS_AS(estimate_common_neighbors(sa, 0, 0), std::invalid_argument);
  sa.beta = 0.0;
  CHECK_THROWS_AS(estimate_common_neighbors(sa, 0, 99), std::invalid_argument);
}

TEST_CASE("common neighbor estimate is unbiased across seeds") {
  const Graph g = testutil::gnp(30, 0.3, 55);
  const std::pair<Index, Index> pairs[] = {{0, 1}, {2, 17}, {5, 5}, {10, 20}};
  for (auto [i, j] : pairs) {
    const double exact = i == j ? static_cast<double>(g.degree(i))
                                : static_cast<double>(testutil::common_neighbors(g, i, j));
    double sum = 0.0, sum_sq = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      SketchedAdjacency a;
      a.k = 256;
      a.beta = 0.0;
      a.values = apply_count_sketch(g, build_count_sketch(30, 256, 1000 + t));
      const double est = estimate_common_neighbors(a, i, j);
      sum += est;
      sum_sq += est * est;
    }
    const double mean = sum / trials;
    const double var = sum_sq / trials - mean * mean;
    const double stderr_mean = std::sqrt(var / trials);
    CHECK(std::abs(mean - exact) <= 3.0 * std::max(stderr_mean, 1e-12));
  }
}

TEST_CASE("sketch-level proximity error shrinks as k doubles") {
  const Graph g = testutil::gnp(50, 0.2, 123);
  const Matrix a2 = oracles::dense_adjacency(g) * oracles::dense_adjacency(g);
  double prev = -1.0;
  for (Index k : {8, 16, 32}) {
    double total = 0.0;
    for (int s = 0; s < 100; ++s) {
      const Matrix art = apply_count_sketch(g, build_count_sketch(50, k, 9000 + s));
      total += (art * art.transpose() - a2).norm();
    }
    const double mean_err = total / 100.0;
    if (prev >= 0.0) CHECK(mean_err < prev);
    prev = mean_err;
  }

  // Injective regime: A' A'^T equals A^2 exactly.
  const Matrix art = apply_count_sketch(g, build_injective_count_sketch(50, 64, 5));
  CHECK((art * art.transpose() - a2).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("squared-norm row scaling recovers the meeting matrix exactly") {
  const Graph g = testutil::random_connected_nonbipartite(20, 0.3, 77);
  const Matrix art = apply_count_sketch(g, build_injective_count_sketch(20, 32, 7));
  Matrix scaled = art;
  for (Index i = 0; i < 20; ++i) scaled.row(i) /= art.row(i).squaredNorm();
  const Matrix p = oracles::dense_transition(g);
  CHECK((scaled * scaled.transpose() - p * p.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("sketch outputs are pure functions of inputs") {
  const Graph g = testutil::gnp(30, 0.25, 31);
  const RwrSketch r1 = build_rwr_sketch(g, 4, 12, 2, 0.5, 99);
  const RwrSketch r2 = build_rwr_sketch(g, 4, 12, 2, 0.5, 99);
  CHECK(r1.assignment == r2.assignment);
  CHECK(r1.centroids == r2.centroids);
  CHECK(r1.row_norm == r2.row_norm);

  const CountSketch cs = build_count_sketch(30, 4, 99);
  const SketchedAdjacency a1 = hybrid_sketch(g, cs, r1, 1.0);
  const SketchedAdjacency a2 = hybrid_sketch(g, cs, r2, 1.0);
  CHECK(a1.values == a2.values);
}
