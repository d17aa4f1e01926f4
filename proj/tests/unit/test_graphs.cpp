#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "girthlab/graphs.hpp"
#include "support/oracles.hpp"

using namespace girthlab;

TEST_SUITE_BEGIN("graphs");

TEST_CASE("cycle structure and slot order") {
  const Graph g = build_cycle(5);
  CHECK(g.n == 5);
  CHECK(g.d == 2);
  CHECK(std::set<int>{g.neighbor(0, 0), g.neighbor(0, 1)} == std::set<int>{1, 4});
  CHECK(g.neighbor(0, 0) == 4);  // slot 0: predecessor
  CHECK(g.neighbor(0, 1) == 1);  // slot 1: successor
  CHECK_FALSE(g.bipartite);
  CHECK(build_cycle(6).bipartite);
  CHECK(build_cycle(6).girth == 6);
  CHECK_THROWS_AS(build_cycle(2), std::invalid_argument);
}

TEST_CASE("cycle girth is n, exhaustively") {
  for (int n = 3; n <= 50; ++n) {
    const Graph g = build_cycle(n);
    CHECK(g.girth == n);
    CHECK(compute_girth(g) == n);
  }
}

TEST_CASE("cycle transition operator is doubly stochastic") {
  const Graph g = build_cycle(200);
  std::vector<double> ones(200, 1.0);
  const std::vector<double> image = apply_M(g, ones);
  for (double x : image) CHECK(x == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lcf catalog: order and girth match the published values") {
  struct Expected {
    const char* name;
    int n;
    int girth;
  };
  // Girth values recomputed by the BFS at build time must agree with these
  // catalog constants.
  const Expected expected[] = {
      {"heawood", 14, 6}, {"pappus", 18, 6}, {"desargues", 20, 6},
      {"tutte-coxeter", 30, 8}, {"foster", 90, 10},
  };
  for (const auto& e : expected) {
    const Graph g = build_lcf(lcf_catalog_entry(e.name));
    CAPTURE(e.name);
    CHECK(g.n == e.n);
    CHECK(g.d == 3);
    CHECK(g.girth == e.girth);
    CHECK(g.vertex_transitive);
    CHECK(g.bipartite);
  }
}

TEST_CASE("lcf girth agrees with an independent edge-deletion oracle") {
  for (const char* name : {"heawood", "pappus", "desargues", "tutte-coxeter"}) {
    const Graph g = build_lcf(lcf_catalog_entry(name));
    CHECK(g.girth == oracles::girth_by_edge_deletion(g));
  }
}

TEST_CASE("lcf rejects bad codes") {
  CHECK_THROWS_AS(build_lcf({"", {1, -1}, 2, false}), std::invalid_argument);  // chord = cycle edge
  CHECK_THROWS_AS(build_lcf({"", {7, 7}, 1, false}), std::invalid_argument);   // too few vertices
  CHECK_THROWS_AS(build_lcf({"", {2, 3}, 3, false}), std::invalid_argument);   // chord mismatch
  CHECK_THROWS_AS(lcf_catalog_entry("petersen"), std::invalid_argument);
  // K_{3,3} in LCF form is legitimate: jumps of length n/2 pair up consistently.
  const Graph k33 = build_lcf({"k33", {3, 3, 3, 3, 3, 3}, 1, true});
  CHECK(k33.n == 6);
  CHECK(k33.girth == 4);
}

TEST_CASE("cayley graph of SL(2,5): group enumeration oracle") {
  const Graph g = build_cayley(5, standard_cayley_generators());
  CHECK(g.d == 4);

  // Independent count of SL(2, Z_5): brute force over all 2x2 matrices.
  int det_one = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d)
          if (((a * d - b * c) % 5 + 5) % 5 == 1) ++det_one;
  CHECK(det_one == 120);
  CHECK(g.n == det_one);
  CHECK(g.vertex_transitive);
}

TEST_CASE("cayley girth grows with the modulus") {
  const Graph g5 = build_cayley(5, standard_cayley_generators());
  const Graph g13 = build_cayley(13, standard_cayley_generators());
  CHECK(g13.n == 13 * (13 * 13 - 1));
  CHECK(g13.girth >= g5.girth);
  CHECK(g5.girth == compute_girth(g5));
}

TEST_CASE("cayley validation") {
  CHECK_THROWS_AS(build_cayley(4, standard_cayley_generators()), std::invalid_argument);
  CHECK_THROWS_AS(build_cayley(5, {{1, 0, 0, 1}}), std::invalid_argument);  // identity
  CHECK_THROWS_AS(build_cayley(5, {{1, 2, 0, 1}}), std::invalid_argument);  // not inverse-closed
  CHECK_THROWS_AS(build_cayley(5, {{0, 0, 0, 1}, {1, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("apply_M basics") {
  const Graph g = build_cycle(4);
  std::vector<double> e0{1, 0, 0, 0};
  const auto image = apply_M(g, e0);
  CHECK(image == std::vector<double>{0.0, 0.5, 0.0, 0.5});
  CHECK_THROWS_AS(apply_M(g, std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("apply_M is a contraction in the sup norm") {
  for (const Graph& g : {build_cycle(9), build_lcf(lcf_catalog_entry("heawood"))}) {
    std::vector<double> x(static_cast<std::size_t>(g.n));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(3.7 * static_cast<double>(i)) * 2.0 - 0.3;
    double before = 0.0, after = 0.0;
    for (double v : x) before = std::max(before, std::abs(v));
    for (double v : apply_M(g, x)) after = std::max(after, std::abs(v));
    CHECK(after <= before + 1e-15);
  }
}

TEST_CASE("apply_M agrees with the dense operator") {
  for (const Graph& g : {build_cycle(200), build_lcf(lcf_catalog_entry("foster")),
                         build_cayley(5, standard_cayley_generators())}) {
    const Eigen::MatrixXd M = oracles::dense_M(g);
    Eigen::VectorXd x(g.n);
    for (std::int64_t i = 0; i < g.n; ++i) x[i] = std::cos(0.91 * static_cast<double>(i));
    const std::vector<double> xs(x.data(), x.data() + g.n);
    const std::vector<double> got = apply_M(g, xs);
    const Eigen::VectorXd want = M * x;
    for (std::int64_t i = 0; i < g.n; ++i) CHECK(got[static_cast<std::size_t>(i)] == doctest::Approx(want[i]).epsilon(1e-14));
  }
}

TEST_CASE("walk_matrix_column: known values and stochasticity") {
  const Graph g = build_cycle(6);
  CHECK(walk_matrix_column(g, 2, 0) == std::vector<double>{0, 0, 1, 0, 0, 0});
  const auto col = walk_matrix_column(g, 0, 2);
  CHECK(col == std::vector<double>{0.5, 0.0, 0.25, 0.0, 0.25, 0.0});
  double sum = 0.0;
  for (double v : walk_matrix_column(g, 1, 5)) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("walk_matrix_column vanishes outside the radius-k ball") {
  const Graph g = build_lcf(lcf_catalog_entry("pappus"));
  for (int k : {0, 1, 2, 3}) {
    const auto col = walk_matrix_column(g, 7, k);
    // BFS distances.
    std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
    std::vector<std::int64_t> queue{7};
    dist[7] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::int32_t w : g.neighbors(queue[h]))
        if (dist[w] < 0) {
          dist[w] = dist[queue[h]] + 1;
          queue.push_back(w);
        }
    for (std::int64_t v = 0; v < g.n; ++v)
      if (dist[static_cast<std::size_t>(v)] > k) CHECK(col[static_cast<std::size_t>(v)] == 0.0);
  }
}

TEST_CASE("walk_matrix_column agrees with dense powers") {
  const Graph g = build_lcf(lcf_catalog_entry("heawood"));
  const Eigen::MatrixXd M = oracles::dense_M(g);
  const Eigen::MatrixXd M3 = M * M * M;
  const auto col = walk_matrix_column(g, 4, 3);
  for (std::int64_t v = 0; v < g.n; ++v)
    CHECK(col[static_cast<std::size_t>(v)] == doctest::Approx(M3(v, 4)).epsilon(1e-14));
}

TEST_CASE("truncated tree layout") {
  const Graph tree = build_truncated_tree(3, 4);
  CHECK(tree.n == 1 + 3 * (2 + 4 + 8 + 16) / 2);  // 1 + 3*(2^4 - 1)
  CHECK(tree.girth == kGirthAcyclic);
  CHECK(tree.full_row(0));
  CHECK_FALSE(tree.full_row(tree.n - 1));  // leaf
  // Parent links are symmetric.
  for (std::int64_t v = 1; v < tree.n; ++v) {
    const std::int32_t parent = tree.neighbor(v, 0);
    REQUIRE(parent >= 0);
    const auto row = tree.neighbors(parent);
    CHECK(std::find(row.begin(), row.end(), static_cast<std::int32_t>(v)) != row.end());
  }
  const Graph line = build_truncated_tree(2, 5);
  CHECK(line.n == 11);
}

TEST_CASE("graph spec strings") {
  CHECK(build_graph("cycle n=12").n == 12);
  CHECK(build_graph("lcf name=foster").girth == 10);
  CHECK(build_graph("lcf jumps=5,-5 exponent=7").n == 14);
  CHECK(build_graph("cayley p=5 gens=standard").n == 120);
  CHECK(build_graph("tree d=3 depth=2").n == 10);
  CHECK_THROWS_AS(build_graph("moebius n=4"), std::invalid_argument);
  CHECK_THROWS_AS(build_graph("cycle"), std::invalid_argument);
}

TEST_SUITE_END();
