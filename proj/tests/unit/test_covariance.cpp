#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "girthlab/covariance.hpp"
#include "girthlab/functionals.hpp"

using namespace girthlab;

namespace {

EnvironmentSampler antisym() { return make_sampler(SamplerKind::AntisymmetricPair, 2); }
EnvironmentSampler permvec3() { return make_sampler(SamplerKind::PermutedVector, 3); }

}  // namespace

TEST_SUITE_BEGIN("covariance");

TEST_CASE("alpha vanishes below degree 2") {
  const Graph g = build_cycle(9);
  CHECK(alpha(g, antisym(), 0, 5) == 0.0);
  CHECK(alpha(g, antisym(), 1, 2) == 0.0);
  CHECK(alpha(g, antisym(), 4, 1) == 0.0);
}

TEST_CASE("alpha_22 on cycles equals 2") {
  // Y_2(o, v) = B_{ov} B_{vo} is nonzero only at the two neighbors, each
  // contributing E[B^2] E[B^2] = 1.
  for (int n : {5, 8, 21, 200}) {
    const Graph g = build_cycle(n);
    CHECK(alpha(g, antisym(), 2, 2) == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("alpha matches a Monte Carlo covariance of t_monomial") {
  const Graph g = build_cycle(30);
  const EnvironmentSampler s = antisym();
  const int N = 20000;
  WalkTraceEngine engine(g, 4);
  auto scratch = engine.make_scratch();
  std::vector<double> mono(5);
  double sum22 = 0.0, sum24 = 0.0;
  for (int i = 0; i < N; ++i) {
    const Perturbation b = sample(s, g, 1000 + static_cast<std::uint64_t>(i));
    engine.monomials(b, mono, scratch);
    sum22 += mono[2] * mono[2];
    sum24 += mono[2] * mono[4];
  }
  // E[T_i T_j] = (ij/2) alpha_ij; 4-sigma bands with crude variance bounds.
  const double a22 = alpha(g, s, 2, 2);
  const double a24 = alpha(g, s, 2, 4);
  CHECK(std::abs(sum22 / N - 2.0 * a22) <= 4.0 * 8.0 / std::sqrt(static_cast<double>(N)));
  CHECK(std::abs(sum24 / N - 4.0 * a24) <= 4.0 * 40.0 / std::sqrt(static_cast<double>(N)));
}

TEST_CASE("tree alpha: neighbor count at (2,2), any depth") {
  CHECK(tree_alpha(2, antisym(), 2, 2, 3) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tree_alpha(3, permvec3(), 2, 2, 3) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(tree_alpha(4, make_sampler(SamplerKind::BalancedSigns, 4), 2, 2, 3) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("tree alpha: depth precondition and truncation exactness") {
  CHECK(tree_alpha_min_depth(2, 2) == 3);
  CHECK(tree_alpha_min_depth(6, 4) == 6);
  CHECK_THROWS_AS(tree_alpha(3, permvec3(), 6, 4, 5), std::invalid_argument);
  // Once the precondition holds, deeper truncations change nothing.
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{2, 2}, {4, 4}, {6, 4}, {5, 3}}) {
    const double shallow = tree_alpha(3, permvec3(), i, j, tree_alpha_min_depth(i, j));
    const double deep = tree_alpha(3, permvec3(), i, j, tree_alpha_min_depth(i, j) + 2);
    CHECK(shallow == doctest::Approx(deep).epsilon(1e-14));
  }
}

TEST_CASE("tree alpha is sampler independent") {
  // Only zero row sum and unit variance enter on a tree.
  const EnvironmentSampler balanced = make_sampler(SamplerKind::BalancedSigns, 4);
  const EnvironmentSampler perm4 = make_sampler(SamplerKind::PermutedVector, 4);
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{2, 2}, {4, 2}, {4, 4}, {6, 6}}) {
    const int depth = tree_alpha_min_depth(i, j);
    CHECK(tree_alpha(4, balanced, i, j, depth) ==
          doctest::Approx(tree_alpha(4, perm4, i, j, depth)).epsilon(1e-12));
  }
  const EnvironmentSampler perm3_alt =
      make_sampler(SamplerKind::PermutedVector, 3, std::vector<double>{1.0, 1.0, -2.0});
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{4, 4}, {6, 2}}) {
    const int depth = tree_alpha_min_depth(i, j);
    CHECK(tree_alpha(3, permvec3(), i, j, depth) ==
          doctest::Approx(tree_alpha(3, perm3_alt, i, j, depth)).epsilon(1e-12));
  }
}

TEST_CASE("alpha does not depend on the marked vertex") {
  const Graph g = build_cycle(26);
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {4, 2}}) {
    CHECK(alpha(g, antisym(), i, j, 0) ==
          doctest::Approx(alpha(g, antisym(), i, j, g.n / 2)).epsilon(1e-14));
  }
  const Graph foster = build_lcf(lcf_catalog_entry("foster"));
  CHECK(alpha(foster, permvec3(), 4, 4, 0) ==
        doctest::Approx(alpha(foster, permvec3(), 4, 4, 45)).epsilon(1e-13));
}

TEST_CASE("local convergence: alpha on cycles stabilizes in n") {
  // Once n > i + j the computation only sees a path neighborhood.
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{2, 2}, {4, 4}, {6, 4}}) {
    const double reference = alpha(build_cycle(64), antisym(), i, j);
    for (int n : {i + j + 1, i + j + 3, 40}) {
      CHECK(alpha(build_cycle(n), antisym(), i, j) ==
            doctest::Approx(reference).epsilon(1e-14));
    }
  }
}

TEST_CASE("tree exactness on the Foster graph") {
  const Graph foster = build_lcf(lcf_catalog_entry("foster"));
  const EnvironmentSampler s = permvec3();
  for (int i = 2; i <= 6; ++i)
    for (int j = 2; j <= 8 - i; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(alpha(foster, s, i, j) ==
            doctest::Approx(tree_alpha(3, s, i, j, tree_alpha_min_depth(i, j))).epsilon(1e-12));
    }
}

TEST_CASE("odd alpha vanishes on bipartite graphs") {
  const Graph c12 = build_cycle(12);
  const Graph heawood = build_lcf(lcf_catalog_entry("heawood"));
  CHECK(std::abs(alpha(c12, antisym(), 2, 3)) <= 1e-13);
  CHECK(std::abs(alpha(c12, antisym(), 3, 4)) <= 1e-13);
  CHECK(std::abs(alpha(heawood, permvec3(), 2, 5)) <= 1e-13);
  CHECK(std::abs(alpha(heawood, permvec3(), 3, 4)) <= 1e-13);
}

TEST_CASE("alpha bound from the star-norm lemma") {
  const Graph heawood = build_lcf(lcf_catalog_entry("heawood"));
  const EnvironmentSampler s = permvec3();
  const double c1_4 = std::pow(s.c1, 4);
  for (int i = 2; i <= 6; ++i)
    for (int j = 2; j <= 6; ++j)
      CHECK(std::abs(alpha(heawood, s, i, j)) <= c1_4 * i * j);
}

TEST_CASE("alpha table caches symmetrically with exactness flags") {
  const Graph foster = build_lcf(lcf_catalog_entry("foster"));
  const AlphaTable table = build_alpha_table(foster, permvec3(), 6);
  CHECK(table.alpha(2, 4) == table.alpha(4, 2));
  CHECK(table.alpha(2, 2) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(table.tree_exact(4, 4));
  CHECK_FALSE(table.tree_exact(5, 5));
  CHECK_THROWS_AS(table.alpha(7, 2), std::invalid_argument);

  const AlphaTable tree = build_tree_alpha_table(3, permvec3(), 6);
  CHECK(tree.tree_exact(6, 6));
  CHECK(tree.alpha(4, 4) == doctest::Approx(table.alpha(4, 4)).epsilon(1e-12));
}

TEST_CASE("h_form: values, symmetry, bilinearity, bounds") {
  const Graph g = build_cycle(50);
  const EnvironmentSampler s = antisym();
  const AlphaTable table = build_alpha_table(g, s, 8);

  const PowerSeries z2 = PowerSeries::monomial(2);
  CHECK(h_form(table, z2, z2) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(h_form(table, z2, PowerSeries::constant(7.0)) == 0.0);

  const PowerSeries f({0, 1, 0.5, -2});
  const PowerSeries g2({0, 0, 3, 0, 1});
  CHECK(h_form(table, f, g2) == doctest::Approx(h_form(table, g2, f)).epsilon(1e-13));

  // Bilinearity: H(a f + b h, g) = a H(f,g) + b H(h,g).
  const PowerSeries h({0, 0, -1, 1});
  std::vector<double> combo(5, 0.0);
  for (int k = 0; k < 5; ++k) combo[static_cast<std::size_t>(k)] = 2.0 * f.coeff(k) - 0.5 * h.coeff(k);
  CHECK(h_form(table, PowerSeries(std::move(combo)), g2) ==
        doctest::Approx(2.0 * h_form(table, f, g2) - 0.5 * h_form(table, h, g2)).epsilon(1e-12));

  CHECK(std::abs(h_form(table, f, g2)) <=
        std::pow(s.c1, 4) * f.star_norm() * g2.star_norm() + 1e-12);
  CHECK_THROWS_AS(h_form(table, PowerSeries::monomial(9), z2), std::invalid_argument);
}

TEST_SUITE_END();
