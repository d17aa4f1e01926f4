#include <cmath>
#include <vector>

#include "doctest.h"
#include "girthlab/functionals.hpp"
#include "girthlab/rng.hpp"
#include "support/oracles.hpp"

using namespace girthlab;

TEST_SUITE_BEGIN("functionals");

TEST_CASE("star norm") {
  CHECK(PowerSeries::monomial(3).star_norm() == 9.0);
  CHECK(PowerSeries::constant(1.0).star_norm() == 0.0);
  CHECK(PowerSeries({0, 1, 1}).star_norm() == 5.0);
  CHECK(PowerSeries({0, 1}, 2.0, 0.25).star_norm() == 1.25);  // declared tail counts
}

TEST_CASE("power series plumbing") {
  const PowerSeries f({1, 2, 3});
  CHECK(f.eval(0.5) == doctest::Approx(1 + 1 + 0.75));
  const PowerSeries fsq = f.compose_square();
  CHECK(fsq.degree() == 4);
  CHECK(fsq.coeff(2) == 2.0);
  CHECK(fsq.coeff(3) == 0.0);
  const PowerSeries fd = f.derivative();
  CHECK(fd.coeffs() == std::vector<double>{2, 6});
  CHECK_THROWS_AS(PowerSeries({1.0}, 0.5), std::invalid_argument);
  CHECK(PowerSeries::parse("0,0,1").degree() == 2);
  CHECK_THROWS_AS(PowerSeries::parse("0,x"), std::invalid_argument);
}

TEST_CASE("t_monomial: trivial degrees vanish") {
  const Graph g = build_cycle(8);
  const Perturbation b = sample(make_sampler(SamplerKind::AntisymmetricPair, 2), g, 3);
  CHECK(t_monomial(g, b, 0) == 0.0);
  CHECK(t_monomial(g, b, 1) == 0.0);
}

TEST_CASE("t_monomial degree 2 on a cycle: hand expansion") {
  // With the antisymmetric row (sigma, -sigma), Tr B^2 = -2 sum sigma_u sigma_{u+1},
  // so T(z^2) = (-2/sqrt(n)) sum_u sigma_u sigma_{u+1}.
  const Graph g = build_cycle(40);
  const Perturbation b = sample(make_sampler(SamplerKind::AntisymmetricPair, 2), g, 11);
  double sum = 0.0;
  for (std::int64_t u = 0; u < g.n; ++u) {
    const double sigma_u = b.entry(u, 0);
    const double sigma_next = b.entry((u + 1) % g.n, 0);
    sum += sigma_u * sigma_next;
  }
  const double expected = -2.0 * sum / std::sqrt(static_cast<double>(g.n));
  CHECK(t_monomial(g, b, 2) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(t_monomial(g, b, 2) == doctest::Approx(oracles::dense_t_monomial(g, b, 2)).epsilon(1e-13));
}

TEST_CASE("odd monomials vanish on bipartite graphs") {
  const Graph heawood = build_lcf(lcf_catalog_entry("heawood"));
  const Perturbation b = sample(make_sampler(SamplerKind::PermutedVector, 3), heawood, 5);
  CHECK(std::abs(t_monomial(heawood, b, 3)) <= 1e-14);
  CHECK(std::abs(oracles::dense_t_monomial(heawood, b, 3)) <= 1e-13);
  CHECK(std::abs(t_monomial(heawood, b, 5)) <= 1e-13);
}

TEST_CASE("t_monomial equals the dense oracle on every shipped family") {
  struct Case {
    Graph g;
    EnvironmentSampler s;
  };
  std::vector<Case> cases;
  cases.push_back({build_cycle(16), make_sampler(SamplerKind::AntisymmetricPair, 2)});
  cases.push_back({build_lcf(lcf_catalog_entry("heawood")), make_sampler(SamplerKind::PermutedVector, 3)});
  cases.push_back({build_lcf(lcf_catalog_entry("pappus")), make_sampler(SamplerKind::PermutedVector, 3)});
  for (const auto& c : cases) {
    for (std::uint64_t seed : {1ull, 2ull}) {
      const Perturbation b = sample(c.s, c.g, seed);
      for (int j = 2; j <= 8; ++j) {
        CAPTURE(c.g.name);
        CAPTURE(j);
        CHECK(t_monomial(c.g, b, j) ==
              doctest::Approx(oracles::dense_t_monomial(c.g, b, j)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("t_function: linearity and the star-norm bound") {
  const Graph g = build_cycle(24);
  const EnvironmentSampler s = make_sampler(SamplerKind::AntisymmetricPair, 2);
  const PowerSeries f({0, 0, 1, 2});   // z^2 + 2 z^3
  const PowerSeries h({0, 0, -1, 0, 0.5});
  for (std::uint64_t seed : {10ull, 11ull, 12ull}) {
    const Perturbation b = sample(s, g, seed);
    const double tf = t_function(g, b, f).value;
    const double th = t_function(g, b, h).value;
    // combination 2f - 3h
    std::vector<double> combo{0, 0, 2.0 * 1 - 3.0 * (-1), 2.0 * 2, -3.0 * 0.5};
    const double tc = t_function(g, b, PowerSeries(std::move(combo))).value;
    CHECK(tc == doctest::Approx(2 * tf - 3 * th).epsilon(1e-12));
    CHECK(tf == doctest::Approx(t_monomial(g, b, 2) + 2 * t_monomial(g, b, 3)).epsilon(1e-13));
    CHECK(std::abs(tf) <=
          s.c1 * s.c1 * std::sqrt(static_cast<double>(g.n)) * f.star_norm() + 1e-12);
    CHECK(t_function(g, b, PowerSeries::constant(4.2)).value == 0.0);
  }
}

TEST_CASE("t_function reports the declared tail bound") {
  const Graph g = build_cycle(9);
  const Perturbation b = sample(make_sampler(SamplerKind::AntisymmetricPair, 2), g, 1);
  const PowerSeries f({0, 0, 1}, 2.0, 0.125);
  const TFunctionResult r = t_function(g, b, f);
  CHECK(r.tail_bound == doctest::Approx(4.0 * 3.0 * 0.125).epsilon(1e-14));
  CHECK(t_function(g, b, PowerSeries({0, 0, 1})).tail_bound == 0.0);
}

TEST_CASE("m_eps: constants vanish and domain errors fire") {
  const Graph g = build_cycle(12);
  const Perturbation b = sample(make_sampler(SamplerKind::AntisymmetricPair, 2), g, 2);
  CHECK(m_eps(g, b, PowerSeries::constant(3.0), 0.1) == 0.0);
  CHECK_THROWS_AS(m_eps(g, b, PowerSeries::monomial(4), 0.5), std::invalid_argument);   // eps c1 >= 1
  CHECK_THROWS_AS(m_eps(g, b, PowerSeries::monomial(4), -0.1), std::invalid_argument);
  CHECK_THROWS_AS(m_eps(g, b, PowerSeries({0, 1}, 1.0), 0.1), std::invalid_argument);
}

TEST_CASE("m_eps matches the dense eigensolver oracle") {
  const PowerSeries z4 = PowerSeries::monomial(4);
  std::vector<double> expc(21);
  double fact = 1.0;
  for (int k = 0; k <= 20; ++k) {
    expc[static_cast<std::size_t>(k)] = 1.0 / fact;
    fact *= (k + 1);
  }
  const PowerSeries expf(std::move(expc), 10.0);

  struct Case {
    Graph g;
    EnvironmentSampler s;
  };
  std::vector<Case> cases;
  cases.push_back({build_cycle(12), make_sampler(SamplerKind::AntisymmetricPair, 2)});
  cases.push_back({build_cycle(64), make_sampler(SamplerKind::AntisymmetricPair, 2)});
  cases.push_back({build_lcf(lcf_catalog_entry("heawood")), make_sampler(SamplerKind::PermutedVector, 3)});
  for (const auto& c : cases) {
    const Perturbation b = sample(c.s, c.g, 17);
    for (double eps : {0.05, 0.02}) {
      if (eps * c.s.c1 >= 1.0) continue;
      CAPTURE(c.g.name);
      CHECK(m_eps(c.g, b, z4, eps) ==
            doctest::Approx(oracles::eig_m_eps(c.g, b, z4, eps)).epsilon(1e-8));
      CHECK(m_eps(c.g, b, expf, eps) ==
            doctest::Approx(oracles::eig_m_eps(c.g, b, expf, eps)).epsilon(1e-8));
    }
  }
}

TEST_CASE("m_eps converges to t_function as eps drops") {
  const Graph g = build_cycle(12);
  const EnvironmentSampler s = make_sampler(SamplerKind::AntisymmetricPair, 2);
  const PowerSeries f = PowerSeries::monomial(4);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Perturbation b = sample(s, g, seed);
    const double target = t_function(g, b, f).value;
    std::vector<double> gaps;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4})
      gaps.push_back(std::abs(m_eps(g, b, f, eps) - target));
    // Monotone decay and at least one decade per decade overall.
    CHECK(gaps[3] < gaps[0]);
    CHECK(gaps[3] <= gaps[0] * 1e-2);
  }
}

TEST_CASE("zero_entry_check: cycles with the antisymmetric sampler") {
  const Graph g = build_cycle(30);
  const Perturbation b = sample(make_sampler(SamplerKind::AntisymmetricPair, 2), g, 8);
  CHECK(zero_entry_check(g, b, 0) == 0.0);  // B has no diagonal
  CHECK(zero_entry_check(g, b, 25) <= 1e-14);
  CHECK(oracles::dense_zero_entry(g, b, 12) <= 1e-13);
}

TEST_CASE("zero_entry_check: tree-radius gate on the Foster graph") {
  const Graph g = build_lcf(lcf_catalog_entry("foster"));
  const Perturbation b = sample(make_sampler(SamplerKind::PermutedVector, 3), g, 21);
  CHECK(zero_entry_check(g, b, 4) <= 1e-14);  // k <= (girth-2)/2
  CHECK(oracles::dense_zero_entry(g, b, 4) <= 1e-13);
  // The catalog graphs are arc-transitive, so the diagonal stays zero at
  // every k, far beyond the girth guarantee.
  CHECK(zero_entry_check(g, b, 20) <= 1e-14);
}

TEST_CASE("zero_entry_check breaks past the gate on an asymmetric Cayley graph") {
  // Generators from two conjugacy classes (a unipotent and a torus element):
  // walk reversal still pairs s with s^-1, but nothing equates the two pairs,
  // so the diagonal of B M^k survives once walks feel the 4-cycles.
  const std::vector<Mat2> gens{{1, 2, 0, 1}, {1, -2, 0, 1}, {2, 0, 0, 3}, {3, 0, 0, 2}};
  const Graph g = build_cayley(5, gens);
  CHECK(g.girth == 4);
  const Perturbation b = sample(make_sampler(SamplerKind::PermutedVector, 4), g, 1);
  CHECK(zero_entry_check(g, b, (g.girth - 2) / 2) <= 1e-14);
  CHECK(zero_entry_check(g, b, 3) > 1e-3);
  CHECK(oracles::dense_zero_entry(g, b, 3) > 1e-3);
}

TEST_SUITE_END();
