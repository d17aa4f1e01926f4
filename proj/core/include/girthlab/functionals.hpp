#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "girthlab/environment.hpp"
#include "girthlab/graphs.hpp"
#include "girthlab/power_series.hpp"

namespace girthlab {

/// Evaluates the spectral functionals T_G(z^j) for all monomial degrees up to
/// a cap, exactly, from the trace identity
///   T_G(z^j) = n^{-1/2} (j/2) sum_{k1+k2+2=j} Tr(B M^{k1} B M^{k2}).
///
/// The traces are expanded vertex by vertex inside precomputed balls of
/// radius j-1, so one sample costs O(n * ball * j^2) instead of O(n^2).
/// Construction walks the graph once; evaluation is pure and thread-safe as
/// long as each worker brings its own Scratch.
class WalkTraceEngine {
 public:
  WalkTraceEngine(const Graph& g, int max_degree);

  int max_degree() const { return jmax_; }
  const Graph& graph() const { return *g_; }

  struct Scratch {
    std::vector<double> powers;   // (kmax+1) stacked local columns M^k e_v
    std::vector<double> weights;  // (kmax+1) stacked local rows    M^k b_v
    std::vector<double> biased;   // (kmax+1) stacked local columns B M^k e_v
  };
  Scratch make_scratch() const;

  /// Writes T_G(z^j) for j = 0..max_degree into `out` (size max_degree + 1).
  void monomials(const Perturbation& b, std::span<double> out, Scratch& scratch) const;

 private:
  const Graph* g_;
  int jmax_;
  int kmax_;    // largest walk power needed: max(jmax - 2, 0)
  int radius_;  // ball radius: kmax + 1
  std::size_t max_ball_ = 0;
  std::vector<std::int64_t> ball_offset_;  // n + 1
  std::vector<std::int32_t> ball_verts_;   // concatenated balls, center first
  std::vector<std::int32_t> ball_adj_;     // local neighbor ids, -1 = outside
};

/// T_G(z^j); zero for j < 2.
double t_monomial(const Graph& g, const Perturbation& b, int j);

struct TFunctionResult {
  double value = 0.0;
  /// A priori bound c1^2 sqrt(n) * (declared tail star norm) on the part of
  /// T_G(f) dropped by truncating f. Zero for polynomials.
  double tail_bound = 0.0;
};

/// T_G(f) = sum_j a_j T_G(z^j) for a finite coefficient list.
TFunctionResult t_function(const Graph& g, const Perturbation& b, const PowerSeries& f);

/// Second difference quotient of the empirical spectral measure:
///   m_eps(f) = (Tr f(M + eps B) - Tr f(M)) / (sqrt(n) eps^2),
/// evaluated column by column with the difference operator propagated
/// directly so no catastrophic cancellation occurs at small eps. Requires
/// 0 < eps * c1 < 1 (so M + eps B is stochastic) and f.radius() > 1.
/// Trailing series terms are dropped once their trace tail bound is below
/// `trunc_tol`.
double m_eps(const Graph& g, const Perturbation& b, const PowerSeries& f, double eps,
             double trunc_tol = 1e-12, int threads = 0);

/// max over vertices v and 0 <= k <= kmax of |(B M^k)_{v,v}|.
double zero_entry_check(const Graph& g, const Perturbation& b, int kmax);

}  // namespace girthlab
