#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "girthlab/environment.hpp"
#include "girthlab/graphs.hpp"
#include "girthlab/power_series.hpp"

namespace girthlab {

/// Exact covariance coefficient
///   alpha_ij = E[ sum_{v != o} Y_i(o,v) Y_j(o,v) ],
///   Y_j(v,w) = sum_{j1+j2+2=j} (B M^{j1})_{v,w} (B M^{j2})_{w,v},
/// computed deterministically from the sampler row covariance C: rows of B
/// at distinct vertices are independent, so each expectation factorizes into
/// second moments of single rows,
///   E[(B M^k)_{ov} (B M^l)_{ov}] = sum_{a,b in N(o)} C[a][b] M^k_{a,v} M^l_{b,v}.
/// Zero whenever i < 2 or j < 2. `origin` defaults to vertex 0; for the
/// vertex-transitive families the choice is immaterial.
double alpha(const Graph& g, const EnvironmentSampler& s, int i, int j,
             std::int64_t origin = 0);

/// Smallest truncation depth at which the infinite-tree alpha_ij is exact:
/// every walk involved stays strictly inside the ball.
int tree_alpha_min_depth(int i, int j);

/// alpha_ij of the infinite d-regular tree, from a depth-truncated tree.
/// Throws if the depth is too small for exactness; never approximates.
double tree_alpha(int d, const EnvironmentSampler& s, int i, int j, int depth);

/// Table of alpha_ij for 0 <= i, j <= degree_cap, with per-entry flags for
/// whether the graph's girth makes the value tree-exact (i + j <= girth - 2).
struct AlphaTable {
  std::string graph_id;
  std::string sampler_id;
  int d = 0;
  int degree_cap = 0;
  int girth = 0;  // kGirthAcyclic for tree tables
  std::vector<double> values;  // (cap+1)^2 row-major

  double alpha(int i, int j) const;
  bool tree_exact(int i, int j) const;
};

/// Cost grows like d^(i+j); the default cap of 12 covers every shipped check.
inline constexpr int kDefaultDegreeCap = 12;

AlphaTable build_alpha_table(const Graph& g, const EnvironmentSampler& s,
                             int degree_cap = kDefaultDegreeCap);
AlphaTable build_tree_alpha_table(int d, const EnvironmentSampler& s,
                                  int degree_cap = kDefaultDegreeCap);

/// Bilinear covariance form
///   H(f, g) = (1/2) sum_{ij} i j alpha_ij [x^i]f [x^j]g.
/// Throws if either degree exceeds the table cap.
double h_form(const AlphaTable& table, const PowerSeries& f, const PowerSeries& g);

}  // namespace girthlab
