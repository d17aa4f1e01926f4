#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "girthlab/environment.hpp"
#include "girthlab/graphs.hpp"
#include "girthlab/power_series.hpp"

// Independent reference implementations used only to check the library.
// Everything here is deliberately naive: dense matrices, brute-force loops,
// textbook algorithms structured differently from the code under test.
namespace oracles {

Eigen::MatrixXd dense_M(const girthlab::Graph& g);
Eigen::MatrixXd dense_B(const girthlab::Perturbation& b);

/// T_G(z^j) = n^{-1/2} (j/2) sum_{k1+k2+2=j} Tr(B M^k1 B M^k2), dense products.
double dense_t_monomial(const girthlab::Graph& g, const girthlab::Perturbation& b, int j);

/// max over v, k <= kmax of |(B M^k)_{v,v}| from dense powers.
double dense_zero_entry(const girthlab::Graph& g, const girthlab::Perturbation& b, int kmax);

/// m_eps from a dense eigensolver: sum of f over the eigenvalues of
/// M + eps B minus the same for M, scaled by 1/(sqrt(n) eps^2).
double eig_m_eps(const girthlab::Graph& g, const girthlab::Perturbation& b,
                 const girthlab::PowerSeries& f, double eps);

/// Exact girth by the delete-an-edge-and-find-a-path method.
int girth_by_edge_deletion(const girthlab::Graph& g);

/// Values g_r of (I - lambda M)^{-1} e_root on the depth-truncated d-regular
/// tree, M being the infinite-tree operator restricted to the ball. The
/// spherical symmetry around the root collapses the solve to a tridiagonal
/// system in the distance coordinate, so depth 30 costs nothing even where
/// the explicit ball would have billions of vertices.
std::vector<std::complex<double>> radial_tree_green(int d, std::complex<double> lambda,
                                                    int depth);

/// Same resolvent column from an explicit dense solve on a materialized
/// truncated tree; cross-validates the radial reduction at small depth.
std::vector<std::complex<double>> dense_tree_green_column(const girthlab::Graph& tree,
                                                          std::complex<double> lambda);

}  // namespace oracles
