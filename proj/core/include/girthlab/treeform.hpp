#pragma once

#include <complex>

#include "girthlab/power_series.hpp"

namespace girthlab {

/// Infinite d-regular tree, d real >= 2. Operations that materialize a tree
/// (elsewhere) need integer d; the closed-form kernel accepts any real d > 2,
/// which is how the d = 2.1 curve of the localization picture is drawn.
struct TreeModel {
  double d = 0.0;
  double rho = 0.0;  // 4(d-1)/d^2, squared spectral radius of the tree walk

  static TreeModel of_degree(double d);
  bool integer_degree() const;
};

/// Green's function coefficients for the tree walk: G_lambda(r) = b * a^r with
///   a = d (1 - sqrt(1 - rho lambda^2)) / (2 (d-1) lambda),  b = 1/(1 - lambda a),
/// principal square root (branch cut on the negative real axis). |lambda| < 1;
/// lambda = 0 returns (0, 1).
struct GreenCoeffs {
  std::complex<double> a;
  std::complex<double> b;
};
GreenCoeffs green_coeffs(const TreeModel& t, std::complex<double> lambda);

/// G_lambda(r) = b a^r, r >= 0.
std::complex<double> green(const TreeModel& t, std::complex<double> lambda, int r);

/// G*_lambda(r) = G(r-1) - G(r+1) = b (1 - a^2) a^(r-1), r >= 1.
std::complex<double> green_star(const TreeModel& t, std::complex<double> lambda, int r);

/// Closed form of sum_{v != o} 2 E[(B G_lambda)_{ov} (B G_mu)_{ov}]
///                            E[(B G_lambda)_{vo} (B G_mu)_{vo}]
/// on the tree. Two algebraic routes are evaluated on every call — the
/// geometric-series form in (a, b) and the rational form in
/// s = sqrt(1 - rho lambda^2), t = sqrt(1 - rho mu^2) — and must agree to
/// 1e-12; the (s, t)-form value is returned. Equals 2d at lambda = mu = 0.
std::complex<double> lhs_closed(const TreeModel& t, std::complex<double> lambda,
                                std::complex<double> mu);

/// Limiting covariance kernel on (0, rho)^2, d > 2:
///   beta_d(x,y) = (2 d^4 / pi^2) (d-2) kappa(x) kappa(y)
///                 / [16(2d-3)(x-y)^2 + (d-2)^2 A(d,x,y)],
///   kappa(x) = 2d sqrt(x (rho - x)),
///   A = rho kappa((x+y)/2)^2 + 4(d+3)(x-y)^2 + rho^2 (d-2)^2.
double kernel_beta(const TreeModel& t, double x, double y);

/// Same kernel through the boundary-value route: s on the cut becomes
/// i sqrt(rho/x - 1), the four sign terms sum to the jump of the closed form
/// across the cut, and beta = -(sign sum)/(4 pi^2 x y). Agrees with
/// kernel_beta to 1e-10; kept as an independent evaluation path.
double kernel_beta_boundary_check(const TreeModel& t, double x, double y);

/// d = 2 localized kernel density on the diagonal: (32/pi) sqrt(x (1-x)).
double kernel_beta2_diagonal(double x);

/// Limiting spectral density of the squared walk on (0, rho), normalized to
/// unit mass: (d^2 / (2 pi)) sqrt(x (rho - x)) / (1 - x). Integer d >= 2;
/// returns 0 outside the support.
double limit_density(const TreeModel& t, double x);

struct QuadResult {
  double value = 0.0;
  double achieved_tol = 0.0;  // last refinement delta
  int nodes = 0;              // per-axis Gauss nodes at the finest level
  bool converged = false;
};

/// integral of limit_density over (0, rho), by Gauss-Legendre after the
/// substitution x = rho sin^2(theta) that removes the sqrt edge factors.
QuadResult limit_density_mass(const TreeModel& t, double tol = 1e-10);

/// integral of kernel_beta2_diagonal over (0, 1); equals 4.
QuadResult kernel_beta2_diagonal_mass(double tol = 1e-12);

/// Covariance integral int int f'(x) g'(y) beta_d(x,y) dx dy for d > 2, or
/// the single localized integral (32/pi) int f' g' sqrt(x(1-x)) dx at d = 2.
/// Tensor Gauss-Legendre in the sin^2 substitution with doubling refinement;
/// a non-converged result reports the achieved error instead of failing.
QuadResult tree_covariance(const TreeModel& t, const PowerSeries& f, const PowerSeries& g,
                           double tol = 1e-8);

struct StieltjesResult {
  double residual = 0.0;
  std::complex<double> closed_form;
  std::complex<double> transform;  // u v * int int beta/((x-u)(y-v))
  bool converged = false;
};

/// Residual of the Stieltjes identity between the closed form and the kernel:
/// |lhs_closed(lambda, mu) - u v * int int beta_d(x,y)/((x-u)(y-v)) dx dy|
/// with u = lambda^-2, v = mu^-2. For |lambda| < 1 the poles stay off the
/// support cut [0, rho].
StieltjesResult stieltjes_residual(const TreeModel& t, std::complex<double> lambda,
                                   std::complex<double> mu, double tol = 1e-8);

/// beta_d(rho/2, rho/2) / beta_d(rho/4, 3 rho/4): how strongly the kernel
/// peaks on the diagonal. Grows without bound as d drops to 2.
double localization_ratio(const TreeModel& t);

}  // namespace girthlab
