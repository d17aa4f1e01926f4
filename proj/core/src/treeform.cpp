#include "girthlab/treeform.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace girthlab {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_unit_disk(Complex lambda, const char* where) {
  if (!(std::abs(lambda) < 1.0))
    throw std::domain_error(std::string(where) + ": |lambda| must be below 1");
}

// Rational (s, t)-form of the closed tree sum; shared by lhs_closed and the
// boundary route of the kernel.
Complex st_expression(double d, Complex s, Complex t) {
  const Complex one = 1.0;
  return 32.0 * (d - 1.0) * d /
         ((one + s) * (one + t) * ((d - 2.0) * (one + s) * (one + t) + 2.0 * (s + t)));
}

}  // namespace

TreeModel TreeModel::of_degree(double d) {
  if (!(d >= 2.0)) throw std::invalid_argument("TreeModel: d must be at least 2");
  TreeModel t;
  t.d = d;
  t.rho = 4.0 * (d - 1.0) / (d * d);
  return t;
}

bool TreeModel::integer_degree() const { return d == std::floor(d); }

GreenCoeffs green_coeffs(const TreeModel& t, Complex lambda) {
  require_unit_disk(lambda, "green_coeffs");
  if (lambda == 0.0) return {0.0, 1.0};
  const Complex s = std::sqrt(1.0 - t.rho * lambda * lambda);
  const Complex a = t.d * (1.0 - s) / (2.0 * (t.d - 1.0) * lambda);
  const Complex b = 1.0 / (1.0 - lambda * a);
  return {a, b};
}

Complex green(const TreeModel& t, Complex lambda, int r) {
  if (r < 0) throw std::invalid_argument("green: distance must be nonnegative");
  const auto [a, b] = green_coeffs(t, lambda);
  return b * std::pow(a, r);
}

Complex green_star(const TreeModel& t, Complex lambda, int r) {
  if (r < 1) throw std::invalid_argument("green_star: distance must be at least 1");
  const auto [a, b] = green_coeffs(t, lambda);
  return b * (1.0 - a * a) * std::pow(a, r - 1);
}

Complex lhs_closed(const TreeModel& t, Complex lambda, Complex mu) {
  require_unit_disk(lambda, "lhs_closed");
  require_unit_disk(mu, "lhs_closed");
  const double d = t.d;

  const auto [al, bl] = green_coeffs(t, lambda);
  const auto [am, bm] = green_coeffs(t, mu);
  const Complex gl = bl * (1.0 - al * al);
  const Complex gm = bm * (1.0 - am * am);
  const Complex geometric =
      2.0 * gl * gl * gm * gm * d / (1.0 - (d - 1.0) * (al * am) * (al * am));

  const Complex s = std::sqrt(1.0 - t.rho * lambda * lambda);
  const Complex u = std::sqrt(1.0 - t.rho * mu * mu);
  const Complex rational = st_expression(d, s, u);

  if (std::abs(geometric - rational) > 1e-12 * std::max(1.0, std::abs(rational)))
    throw std::logic_error("lhs_closed: the two algebraic routes disagree");
  return rational;
}

namespace {

double kappa_sq(const TreeModel& t, double x) { return 4.0 * t.d * t.d * x * (t.rho - x); }

void require_kernel_domain(const TreeModel& t, double x, double y, const char* where) {
  if (!(t.d > 2.0))
    throw std::invalid_argument(std::string(where) +
                                ": needs d > 2; use kernel_beta2_diagonal for d = 2");
  if (!(x > 0.0) || !(x < t.rho) || !(y > 0.0) || !(y < t.rho))
    throw std::domain_error(std::string(where) + ": (x, y) must lie inside (0, rho)^2");
}

// Kernel with the cross terms supplied by the caller, so grid evaluators can
// pass exactly factored kappa^2 values and differences.
double kernel_core(const TreeModel& t, double kap2x, double kap2y, double diff,
                   double kap2mid) {
  const double d = t.d;
  const double diff2 = diff * diff;
  const double a = t.rho * kap2mid + 4.0 * (d + 3.0) * diff2 + t.rho * t.rho * (d - 2.0) * (d - 2.0);
  const double den = 16.0 * (2.0 * d - 3.0) * diff2 + (d - 2.0) * (d - 2.0) * a;
  return 2.0 * d * d * d * d * (d - 2.0) * std::sqrt(kap2x * kap2y) / (kPi * kPi * den);
}

}  // namespace

double kernel_beta(const TreeModel& t, double x, double y) {
  require_kernel_domain(t, x, y, "kernel_beta");
  return kernel_core(t, kappa_sq(t, x), kappa_sq(t, y), x - y, kappa_sq(t, 0.5 * (x + y)));
}

double kernel_beta_boundary_check(const TreeModel& t, double x, double y) {
  require_kernel_domain(t, x, y, "kernel_beta_boundary_check");
  const Complex s{0.0, std::sqrt(t.rho / x - 1.0)};
  const Complex u{0.0, std::sqrt(t.rho / y - 1.0)};
  Complex jump = 0.0;
  for (const double sig : {1.0, -1.0})
    for (const double tau : {1.0, -1.0})
      jump += sig * tau * st_expression(t.d, sig * s, tau * u);
  return -jump.real() / (4.0 * kPi * kPi * x * y);
}

double kernel_beta2_diagonal(double x) {
  if (!(x > 0.0) || !(x < 1.0))
    throw std::domain_error("kernel_beta2_diagonal: x must lie inside (0, 1)");
  return 32.0 / kPi * std::sqrt(x * (1.0 - x));
}

double limit_density(const TreeModel& t, double x) {
  if (!t.integer_degree())
    throw std::invalid_argument("limit_density: integer degree required");
  if (x <= 0.0 || x >= t.rho) return 0.0;
  return t.d * t.d / (2.0 * kPi) * std::sqrt(x * (t.rho - x)) / (1.0 - x);
}

namespace {

struct GaussTable {
  std::vector<double> nodes;    // on (0, pi/2)
  std::vector<double> weights;
};

GaussTable gauss_half_pi(int m) {
  using TablePtr =
      std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>;
  const TablePtr table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(m)),
                       &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_half_pi: node table allocation failed");
  GaussTable out;
  out.nodes.resize(static_cast<std::size_t>(m));
  out.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(0.0, 0.5 * kPi, static_cast<std::size_t>(i), &x, &w,
                                  table.get());
    out.nodes[static_cast<std::size_t>(i)] = x;
    out.weights[static_cast<std::size_t>(i)] = w;
  }
  return out;
}

QuadResult refine_1d(const std::function<double(const GaussTable&)>& evaluate, double tol,
                     int m_start, int m_max) {
  QuadResult r;
  double prev = 0.0;
  bool have_prev = false;
  for (int m = m_start; m <= m_max; m *= 2) {
    const GaussTable table = gauss_half_pi(m);
    const double value = evaluate(table);
    r.value = value;
    r.nodes = m;
    if (have_prev) {
      r.achieved_tol = std::abs(value - prev);
      if (r.achieved_tol <= tol) {
        r.converged = true;
        return r;
      }
    }
    prev = value;
    have_prev = true;
  }
  return r;
}

template <typename T>
struct TensorOutcome {
  T value{};
  double delta = 0.0;
  bool converged = false;
  int nodes = 0;
};

// Tensor product rule with doubling refinement; `term(i, j, table)` must
// return the full integrand including both jacobians.
template <typename T>
TensorOutcome<T> refine_2d(const std::function<T(int, int, const GaussTable&)>& term, double tol,
                           int m_start, int m_max) {
  TensorOutcome<T> r;
  T prev{};
  bool have_prev = false;
  for (int m = m_start; m <= m_max; m *= 2) {
    const GaussTable table = gauss_half_pi(m);
    std::vector<T> rows(static_cast<std::size_t>(m), T{});
    for (int i = 0; i < m; ++i) {
      T acc{};
      for (int j = 0; j < m; ++j) acc += term(i, j, table);
      rows[static_cast<std::size_t>(i)] = acc;
    }
    T value{};
    for (const T& row : rows) value += row;
    r.value = value;
    r.nodes = m;
    if (have_prev) {
      r.delta = std::abs(value - prev);
      if (r.delta <= tol) {
        r.converged = true;
        return r;
      }
    }
    prev = value;
    have_prev = true;
  }
  return r;
}

}  // namespace

QuadResult limit_density_mass(const TreeModel& t, double tol) {
  if (!t.integer_degree())
    throw std::invalid_argument("limit_density_mass: integer degree required");
  const double rho = t.rho;
  const double d = t.d;
  return refine_1d(
      [&](const GaussTable& g) {
        double acc = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
          const double sn = std::sin(g.nodes[i]);
          const double cs = std::cos(g.nodes[i]);
          // 1 - rho sin^2 = (1 - rho) + rho cos^2: no cancellation at the
          // d = 2 endpoint where rho = 1.
          const double denom = (1.0 - rho) + rho * cs * cs;
          const double integrand =
              d * d / (2.0 * kPi) * 2.0 * rho * rho * sn * sn * cs * cs / denom;
          acc += g.weights[i] * integrand;
        }
        return acc;
      },
      tol, 16, 1 << 14);
}

QuadResult kernel_beta2_diagonal_mass(double tol) {
  return refine_1d(
      [&](const GaussTable& g) {
        double acc = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
          const double sc = std::sin(g.nodes[i]) * std::cos(g.nodes[i]);
          acc += g.weights[i] * (32.0 / kPi) * sc * 2.0 * sc;
        }
        return acc;
      },
      tol, 16, 1 << 14);
}

namespace {

QuadResult localized_covariance(const PowerSeries& fd, const PowerSeries& gd, double tol) {
  // d = 2: (32/pi) int_0^1 f'(x) g'(x) sqrt(x(1-x)) dx, x = sin^2 theta.
  return refine_1d(
      [&](const GaussTable& g) {
        double acc = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
          const double sn = std::sin(g.nodes[i]);
          const double cs = std::cos(g.nodes[i]);
          const double x = sn * sn;
          const double jacobian_and_weight = 2.0 * sn * cs * sn * cs;  // sqrt * dx
          acc += g.weights[i] * (32.0 / kPi) * fd.eval(x) * gd.eval(x) * jacobian_and_weight;
        }
        return acc;
      },
      tol, 32, 1 << 14);
}

}  // namespace

QuadResult tree_covariance(const TreeModel& t, const PowerSeries& f, const PowerSeries& g,
                           double tol) {
  const PowerSeries fd = f.derivative();
  const PowerSeries gd = g.derivative();
  if (t.d == 2.0) return localized_covariance(fd, gd, tol);
  if (!(t.d > 2.0)) throw std::invalid_argument("tree_covariance: d must be at least 2");

  const double rho = t.rho;
  auto term = [&](int i, int j, const GaussTable& tab) {
    const double sni = std::sin(tab.nodes[static_cast<std::size_t>(i)]);
    const double csi = std::cos(tab.nodes[static_cast<std::size_t>(i)]);
    const double snj = std::sin(tab.nodes[static_cast<std::size_t>(j)]);
    const double csj = std::cos(tab.nodes[static_cast<std::size_t>(j)]);
    const double x = rho * sni * sni;
    const double y = rho * snj * snj;
    // Exact trig factorizations keep the near-diagonal denominator accurate
    // for d close to 2: x - y = rho sin(ti+tj) sin(ti-tj) and
    // rho - (x+y)/2 = rho (cos^2 ti + cos^2 tj)/2.
    const double ti = tab.nodes[static_cast<std::size_t>(i)];
    const double tj = tab.nodes[static_cast<std::size_t>(j)];
    const double diff = rho * std::sin(ti + tj) * std::sin(ti - tj);
    const double mid = 0.5 * (x + y);
    const double mid_comp = 0.5 * rho * (csi * csi + csj * csj);
    const double kap2x = 4.0 * t.d * t.d * x * (rho * csi * csi);
    const double kap2y = 4.0 * t.d * t.d * y * (rho * csj * csj);
    const double kap2mid = 4.0 * t.d * t.d * mid * mid_comp;
    const double beta = kernel_core(t, kap2x, kap2y, diff, kap2mid);
    const double jac = (2.0 * rho * sni * csi) * (2.0 * rho * snj * csj);
    return tab.weights[static_cast<std::size_t>(i)] * tab.weights[static_cast<std::size_t>(j)] *
           fd.eval(x) * gd.eval(y) * beta * jac;
  };
  const TensorOutcome<double> out = refine_2d<double>(term, tol, 32, 2048);
  return {out.value, out.delta, out.nodes, out.converged};
}

StieltjesResult stieltjes_residual(const TreeModel& t, Complex lambda, Complex mu, double tol) {
  if (!(t.d > 2.0)) throw std::invalid_argument("stieltjes_residual: needs d > 2");
  require_unit_disk(lambda, "stieltjes_residual");
  require_unit_disk(mu, "stieltjes_residual");
  if (lambda == 0.0 || mu == 0.0)
    throw std::domain_error("stieltjes_residual: lambda and mu must be nonzero");

  const Complex u = 1.0 / (lambda * lambda);
  const Complex v = 1.0 / (mu * mu);
  // Distance from the poles to the support cut [0, rho]; |lambda| < 1 keeps
  // them safely away, this guards against near-cut evaluations anyway.
  auto cut_distance = [&](Complex z) {
    const double re = std::clamp(z.real(), 0.0, t.rho);
    return std::abs(z - Complex{re, 0.0});
  };
  if (cut_distance(u) < 10.0 * tol || cut_distance(v) < 10.0 * tol)
    throw std::domain_error("stieltjes_residual: pole too close to the support cut");

  const Complex closed = lhs_closed(t, lambda, mu);
  const double rho = t.rho;
  auto term = [&](int i, int j, const GaussTable& tab) -> Complex {
    const double sni = std::sin(tab.nodes[static_cast<std::size_t>(i)]);
    const double csi = std::cos(tab.nodes[static_cast<std::size_t>(i)]);
    const double snj = std::sin(tab.nodes[static_cast<std::size_t>(j)]);
    const double csj = std::cos(tab.nodes[static_cast<std::size_t>(j)]);
    const double x = rho * sni * sni;
    const double y = rho * snj * snj;
    const double ti = tab.nodes[static_cast<std::size_t>(i)];
    const double tj = tab.nodes[static_cast<std::size_t>(j)];
    const double diff = rho * std::sin(ti + tj) * std::sin(ti - tj);
    const double kap2x = 4.0 * t.d * t.d * x * (rho * csi * csi);
    const double kap2y = 4.0 * t.d * t.d * y * (rho * csj * csj);
    const double kap2mid = 4.0 * t.d * t.d * 0.5 * (x + y) * 0.5 * rho * (csi * csi + csj * csj);
    const double beta = kernel_core(t, kap2x, kap2y, diff, kap2mid);
    const double jac = (2.0 * rho * sni * csi) * (2.0 * rho * snj * csj);
    const Complex denom = (Complex(x, 0.0) - u) * (Complex(y, 0.0) - v);
    return tab.weights[static_cast<std::size_t>(i)] * tab.weights[static_cast<std::size_t>(j)] *
           beta * jac / denom;
  };
  const TensorOutcome<Complex> out = refine_2d<Complex>(term, tol, 32, 2048);

  StieltjesResult r;
  r.closed_form = closed;
  r.transform = u * v * out.value;
  r.residual = std::abs(closed - r.transform);
  r.converged = out.converged;
  return r;
}

double localization_ratio(const TreeModel& t) {
  if (!(t.d > 2.0)) throw std::invalid_argument("localization_ratio: needs d > 2");
  const double rho = t.rho;
  return kernel_beta(t, 0.5 * rho, 0.5 * rho) / kernel_beta(t, 0.25 * rho, 0.75 * rho);
}

}  // namespace girthlab
