#include "oracles.hpp"

#include <deque>
#include <stdexcept>

namespace oracles {

using girthlab::Graph;
using girthlab::Perturbation;
using girthlab::PowerSeries;

Eigen::MatrixXd dense_M(const Graph& g) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.n, g.n);
  for (std::int64_t v = 0; v < g.n; ++v)
    for (std::int32_t w : g.neighbors(v))
      if (w >= 0) m(v, w) = 1.0 / g.d;
  return m;
}

Eigen::MatrixXd dense_B(const Perturbation& b) {
  const Graph& g = *b.graph;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.n, g.n);
  for (std::int64_t v = 0; v < g.n; ++v)
    for (int s = 0; s < g.d; ++s) {
      const std::int32_t w = g.neighbor(v, s);
      if (w >= 0) m(v, w) = b.entry(v, s);
    }
  return m;
}

double dense_t_monomial(const Graph& g, const Perturbation& b, int j) {
  if (j < 2) return 0.0;
  const Eigen::MatrixXd M = dense_M(g);
  const Eigen::MatrixXd B = dense_B(b);
  std::vector<Eigen::MatrixXd> powers{Eigen::MatrixXd::Identity(g.n, g.n)};
  for (int k = 1; k <= j - 2; ++k) powers.push_back(powers.back() * M);
  double sum = 0.0;
  for (int k1 = 0; k1 <= j - 2; ++k1)
    sum += (B * powers[static_cast<std::size_t>(k1)] * B *
            powers[static_cast<std::size_t>(j - 2 - k1)])
               .trace();
  return 0.5 * j * sum / std::sqrt(static_cast<double>(g.n));
}

double dense_zero_entry(const Graph& g, const Perturbation& b, int kmax) {
  const Eigen::MatrixXd M = dense_M(g);
  const Eigen::MatrixXd B = dense_B(b);
  Eigen::MatrixXd bmk = B;
  double worst = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    worst = std::max(worst, bmk.diagonal().cwiseAbs().maxCoeff());
    bmk = bmk * M;
  }
  return worst;
}

double eig_m_eps(const Graph& g, const Perturbation& b, const PowerSeries& f, double eps) {
  const Eigen::MatrixXd M = dense_M(g);
  const Eigen::MatrixXd A = M + eps * dense_B(b);
  const Eigen::EigenSolver<Eigen::MatrixXd> es_a(A, /*computeEigenvectors=*/false);
  const Eigen::EigenSolver<Eigen::MatrixXd> es_m(M, /*computeEigenvectors=*/false);
  std::complex<double> trace_a = 0.0, trace_m = 0.0;
  for (std::int64_t i = 0; i < g.n; ++i) {
    trace_a += f.eval(es_a.eigenvalues()[i]);
    trace_m += f.eval(es_m.eigenvalues()[i]);
  }
  return (trace_a - trace_m).real() / (std::sqrt(static_cast<double>(g.n)) * eps * eps);
}

namespace {

int bfs_distance_avoiding(const Graph& g, std::int64_t from, std::int64_t to,
                          std::int64_t skip_u, std::int64_t skip_v) {
  std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
  std::deque<std::int64_t> queue{from};
  dist[static_cast<std::size_t>(from)] = 0;
  while (!queue.empty()) {
    const std::int64_t u = queue.front();
    queue.pop_front();
    if (u == to) return dist[static_cast<std::size_t>(u)];
    for (std::int32_t w : g.neighbors(u)) {
      if (w < 0 || dist[w] >= 0) continue;
      if ((u == skip_u && w == skip_v) || (u == skip_v && w == skip_u)) continue;
      dist[w] = dist[static_cast<std::size_t>(u)] + 1;
      queue.push_back(w);
    }
  }
  return -1;
}

}  // namespace

int girth_by_edge_deletion(const Graph& g) {
  int best = -1;
  for (std::int64_t u = 0; u < g.n; ++u)
    for (std::int32_t w : g.neighbors(u)) {
      if (w < 0 || w < u) continue;  // each undirected edge once
      const int dist = bfs_distance_avoiding(g, u, w, u, w);
      if (dist >= 0 && (best < 0 || dist + 1 < best)) best = dist + 1;
    }
  return best < 0 ? girthlab::kGirthAcyclic : best;
}

std::vector<std::complex<double>> radial_tree_green(int d, std::complex<double> lambda,
                                                    int depth) {
  if (d < 2 || depth < 1) throw std::invalid_argument("radial_tree_green: bad parameters");
  using C = std::complex<double>;
  const int n = depth + 1;
  // Rows of (I - lambda M) in the distance coordinate:
  //   r = 0:          g0 - lambda g1                      = 1
  //   0 < r < depth:  g_r - (lambda/d)(g_{r-1} + (d-1) g_{r+1}) = 0
  //   r = depth:      g_r - (lambda/d) g_{r-1}            = 0
  std::vector<C> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  rhs[0] = 1.0;
  upper[0] = -lambda;
  for (int r = 1; r < depth; ++r) {
    lower[r] = -lambda / static_cast<double>(d);
    upper[r] = -lambda * static_cast<double>(d - 1) / static_cast<double>(d);
  }
  lower[depth] = -lambda / static_cast<double>(d);

  // Thomas elimination.
  for (int r = 1; r < n; ++r) {
    const C w = lower[r] / diag[r - 1];
    diag[r] -= w * upper[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  std::vector<C> g(n);
  g[n - 1] = rhs[n - 1] / diag[n - 1];
  for (int r = n - 2; r >= 0; --r) g[r] = (rhs[r] - upper[r] * g[r + 1]) / diag[r];
  return g;
}

std::vector<std::complex<double>> dense_tree_green_column(const Graph& tree,
                                                          std::complex<double> lambda) {
  using C = std::complex<double>;
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Identity(tree.n, tree.n);
  for (std::int64_t v = 0; v < tree.n; ++v)
    for (std::int32_t w : tree.neighbors(v))
      if (w >= 0) system(v, w) -= lambda / static_cast<double>(tree.d);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(tree.n);
  rhs[0] = 1.0;
  const Eigen::VectorXcd sol = system.partialPivLu().solve(rhs);
  std::vector<C> out(static_cast<std::size_t>(tree.n));
  for (std::int64_t i = 0; i < tree.n; ++i) out[static_cast<std::size_t>(i)] = sol[i];
  return out;
}

}  // namespace oracles
