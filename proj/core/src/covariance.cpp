#include "girthlab/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include "girthlab/parallel.hpp"
#include "girthlab/stats.hpp"

namespace girthlab {

double alpha(const Graph& g, const EnvironmentSampler& s, int i, int j, std::int64_t origin) {
  if (i < 0 || j < 0) throw std::invalid_argument("alpha: negative degree");
  if (s.d != g.d) throw std::invalid_argument("alpha: sampler degree does not match the graph");
  if (origin < 0 || origin >= g.n) throw std::invalid_argument("alpha: origin out of range");
  if (!g.full_row(origin)) throw std::invalid_argument("alpha: origin must have full degree");
  if (i < 2 || j < 2) return 0.0;

  const int d = g.d;
  const int kmax = std::max(i, j) - 2;
  const int lanes = kmax + 1;
  const auto n = static_cast<std::size_t>(g.n);

  // Walk columns from the origin and from each of its neighbors; by symmetry
  // of M these give every entry M^k_{a,v} the double sum needs.
  const std::size_t bytes = sizeof(double) * n * static_cast<std::size_t>(lanes) * (d + 1);
  if (bytes > (1ull << 32))
    throw std::invalid_argument("alpha: walk columns would exceed the memory budget");

  std::vector<std::vector<double>> col_origin(static_cast<std::size_t>(lanes));
  std::vector<std::vector<std::vector<double>>> col_nbr(static_cast<std::size_t>(d));
  {
    std::vector<double> cur(n, 0.0), tmp(n);
    cur[static_cast<std::size_t>(origin)] = 1.0;
    for (int k = 0; k < lanes; ++k) {
      col_origin[static_cast<std::size_t>(k)] = cur;
      if (k + 1 < lanes) {
        apply_M<double>(g, cur, tmp);
        cur.swap(tmp);
      }
    }
  }
  for (int a = 0; a < d; ++a) {
    col_nbr[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(lanes));
    std::vector<double> cur(n, 0.0), tmp(n);
    cur[static_cast<std::size_t>(g.neighbor(origin, a))] = 1.0;
    for (int k = 0; k < lanes; ++k) {
      col_nbr[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = cur;
      if (k + 1 < lanes) {
        apply_M<double>(g, cur, tmp);
        cur.swap(tmp);
      }
    }
  }

  // Y_i(o,v) Y_j(o,v) vanishes once v is farther than floor(min(i,j)/2) from
  // the origin; the distance cut keeps the vertex loop proportional to the
  // relevant ball instead of the whole graph.
  const int reach = std::min(i, j) / 2;
  std::vector<std::int32_t> dist(n, -1);
  {
    std::vector<std::int64_t> queue{origin};
    dist[static_cast<std::size_t>(origin)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::int64_t u = queue[head];
      if (dist[static_cast<std::size_t>(u)] >= reach) continue;
      for (std::int32_t w : g.neighbors(u))
        if (w >= 0 && dist[w] < 0) {
          dist[w] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(w);
        }
    }
  }

  const int rows_i = i - 1;  // decompositions i1 = 0..i-2
  const int rows_j = j - 1;
  const std::int64_t chunk = 256;
  std::vector<double> partial(static_cast<std::size_t>(chunk_count(g.n, chunk)), 0.0);

  parallel_chunks(g.n, chunk, 0, [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
    std::vector<double> u(static_cast<std::size_t>(lanes) * d);   // u[k][a] = M^k_{a,v}
    std::vector<double> cu(static_cast<std::size_t>(lanes) * d);  // C * u[k]
    std::vector<double> q(static_cast<std::size_t>(lanes) * d);   // q[k][a] = M^k_{nbr_a(v), o}
    std::vector<double> cq(static_cast<std::size_t>(lanes) * d);
    std::vector<double> first(static_cast<std::size_t>(rows_i) * rows_j);
    std::vector<double> second(static_cast<std::size_t>(rows_i) * rows_j);
    double acc = 0.0;

    for (std::int64_t v = begin; v < end; ++v) {
      if (v == origin || dist[static_cast<std::size_t>(v)] < 0 || !g.full_row(v)) continue;

      for (int k = 0; k < lanes; ++k)
        for (int a = 0; a < d; ++a)
          u[static_cast<std::size_t>(k) * d + a] =
              col_nbr[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]
                     [static_cast<std::size_t>(v)];
      for (int k = 0; k < lanes; ++k)
        for (int a = 0; a < d; ++a) {
          const std::int32_t w = g.neighbor(v, a);
          q[static_cast<std::size_t>(k) * d + a] =
              col_origin[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
        }
      for (int k = 0; k < lanes; ++k)
        for (int a = 0; a < d; ++a) {
          double su = 0.0, sq = 0.0;
          for (int b = 0; b < d; ++b) {
            const double cab = s.cov(a, b);
            su += cab * u[static_cast<std::size_t>(k) * d + b];
            sq += cab * q[static_cast<std::size_t>(k) * d + b];
          }
          cu[static_cast<std::size_t>(k) * d + a] = su;
          cq[static_cast<std::size_t>(k) * d + a] = sq;
        }

      // first[k][l] = E[(B M^k)_{ov} (B M^l)_{ov}], second likewise for (vo).
      for (int k = 0; k < rows_i; ++k)
        for (int l = 0; l < rows_j; ++l) {
          double f = 0.0, sec = 0.0;
          for (int a = 0; a < d; ++a) {
            f += u[static_cast<std::size_t>(k) * d + a] * cu[static_cast<std::size_t>(l) * d + a];
            sec += q[static_cast<std::size_t>(k) * d + a] * cq[static_cast<std::size_t>(l) * d + a];
          }
          first[static_cast<std::size_t>(k) * rows_j + l] = f;
          second[static_cast<std::size_t>(k) * rows_j + l] = sec;
        }

      double contribution = 0.0;
      for (int i1 = 0; i1 < rows_i; ++i1)
        for (int j1 = 0; j1 < rows_j; ++j1)
          contribution += first[static_cast<std::size_t>(i1) * rows_j + j1] *
                          second[static_cast<std::size_t>(i - 2 - i1) * rows_j + (j - 2 - j1)];
      acc += contribution;
    }
    partial[static_cast<std::size_t>(c)] = acc;
  });

  return pairwise_sum(partial);
}

int tree_alpha_min_depth(int i, int j) { return (i + j + 1) / 2 + 1; }

double tree_alpha(int d, const EnvironmentSampler& s, int i, int j, int depth) {
  if (d < 2) throw std::invalid_argument("tree_alpha: d must be at least 2");
  if (s.d != d) throw std::invalid_argument("tree_alpha: sampler degree mismatch");
  if (i < 2 || j < 2) return 0.0;
  if (depth < tree_alpha_min_depth(i, j))
    throw std::invalid_argument("tree_alpha: depth " + std::to_string(depth) +
                                " too small for exact truncation; need at least " +
                                std::to_string(tree_alpha_min_depth(i, j)));
  const Graph tree = build_truncated_tree(d, depth);
  return alpha(tree, s, i, j, 0);
}

double AlphaTable::alpha(int i, int j) const {
  if (i < 0 || j < 0 || i > degree_cap || j > degree_cap)
    throw std::invalid_argument("AlphaTable: index out of range");
  return values[static_cast<std::size_t>(i) * (degree_cap + 1) + j];
}

bool AlphaTable::tree_exact(int i, int j) const {
  if (girth == kGirthAcyclic) return true;
  return i + j <= girth - 2;
}

namespace {

AlphaTable fill_table(const Graph& g, const EnvironmentSampler& s, int cap,
                      std::string graph_id) {
  if (cap < 0 || cap > 16) throw std::invalid_argument("alpha table: cap out of range");
  AlphaTable t;
  t.graph_id = std::move(graph_id);
  t.sampler_id = s.id;
  t.d = g.d;
  t.degree_cap = cap;
  t.girth = g.girth;
  t.values.assign(static_cast<std::size_t>(cap + 1) * (cap + 1), 0.0);
  for (int i = 2; i <= cap; ++i)
    for (int j = i; j <= cap; ++j) {
      const double a = alpha(g, s, i, j);
      t.values[static_cast<std::size_t>(i) * (cap + 1) + j] = a;
      t.values[static_cast<std::size_t>(j) * (cap + 1) + i] = a;
    }
  return t;
}

}  // namespace

AlphaTable build_alpha_table(const Graph& g, const EnvironmentSampler& s, int degree_cap) {
  return fill_table(g, s, degree_cap, g.name);
}

AlphaTable build_tree_alpha_table(int d, const EnvironmentSampler& s, int degree_cap) {
  if (d < 2) throw std::invalid_argument("tree alpha table: d must be at least 2");
  const int depth = tree_alpha_min_depth(degree_cap, degree_cap);
  const Graph tree = build_truncated_tree(d, depth);
  AlphaTable t = fill_table(tree, s, degree_cap, tree.name);
  t.girth = kGirthAcyclic;
  return t;
}

double h_form(const AlphaTable& table, const PowerSeries& f, const PowerSeries& g) {
  if (f.degree() > table.degree_cap || g.degree() > table.degree_cap)
    throw std::invalid_argument("h_form: series degree exceeds the alpha table cap");
  double acc = 0.0;
  for (int i = 2; i <= f.degree(); ++i) {
    const double fi = f.coeff(i);
    if (fi == 0.0) continue;
    for (int j = 2; j <= g.degree(); ++j) {
      const double gj = g.coeff(j);
      if (gj == 0.0) continue;
      acc += static_cast<double>(i) * j * table.alpha(i, j) * fi * gj;
    }
  }
  return 0.5 * acc;
}

}  // namespace girthlab
