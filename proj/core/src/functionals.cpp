#include "girthlab/functionals.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "girthlab/parallel.hpp"
#include "girthlab/stats.hpp"

namespace girthlab {

WalkTraceEngine::WalkTraceEngine(const Graph& g, int max_degree) : g_(&g), jmax_(max_degree) {
  if (max_degree < 0) throw std::invalid_argument("WalkTraceEngine: negative degree");
  kmax_ = std::max(jmax_ - 2, 0);
  radius_ = kmax_ + 1;

  const std::int64_t n = g.n;
  ball_offset_.assign(static_cast<std::size_t>(n) + 1, 0);

  // Two passes: sizes first, then vertices and local adjacency.
  std::vector<std::int32_t> local(static_cast<std::size_t>(n), -1);
  std::vector<std::int32_t> verts;
  std::vector<std::int32_t> dist;
  for (std::int64_t v = 0; v < n; ++v) {
    verts.clear();
    dist.clear();
    verts.push_back(static_cast<std::int32_t>(v));
    dist.push_back(0);
    local[static_cast<std::size_t>(v)] = 0;
    for (std::size_t head = 0; head < verts.size(); ++head) {
      if (dist[head] == radius_) continue;
      for (std::int32_t w : g.neighbors(verts[head])) {
        if (w < 0 || local[w] >= 0) continue;
        local[w] = static_cast<std::int32_t>(verts.size());
        verts.push_back(w);
        dist.push_back(dist[head] + 1);
      }
    }
    ball_offset_[static_cast<std::size_t>(v) + 1] =
        ball_offset_[static_cast<std::size_t>(v)] + static_cast<std::int64_t>(verts.size());
    max_ball_ = std::max(max_ball_, verts.size());
    for (std::int32_t u : verts) {
      ball_verts_.push_back(u);
      for (std::int32_t w : g_->neighbors(u)) ball_adj_.push_back(w < 0 ? -1 : local[w]);
    }
    for (std::int32_t u : verts) local[u] = -1;
  }
}

WalkTraceEngine::Scratch WalkTraceEngine::make_scratch() const {
  Scratch s;
  const std::size_t lanes = static_cast<std::size_t>(kmax_) + 1;
  s.powers.resize(lanes * max_ball_);
  s.weights.resize(lanes * max_ball_);
  s.biased.resize(lanes * max_ball_);
  return s;
}

void WalkTraceEngine::monomials(const Perturbation& b, std::span<double> out,
                                Scratch& scratch) const {
  const Graph& g = *g_;
  if (b.graph != g_) throw std::invalid_argument("monomials: perturbation built on another graph");
  if (static_cast<int>(out.size()) != jmax_ + 1)
    throw std::invalid_argument("monomials: output span must hold degrees 0..max_degree");

  const int d = g.d;
  const int lanes = kmax_ + 1;
  const double inv_d = 1.0 / d;

  // S[k1][k2] accumulates Tr(B M^{k1} B M^{k2}) over the vertex loop.
  std::vector<double> trace(static_cast<std::size_t>(lanes) * lanes, 0.0);

  for (std::int64_t v = 0; v < g.n; ++v) {
    const std::int64_t off = ball_offset_[static_cast<std::size_t>(v)];
    const auto sz = static_cast<std::size_t>(ball_offset_[static_cast<std::size_t>(v) + 1] - off);
    const std::int32_t* verts = ball_verts_.data() + off;
    const std::int32_t* ladj = ball_adj_.data() + off * d;

    double* m = scratch.powers.data();   // m + k*sz = local column M^k e_v
    double* y = scratch.weights.data();  // y + k*sz = local vector M^k b_v
    double* w = scratch.biased.data();   // w + k*sz = local vector B M^k e_v

    std::fill(m, m + sz, 0.0);
    m[0] = 1.0;
    std::fill(y, y + sz, 0.0);
    for (int s = 0; s < d; ++s) {
      const std::int32_t loc = ladj[s];  // local id of neighbor slot s of v
      y[loc] = b.entries[v * d + s];
    }
    for (int k = 1; k < lanes; ++k) {
      const double* mp = m + (k - 1) * sz;
      const double* yp = y + (k - 1) * sz;
      double* mc = m + k * sz;
      double* yc = y + k * sz;
      for (std::size_t i = 0; i < sz; ++i) {
        double am = 0.0, ay = 0.0;
        const std::int32_t* row = ladj + i * static_cast<std::size_t>(d);
        for (int s = 0; s < d; ++s) {
          const std::int32_t j = row[s];
          if (j >= 0) {
            am += mp[j];
            ay += yp[j];
          }
        }
        mc[i] = am * inv_d;
        yc[i] = ay * inv_d;
      }
    }
    for (int k = 0; k < lanes; ++k) {
      const double* mk = m + k * sz;
      double* wk = w + k * sz;
      for (std::size_t i = 0; i < sz; ++i) {
        const std::int64_t u = verts[i];
        const std::int32_t* row = ladj + i * static_cast<std::size_t>(d);
        double acc = 0.0;
        for (int s = 0; s < d; ++s) {
          const std::int32_t j = row[s];
          if (j >= 0) acc += b.entries[u * d + s] * mk[j];
        }
        wk[i] = acc;
      }
    }
    for (int k1 = 0; k1 < lanes; ++k1) {
      const double* yk = y + k1 * sz;
      for (int k2 = 0; k1 + k2 <= kmax_; ++k2) {
        const double* wk = w + k2 * sz;
        double acc = 0.0;
        for (std::size_t i = 0; i < sz; ++i) acc += yk[i] * wk[i];
        trace[static_cast<std::size_t>(k1) * lanes + k2] += acc;
      }
    }
  }

  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(g.n));
  out[0] = 0.0;
  if (jmax_ >= 1) out[1] = 0.0;
  for (int j = 2; j <= jmax_; ++j) {
    double sum = 0.0;
    for (int k1 = 0; k1 <= j - 2; ++k1) sum += trace[static_cast<std::size_t>(k1) * lanes + (j - 2 - k1)];
    out[j] = 0.5 * j * sum * inv_sqrt_n;
  }
}

double t_monomial(const Graph& g, const Perturbation& b, int j) {
  if (j < 0) throw std::invalid_argument("t_monomial: negative degree");
  if (j < 2) return 0.0;
  WalkTraceEngine engine(g, j);
  auto scratch = engine.make_scratch();
  std::vector<double> out(static_cast<std::size_t>(j) + 1);
  engine.monomials(b, out, scratch);
  return out[static_cast<std::size_t>(j)];
}

TFunctionResult t_function(const Graph& g, const Perturbation& b, const PowerSeries& f) {
  TFunctionResult r;
  r.tail_bound = b.c1 * b.c1 * std::sqrt(static_cast<double>(g.n)) * f.tail_star_norm();
  if (f.degree() < 2) return r;
  WalkTraceEngine engine(g, f.degree());
  auto scratch = engine.make_scratch();
  std::vector<double> mono(static_cast<std::size_t>(f.degree()) + 1);
  engine.monomials(b, mono, scratch);
  double acc = 0.0;
  for (int j = 2; j <= f.degree(); ++j) acc += f.coeff(j) * mono[static_cast<std::size_t>(j)];
  r.value = acc;
  return r;
}

double m_eps(const Graph& g, const Perturbation& b, const PowerSeries& f, double eps,
             double trunc_tol, int threads) {
  if (!(eps > 0.0) || !(eps * b.c1 < 1.0))
    throw std::invalid_argument("m_eps: need 0 < eps < 1/c1 so that M + eps B is stochastic");
  if (!(f.radius() > 1.0)) throw std::invalid_argument("m_eps: series radius must exceed 1");
  if (b.graph != &g) throw std::invalid_argument("m_eps: perturbation built on another graph");

  const int degree = f.degree();
  if (degree < 1) return 0.0;

  // Drop trailing terms whose total trace contribution is provably below
  // trunc_tol: |Tr A^k - Tr M^k| <= 2n since both spectra sit in the unit disk.
  int last = degree;
  {
    double tail = 0.0;
    while (last >= 1) {
      tail += std::abs(f.coeff(last)) * 2.0 * static_cast<double>(g.n);
      if (tail > trunc_tol) break;
      --last;
    }
  }
  if (last < 1) return 0.0;

  const int d = g.d;
  const std::int64_t n = g.n;
  const double inv_d = 1.0 / d;

  // Per-column difference propagation: with A = M + eps B,
  //   D_k e_u = M D_{k-1} e_u + eps B (M^{k-1} + D_{k-1}) e_u,
  // so every entry of D_k is O(eps) and the trace difference is formed from
  // same-scale terms only.
  const std::int64_t cols_per_chunk = 16;
  std::vector<double> partial(static_cast<std::size_t>(chunk_count(n, cols_per_chunk)), 0.0);
  parallel_chunks(n, cols_per_chunk, threads, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    std::vector<double> mcur(static_cast<std::size_t>(n)), mnext(static_cast<std::size_t>(n));
    std::vector<double> dcur(static_cast<std::size_t>(n)), dnext(static_cast<std::size_t>(n));
    std::vector<double> column_terms;
    double chunk_acc = 0.0;
    for (std::int64_t u = begin; u < end; ++u) {
      std::fill(mcur.begin(), mcur.end(), 0.0);
      std::fill(dcur.begin(), dcur.end(), 0.0);
      mcur[static_cast<std::size_t>(u)] = 1.0;
      column_terms.clear();
      for (int k = 1; k <= last; ++k) {
        for (std::int64_t v = 0; v < n; ++v) {
          double am = 0.0, ad = 0.0, bd = 0.0;
          const std::int32_t* row = g.adj.data() + v * d;
          const double* brow = b.entries.data() + v * d;
          for (int s = 0; s < d; ++s) {
            const std::int32_t w = row[s];
            am += mcur[w];
            ad += dcur[w];
            bd += brow[s] * (mcur[w] + dcur[w]);
          }
          mnext[v] = am * inv_d;
          dnext[v] = ad * inv_d + eps * bd;
        }
        mcur.swap(mnext);
        dcur.swap(dnext);
        const double a_k = f.coeff(k);
        if (a_k != 0.0) column_terms.push_back(a_k * dcur[static_cast<std::size_t>(u)]);
      }
      chunk_acc += pairwise_sum(column_terms);
    }
    partial[static_cast<std::size_t>(chunk)] = chunk_acc;
  });

  const double trace_delta = pairwise_sum(partial);
  return trace_delta / (std::sqrt(static_cast<double>(n)) * eps * eps);
}

double zero_entry_check(const Graph& g, const Perturbation& b, int kmax) {
  if (kmax < 0) throw std::invalid_argument("zero_entry_check: negative power");
  if (b.graph != &g) throw std::invalid_argument("zero_entry_check: perturbation built on another graph");
  const int d = g.d;
  double worst = 0.0;
  std::vector<double> col(static_cast<std::size_t>(g.n));
  std::vector<double> tmp(col.size());
  for (std::int64_t v = 0; v < g.n; ++v) {
    std::fill(col.begin(), col.end(), 0.0);
    col[static_cast<std::size_t>(v)] = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      double diag = 0.0;
      for (int s = 0; s < d; ++s) {
        const std::int32_t w = g.neighbor(v, s);
        if (w >= 0) diag += b.entries[v * d + s] * col[w];
      }
      worst = std::max(worst, std::abs(diag));
      if (k < kmax) {
        apply_M<double>(g, col, tmp);
        col.swap(tmp);
      }
    }
  }
  return worst;
}

}  // namespace girthlab
