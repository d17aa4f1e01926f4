#include "girthlab/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "girthlab/rng.hpp"

namespace girthlab {

std::string_view sampler_kind_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::AntisymmetricPair: return "antisym";
    case SamplerKind::BalancedSigns: return "balanced";
    case SamplerKind::PermutedVector: return "permvec";
  }
  return "?";
}

namespace {

std::vector<double> exchangeable_row_cov(int d) {
  // Zero row sum plus unit variance plus slot exchangeability pin the whole
  // matrix: C[a][a] = 1, C[a][b] = -1/(d-1).
  std::vector<double> cov(static_cast<std::size_t>(d) * d, -1.0 / (d - 1));
  for (int a = 0; a < d; ++a) cov[static_cast<std::size_t>(a) * d + a] = 1.0;
  return cov;
}

std::vector<double> default_ramp_base(int d) {
  // Centered arithmetic ramp; for d = 3 this is (-sqrt(1.5), 0, sqrt(1.5)).
  std::vector<double> base(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) base[i] = i - 0.5 * (d - 1);
  return base;
}

}  // namespace

EnvironmentSampler make_sampler(SamplerKind kind, int d, std::span<const double> base) {
  EnvironmentSampler s;
  s.kind = kind;
  s.d = d;
  switch (kind) {
    case SamplerKind::AntisymmetricPair: {
      if (d != 2) throw std::invalid_argument("antisymmetric-pair sampler requires d = 2");
      if (!base.empty()) throw std::invalid_argument("antisymmetric-pair sampler takes no base vector");
      s.c1 = 2.0;
      s.row_cov = {1.0, -1.0, -1.0, 1.0};
      s.id = "antisym";
      return s;
    }
    case SamplerKind::BalancedSigns: {
      if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("balanced-signs sampler requires even d");
      if (!base.empty()) throw std::invalid_argument("balanced-signs sampler takes no base vector");
      s.c1 = static_cast<double>(d);
      s.row_cov = exchangeable_row_cov(d);
      s.id = "balanced";
      return s;
    }
    case SamplerKind::PermutedVector: {
      if (d < 2) throw std::invalid_argument("permuted-vector sampler requires d >= 2");
      std::vector<double> w = base.empty() ? default_ramp_base(d)
                                           : std::vector<double>(base.begin(), base.end());
      if (static_cast<int>(w.size()) != d)
        throw std::invalid_argument("permuted-vector base must have length d");
      double mean = 0.0;
      double max_abs = 0.0;
      for (double x : w) {
        mean += x;
        max_abs = std::max(max_abs, std::abs(x));
      }
      mean /= d;
      if (max_abs == 0.0) throw std::invalid_argument("permuted-vector base must be nonzero");
      if (std::abs(mean) > 1e-9 * max_abs)
        throw std::invalid_argument("permuted-vector base must have zero sum");
      double sq = 0.0;
      for (double& x : w) {
        x -= mean;
        sq += x * x;
      }
      const double scale = std::sqrt(static_cast<double>(d) / sq);
      for (double& x : w) x *= scale;
      double max_scaled = 0.0;
      for (double x : w) max_scaled = std::max(max_scaled, std::abs(x));
      s.c1 = d * max_scaled;
      s.base = std::move(w);
      s.row_cov = exchangeable_row_cov(d);
      std::ostringstream id;
      id << "permvec base=";
      for (int i = 0; i < d; ++i) id << (i ? "," : "") << s.base[static_cast<std::size_t>(i)];
      s.id = id.str();
      return s;
    }
  }
  throw std::invalid_argument("unknown sampler kind");
}

EnvironmentSampler make_sampler(std::string_view spec, int d) {
  std::istringstream in{std::string(spec)};
  std::string kind;
  if (!(in >> kind)) throw std::invalid_argument("sampler spec: empty");
  std::vector<double> base;
  std::string token;
  while (in >> token) {
    if (token.rfind("base=", 0) == 0) {
      std::istringstream list{token.substr(5)};
      std::string item;
      while (std::getline(list, item, ',')) base.push_back(std::stod(item));
    } else {
      throw std::invalid_argument("sampler spec: unknown token '" + token + "'");
    }
  }
  if (kind == "antisym") return make_sampler(SamplerKind::AntisymmetricPair, d, base);
  if (kind == "balanced") return make_sampler(SamplerKind::BalancedSigns, d, base);
  if (kind == "permvec") return make_sampler(SamplerKind::PermutedVector, d, base);
  throw std::invalid_argument("sampler spec: unknown kind '" + kind + "'");
}

std::vector<double> row_covariance(const EnvironmentSampler& s) { return s.row_cov; }

Perturbation sample(const EnvironmentSampler& s, const Graph& g, std::uint64_t seed) {
  if (s.d != g.d) throw std::invalid_argument("sample: sampler degree does not match the graph");
  for (std::int64_t v = 0; v < g.n; ++v)
    if (!g.full_row(v))
      throw std::invalid_argument("sample: graph must be d-regular (truncated trees are not samplable)");

  Perturbation b;
  b.graph = &g;
  b.seed = seed;
  b.c1 = s.c1;
  b.entries.resize(static_cast<std::size_t>(g.n) * g.d);

  const int d = g.d;
  for (std::int64_t v = 0; v < g.n; ++v) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(v));
    double* row = b.entries.data() + v * d;
    switch (s.kind) {
      case SamplerKind::AntisymmetricPair: {
        const double sigma = rng.next_sign() ? 1.0 : -1.0;
        row[0] = sigma;
        row[1] = -sigma;
        break;
      }
      case SamplerKind::BalancedSigns: {
        for (int i = 0; i < d; ++i) row[i] = (i < d / 2) ? 1.0 : -1.0;
        for (int i = d - 1; i > 0; --i)
          std::swap(row[i], row[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        break;
      }
      case SamplerKind::PermutedVector: {
        std::copy(s.base.begin(), s.base.end(), row);
        for (int i = d - 1; i > 0; --i)
          std::swap(row[i], row[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        break;
      }
    }
  }
  return b;
}

void write_perturbation_csv(const Perturbation& b, std::ostream& out) {
  out << "vertex,slot,value\n";
  const Graph& g = *b.graph;
  char buf[40];
  for (std::int64_t v = 0; v < g.n; ++v) {
    for (int slot = 0; slot < g.d; ++slot) {
      std::snprintf(buf, sizeof buf, "%.17g", b.entry(v, slot));
      out << v << ',' << slot << ',' << buf << '\n';
    }
  }
}

}  // namespace girthlab
