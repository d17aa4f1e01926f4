#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "girthlab/graphs.hpp"

namespace girthlab {

enum class SamplerKind { AntisymmetricPair, BalancedSigns, PermutedVector };

std::string_view sampler_kind_name(SamplerKind kind);

/// Recipe for the random rows of the edge-bias matrix B. Every kind produces
/// rows with zero mean and unit variance per slot, exact zero row sum, and
/// entries bounded by c1/d. The d x d row covariance C is stored in closed
/// form (diagonal 1, off-diagonal -1/(d-1) for all shipped kinds) and feeds
/// every deterministic covariance computation.
struct EnvironmentSampler {
  SamplerKind kind = SamplerKind::AntisymmetricPair;
  int d = 0;
  double c1 = 0.0;
  std::vector<double> base;     // permuted-vector only: centered, sum of squares = d
  std::vector<double> row_cov;  // d*d, row-major
  std::string id;

  double cov(int a, int b) const { return row_cov[static_cast<std::size_t>(a) * d + b]; }
};

/// Kind constraints: antisymmetric-pair needs d = 2; balanced-signs needs an
/// even d; permuted-vector needs d >= 2 and a zero-sum base vector, which is
/// recentred exactly and rescaled to squared norm d. With no base given, the
/// permuted-vector kind uses a centered arithmetic ramp.
EnvironmentSampler make_sampler(SamplerKind kind, int d, std::span<const double> base = {});

/// Spec-string form: "antisym" | "balanced" | "permvec" | "permvec base=1,0,-1".
EnvironmentSampler make_sampler(std::string_view spec, int d);

std::vector<double> row_covariance(const EnvironmentSampler& s);

/// One realization of B on a graph: per-vertex rows aligned with the
/// adjacency slots. Rows come from independent per-vertex substreams keyed by
/// (seed, vertex id), so a fixed (sampler, graph, seed) is bit-reproducible
/// regardless of evaluation order.
struct Perturbation {
  const Graph* graph = nullptr;
  std::uint64_t seed = 0;
  double c1 = 0.0;
  std::vector<double> entries;  // n*d, slot-major

  double entry(std::int64_t v, int slot) const { return entries[v * graph->d + slot]; }
  std::span<const double> row(std::int64_t v) const {
    return {entries.data() + v * graph->d, static_cast<std::size_t>(graph->d)};
  }
};

Perturbation sample(const EnvironmentSampler& s, const Graph& g, std::uint64_t seed);

/// CSV audit dump: header plus one (vertex, slot, value) line per entry.
void write_perturbation_csv(const Perturbation& b, std::ostream& out);

}  // namespace girthlab
