#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace girthlab {

/// Girth value used for graphs with no cycle (truncated trees).
inline constexpr int kGirthAcyclic = std::numeric_limits<int>::max();

/// Finite graph with a fixed neighbor-slot layout. The vertex-transitive
/// families (cycle, lcf, cayley) fill all d slots of every vertex; truncated
/// trees leave the missing slots of boundary vertices at -1. The walk
/// operator M acts with coefficient 1/d on every present slot, so for the
/// tree family M is the infinite-tree operator restricted to the ball.
///
/// Graphs are immutable after construction and safe to share across threads.
struct Graph {
  std::int64_t n = 0;
  int d = 0;
  std::vector<std::int32_t> adj;  // n*d, slot-major; -1 marks an empty slot
  int girth = 0;                  // kGirthAcyclic when there is no cycle
  std::string family;             // "cycle" | "lcf" | "cayley" | "tree"
  std::string name;               // catalog name or resolved spec string
  bool vertex_transitive = false;
  bool bipartite = false;

  std::int32_t neighbor(std::int64_t v, int slot) const { return adj[v * d + slot]; }
  std::span<const std::int32_t> neighbors(std::int64_t v) const {
    return {adj.data() + v * d, static_cast<std::size_t>(d)};
  }
  /// True when vertex v has all d slots filled (always true off the tree family).
  bool full_row(std::int64_t v) const {
    for (std::int32_t w : neighbors(v))
      if (w < 0) return false;
    return true;
  }
};

/// Cycle C_n. Slot 0 is the predecessor, slot 1 the successor.
Graph build_cycle(std::int64_t n);

/// LCF notation: a Hamiltonian cycle on jumps.size()*exponent vertices plus
/// one chord per vertex, vertex i chorded to i + jumps[i mod jumps.size()].
struct LcfCode {
  std::string name;
  std::vector<int> jumps;
  int exponent = 1;
  bool declared_vertex_transitive = false;
};
Graph build_lcf(const LcfCode& code);

/// Shipped cubic catalog: heawood, pappus, desargues, tutte-coxeter, foster.
const std::vector<LcfCode>& lcf_catalog();
const LcfCode& lcf_catalog_entry(std::string_view name);

/// Row-major 2x2 integer matrix; entries are reduced mod p at build time.
using Mat2 = std::array<int, 4>;

/// {A, A^-1, B, B^-1} with A = [[1,2],[0,1]], B = [[1,0],[2,1]]; generates
/// SL(2, Z_p) for every odd prime p.
std::vector<Mat2> standard_cayley_generators();

/// Cayley graph of the subgroup of GL(2, Z_p) generated by `generators`,
/// which must be inverse-closed, identity-free and duplicate-free.
Graph build_cayley(int p, const std::vector<Mat2>& generators);

/// Ball of the given depth in the d-regular tree, root at vertex 0, vertices
/// in breadth-first order. Slot 0 of a non-root vertex is its parent.
Graph build_truncated_tree(int d, int depth);

/// Exact shortest-cycle length by BFS. With `assume_transitive` a single BFS
/// from vertex 0 suffices (the rooted view is the same everywhere); otherwise
/// every start vertex is scanned. Returns kGirthAcyclic for forests.
int compute_girth(const Graph& g, bool assume_transitive = false);

/// (Mx)_u = (1/d) * sum of x over the present neighbors of u.
template <typename T>
void apply_M(const Graph& g, std::span<const T> x, std::span<T> out);

std::vector<double> apply_M(const Graph& g, const std::vector<double>& x);
std::vector<std::complex<double>> apply_M(const Graph& g,
                                          const std::vector<std::complex<double>>& x);

/// Column of the k-th walk power: M^k e_v, by k applications of apply_M.
std::vector<double> walk_matrix_column(const Graph& g, std::int64_t v, int k);

/// Builds a graph from a spec string, e.g. "cycle n=200", "lcf name=foster",
/// "lcf jumps=5,-5 exponent=7", "cayley p=5 gens=standard",
/// "tree d=3 depth=6".
Graph build_graph(std::string_view spec);

}  // namespace girthlab
