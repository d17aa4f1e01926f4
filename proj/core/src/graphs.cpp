#include "girthlab/graphs.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace girthlab {

namespace {

void check_regular_symmetric(const Graph& g) {
  for (std::int64_t v = 0; v < g.n; ++v) {
    auto row = g.neighbors(v);
    for (int a = 0; a < g.d; ++a) {
      const std::int32_t w = row[a];
      if (w < 0 || w >= g.n) throw std::logic_error("graph: neighbor id out of range");
      if (w == v) throw std::logic_error("graph: self-loop");
      for (int b = a + 1; b < g.d; ++b)
        if (row[b] == w) throw std::logic_error("graph: duplicate neighbor");
      auto back = g.neighbors(w);
      if (std::find(back.begin(), back.end(), static_cast<std::int32_t>(v)) == back.end())
        throw std::logic_error("graph: adjacency not symmetric");
    }
  }
}

bool compute_bipartite(const Graph& g) {
  std::vector<std::int8_t> color(static_cast<std::size_t>(g.n), -1);
  std::deque<std::int64_t> queue;
  color[0] = 0;
  queue.push_back(0);
  while (!queue.empty()) {
    const std::int64_t u = queue.front();
    queue.pop_front();
    for (std::int32_t w : g.neighbors(u)) {
      if (w < 0) continue;
      if (color[w] < 0) {
        color[w] = static_cast<std::int8_t>(1 - color[u]);
        queue.push_back(w);
      } else if (color[w] == color[u]) {
        return false;
      }
    }
  }
  return true;
}

void check_connected(const Graph& g) {
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::deque<std::int64_t> queue{0};
  seen[0] = 1;
  std::int64_t reached = 1;
  while (!queue.empty()) {
    const std::int64_t u = queue.front();
    queue.pop_front();
    for (std::int32_t w : g.neighbors(u)) {
      if (w >= 0 && !seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != g.n) throw std::invalid_argument("graph: not connected");
}

// Shortest cycle visible from one BFS root: min over non-tree edges (u,w) of
// dist(u) + dist(w) + 1. Always an upper bound on the girth; exact when the
// root lies on a shortest cycle.
int girth_from(const Graph& g, std::int64_t source, int best_so_far) {
  std::vector<std::int32_t> dist(static_cast<std::size_t>(g.n), -1);
  std::vector<std::int32_t> parent(static_cast<std::size_t>(g.n), -1);
  std::deque<std::int64_t> queue{source};
  dist[source] = 0;
  int best = best_so_far;
  while (!queue.empty()) {
    const std::int64_t u = queue.front();
    queue.pop_front();
    if (2 * dist[u] >= best) break;  // deeper levels cannot improve
    for (std::int32_t w : g.neighbors(u)) {
      if (w < 0) continue;
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        parent[w] = static_cast<std::int32_t>(u);
        queue.push_back(w);
      } else if (w != parent[u]) {
        best = std::min(best, dist[u] + dist[w] + 1);
      }
    }
  }
  return best;
}

void finalize(Graph& g, bool transitive) {
  check_regular_symmetric(g);
  check_connected(g);
  g.vertex_transitive = transitive;
  g.girth = compute_girth(g, transitive);
  g.bipartite = compute_bipartite(g);
}

}  // namespace

int compute_girth(const Graph& g, bool assume_transitive) {
  int best = kGirthAcyclic;
  if (assume_transitive) {
    best = girth_from(g, 0, best);
  } else {
    for (std::int64_t v = 0; v < g.n && best > 3; ++v) best = girth_from(g, v, best);
  }
  return best;
}

Graph build_cycle(std::int64_t n) {
  if (n < 3) throw std::invalid_argument("build_cycle: n must be at least 3");
  Graph g;
  g.n = n;
  g.d = 2;
  g.family = "cycle";
  g.name = "cycle n=" + std::to_string(n);
  g.adj.resize(static_cast<std::size_t>(n) * 2);
  for (std::int64_t v = 0; v < n; ++v) {
    g.adj[2 * v + 0] = static_cast<std::int32_t>((v + n - 1) % n);  // slot 0: predecessor
    g.adj[2 * v + 1] = static_cast<std::int32_t>((v + 1) % n);      // slot 1: successor
  }
  finalize(g, true);
  return g;
}

Graph build_lcf(const LcfCode& code) {
  const std::int64_t k = static_cast<std::int64_t>(code.jumps.size());
  if (k == 0 || code.exponent < 1) throw std::invalid_argument("build_lcf: empty code");
  const std::int64_t n = k * code.exponent;
  if (n < 4) throw std::invalid_argument("build_lcf: too few vertices");

  Graph g;
  g.n = n;
  g.d = 3;
  g.family = "lcf";
  g.name = code.name.empty() ? "lcf" : code.name;
  g.adj.assign(static_cast<std::size_t>(n) * 3, -1);

  auto wrap = [n](std::int64_t x) { return static_cast<std::int32_t>(((x % n) + n) % n); };
  for (std::int64_t v = 0; v < n; ++v) {
    g.adj[3 * v + 0] = wrap(v - 1);
    g.adj[3 * v + 1] = wrap(v + 1);
  }
  for (std::int64_t v = 0; v < n; ++v) {
    const int jump = code.jumps[static_cast<std::size_t>(v % k)];
    const std::int32_t t = wrap(v + jump);
    if (t == v || t == wrap(v - 1) || t == wrap(v + 1))
      throw std::invalid_argument("build_lcf: chord collides with the Hamiltonian cycle");
    if (g.adj[3 * v + 2] != -1 && g.adj[3 * v + 2] != t)
      throw std::invalid_argument("build_lcf: two distinct chords at one vertex");
    if (g.adj[3 * t + 2] != -1 && g.adj[3 * t + 2] != static_cast<std::int32_t>(v))
      throw std::invalid_argument("build_lcf: two distinct chords at one vertex");
    g.adj[3 * v + 2] = t;
    g.adj[3 * t + 2] = static_cast<std::int32_t>(v);
  }
  finalize(g, code.declared_vertex_transitive);
  return g;
}

const std::vector<LcfCode>& lcf_catalog() {
  static const std::vector<LcfCode> catalog = {
      {"heawood", {5, -5}, 7, true},
      {"pappus", {5, 7, -7, 7, -7, -5}, 3, true},
      {"desargues", {5, -5, 9, -9}, 5, true},
      {"tutte-coxeter", {-13, -9, 7, -7, 9, 13}, 5, true},
      {"foster", {17, -9, 37, -37, 9, -17}, 15, true},
  };
  return catalog;
}

const LcfCode& lcf_catalog_entry(std::string_view name) {
  for (const LcfCode& code : lcf_catalog())
    if (code.name == name) return code;
  throw std::invalid_argument("lcf catalog: unknown graph '" + std::string(name) + "'");
}

namespace {

int mod_p(long long x, int p) { return static_cast<int>(((x % p) + p) % p); }

Mat2 reduce(const Mat2& m, int p) {
  return {mod_p(m[0], p), mod_p(m[1], p), mod_p(m[2], p), mod_p(m[3], p)};
}

Mat2 mat_mul(const Mat2& a, const Mat2& b, int p) {
  return {mod_p(static_cast<long long>(a[0]) * b[0] + static_cast<long long>(a[1]) * b[2], p),
          mod_p(static_cast<long long>(a[0]) * b[1] + static_cast<long long>(a[1]) * b[3], p),
          mod_p(static_cast<long long>(a[2]) * b[0] + static_cast<long long>(a[3]) * b[2], p),
          mod_p(static_cast<long long>(a[2]) * b[1] + static_cast<long long>(a[3]) * b[3], p)};
}

int pow_mod(long long base, long long exp, int p) {
  long long r = 1;
  base = mod_p(base, p);
  while (exp > 0) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<int>(r);
}

Mat2 mat_inverse(const Mat2& m, int p) {
  const int det = mod_p(static_cast<long long>(m[0]) * m[3] - static_cast<long long>(m[1]) * m[2], p);
  if (det == 0) throw std::invalid_argument("build_cayley: generator not invertible mod p");
  const int det_inv = pow_mod(det, p - 2, p);
  return {mod_p(static_cast<long long>(det_inv) * m[3], p),
          mod_p(-static_cast<long long>(det_inv) * m[1], p),
          mod_p(-static_cast<long long>(det_inv) * m[2], p),
          mod_p(static_cast<long long>(det_inv) * m[0], p)};
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::uint32_t mat_key(const Mat2& m, int p) {
  return ((static_cast<std::uint32_t>(m[0]) * p + m[1]) * p + m[2]) * p + m[3];
}

}  // namespace

std::vector<Mat2> standard_cayley_generators() {
  return {{1, 2, 0, 1}, {1, -2, 0, 1}, {1, 0, 2, 1}, {1, 0, -2, 1}};
}

Graph build_cayley(int p, const std::vector<Mat2>& generators) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("build_cayley: p must be an odd prime");
  if (generators.empty()) throw std::invalid_argument("build_cayley: no generators");

  std::vector<Mat2> gens;
  gens.reserve(generators.size());
  for (const Mat2& m : generators) gens.push_back(reduce(m, p));

  const Mat2 identity{1, 0, 0, 1};
  for (std::size_t a = 0; a < gens.size(); ++a) {
    if (gens[a] == identity) throw std::invalid_argument("build_cayley: identity generator");
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (gens[a] == gens[b]) throw std::invalid_argument("build_cayley: duplicate generator");
    const Mat2 inv = mat_inverse(gens[a], p);
    if (std::find(gens.begin(), gens.end(), inv) == gens.end())
      throw std::invalid_argument("build_cayley: generator set not closed under inverse");
  }

  // Enumerate the generated subgroup breadth-first; vertex ids follow the
  // discovery order, slot s of g is g * gens[s].
  std::unordered_map<std::uint32_t, std::int32_t> index;
  std::vector<Mat2> elements{identity};
  index.emplace(mat_key(identity, p), 0);
  std::vector<std::int32_t> adj;
  constexpr std::int64_t kMaxOrder = 2'000'000;
  for (std::int64_t head = 0; head < static_cast<std::int64_t>(elements.size()); ++head) {
    const Mat2 cur = elements[static_cast<std::size_t>(head)];
    for (const Mat2& s : gens) {
      const Mat2 next = mat_mul(cur, s, p);
      const std::uint32_t key = mat_key(next, p);
      auto [it, inserted] = index.emplace(key, static_cast<std::int32_t>(elements.size()));
      if (inserted) {
        elements.push_back(next);
        if (static_cast<std::int64_t>(elements.size()) > kMaxOrder)
          throw std::invalid_argument("build_cayley: group too large");
      }
      adj.push_back(it->second);
    }
  }

  Graph g;
  g.n = static_cast<std::int64_t>(elements.size());
  g.d = static_cast<int>(gens.size());
  g.family = "cayley";
  g.name = "cayley p=" + std::to_string(p);
  g.adj = std::move(adj);
  finalize(g, true);
  return g;
}

Graph build_truncated_tree(int d, int depth) {
  if (d < 2) throw std::invalid_argument("build_truncated_tree: d must be at least 2");
  if (depth < 1) throw std::invalid_argument("build_truncated_tree: depth must be at least 1");

  std::int64_t n = 1;
  {
    std::int64_t layer = d;
    for (int r = 1; r <= depth; ++r) {
      n += layer;
      if (n > 50'000'000) throw std::invalid_argument("build_truncated_tree: ball too large");
      layer *= (d - 1);
    }
  }

  Graph g;
  g.n = n;
  g.d = d;
  g.family = "tree";
  g.name = "tree d=" + std::to_string(d) + " depth=" + std::to_string(depth);
  g.adj.assign(static_cast<std::size_t>(n) * d, -1);

  // Breadth-first layout: children of vertex v get consecutive ids.
  std::int64_t next_id = 1;
  std::vector<std::int32_t> level{0};
  for (int r = 0; r < depth; ++r) {
    std::vector<std::int32_t> next_level;
    next_level.reserve(level.size() * static_cast<std::size_t>(d - 1) + 2);
    for (const std::int32_t v : level) {
      const int children = (r == 0) ? d : d - 1;
      const int first_slot = (r == 0) ? 0 : 1;
      for (int c = 0; c < children; ++c) {
        const auto child = static_cast<std::int32_t>(next_id++);
        g.adj[static_cast<std::int64_t>(v) * d + first_slot + c] = child;
        g.adj[static_cast<std::int64_t>(child) * d + 0] = v;  // slot 0: parent
        next_level.push_back(child);
      }
    }
    level = std::move(next_level);
  }

  g.girth = kGirthAcyclic;
  g.vertex_transitive = false;
  g.bipartite = true;
  return g;
}

template <typename T>
void apply_M(const Graph& g, std::span<const T> x, std::span<T> out) {
  if (static_cast<std::int64_t>(x.size()) != g.n || static_cast<std::int64_t>(out.size()) != g.n)
    throw std::invalid_argument("apply_M: vector length must equal the vertex count");
  const double inv_d = 1.0 / g.d;
  const std::int32_t* adj = g.adj.data();
  for (std::int64_t v = 0; v < g.n; ++v) {
    T acc{};
    for (int s = 0; s < g.d; ++s) {
      const std::int32_t w = adj[v * g.d + s];
      if (w >= 0) acc += x[w];
    }
    out[v] = acc * inv_d;
  }
}

template void apply_M<double>(const Graph&, std::span<const double>, std::span<double>);
template void apply_M<std::complex<double>>(const Graph&, std::span<const std::complex<double>>,
                                            std::span<std::complex<double>>);

std::vector<double> apply_M(const Graph& g, const std::vector<double>& x) {
  std::vector<double> out(x.size());
  apply_M<double>(g, x, out);
  return out;
}

std::vector<std::complex<double>> apply_M(const Graph& g,
                                          const std::vector<std::complex<double>>& x) {
  std::vector<std::complex<double>> out(x.size());
  apply_M<std::complex<double>>(g, x, out);
  return out;
}

std::vector<double> walk_matrix_column(const Graph& g, std::int64_t v, int k) {
  if (v < 0 || v >= g.n) throw std::invalid_argument("walk_matrix_column: vertex out of range");
  if (k < 0) throw std::invalid_argument("walk_matrix_column: negative power");
  std::vector<double> col(static_cast<std::size_t>(g.n), 0.0);
  col[static_cast<std::size_t>(v)] = 1.0;
  std::vector<double> tmp(col.size());
  for (int step = 0; step < k; ++step) {
    apply_M<double>(g, col, tmp);
    col.swap(tmp);
  }
  return col;
}

namespace {

std::map<std::string, std::string, std::less<>> parse_kv(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("graph spec: expected key=value, got '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return kv;
}

std::int64_t parse_int(const std::string& text, std::string_view what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("graph spec: bad integer for " + std::string(what));
  return value;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in{text};
  while (std::getline(in, item, ','))
    out.push_back(static_cast<int>(parse_int(item, "list entry")));
  if (out.empty()) throw std::invalid_argument("graph spec: empty list");
  return out;
}

}  // namespace

Graph build_graph(std::string_view spec) {
  std::istringstream in{std::string(spec)};
  std::string family;
  if (!(in >> family)) throw std::invalid_argument("graph spec: empty");
  std::string rest;
  std::getline(in, rest);
  const auto kv = parse_kv(rest);
  auto need = [&](std::string_view key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument("graph spec: missing '" + std::string(key) + "'");
    return it->second;
  };

  if (family == "cycle") return build_cycle(parse_int(need("n"), "n"));
  if (family == "lcf") {
    if (const auto it = kv.find("name"); it != kv.end()) return build_lcf(lcf_catalog_entry(it->second));
    LcfCode code;
    code.jumps = parse_int_list(need("jumps"));
    code.exponent = static_cast<int>(parse_int(need("exponent"), "exponent"));
    return build_lcf(code);
  }
  if (family == "cayley") {
    const int p = static_cast<int>(parse_int(need("p"), "p"));
    const auto it = kv.find("gens");
    if (it != kv.end() && it->second != "standard")
      throw std::invalid_argument("graph spec: only gens=standard is available");
    return build_cayley(p, standard_cayley_generators());
  }
  if (family == "tree")
    return build_truncated_tree(static_cast<int>(parse_int(need("d"), "d")),
                                static_cast<int>(parse_int(need("depth"), "depth")));
  throw std::invalid_argument("graph spec: unknown family '" + family + "'");
}

}  // namespace girthlab
