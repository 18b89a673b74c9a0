#include "congestcut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "congestcut/rng.hpp"

namespace congestcut::oracle {

CutResult stoer_wagner(const Graph& g) {
  const int n = g.n();
  if (n < 2) throw domain_error("min cut needs at least two vertices");

  if (!is_connected(g)) {
    auto all = std::vector<int>(g.m());
    std::iota(all.begin(), all.end(), 0);
    RootedTree t = bfs_full(g, 0);
    VertexSet side(n);
    for (int v = 0; v < n; ++v)
      if (t.in_tree(v)) side.add(v);
    CutResult r;
    r.side = side;
    r.value = 0;
    return r;
  }

  // Dense adjacency; supernodes absorb merged vertices.
  std::vector<std::vector<Weight>> w(n, std::vector<Weight>(n, 0));
  for (const Edge& e : g.edges()) {
    w[e.u][e.v] += e.w;
    w[e.v][e.u] += e.w;
  }
  std::vector<std::vector<int>> members(n);
  for (int v = 0; v < n; ++v) members[v] = {v};
  std::vector<bool> gone(n, false);

  Weight best = -1;
  std::vector<int> best_side;

  for (int phase = 0; phase < n - 1; ++phase) {
    // Maximum adjacency order from an arbitrary alive vertex.
    std::vector<Weight> key(n, 0);
    std::vector<bool> in_a(n, false);
    int prev = -1, last = -1;
    int alive = 0;
    for (int v = 0; v < n; ++v)
      if (!gone[v]) ++alive;
    if (alive < 2) break;
    for (int it = 0; it < alive; ++it) {
      int sel = -1;
      for (int v = 0; v < n; ++v)
        if (!gone[v] && !in_a[v] && (sel < 0 || key[v] > key[sel])) sel = v;
      in_a[sel] = true;
      prev = last;
      last = sel;
      for (int v = 0; v < n; ++v)
        if (!gone[v] && !in_a[v]) key[v] += w[sel][v];
    }
    // Cut-of-the-phase: last vertex alone against the rest.
    Weight phase_cut = key[last];
    if (best < 0 || phase_cut < best) {
      best = phase_cut;
      best_side = members[last];
    }
    // Merge last into prev.
    gone[last] = true;
    for (int v = 0; v < n; ++v) {
      if (gone[v] || v == prev) continue;
      w[prev][v] += w[last][v];
      w[v][prev] += w[last][v];
    }
    members[prev].insert(members[prev].end(), members[last].begin(), members[last].end());
  }

  return make_cut_result(g, VertexSet::of(n, best_side));
}

MinCutEnumeration enumerate_min_cuts(const Graph& g) {
  const int n = g.n();
  if (n > 20) throw capacity_error("min-cut enumeration limited to n <= 20");
  if (n < 2) throw domain_error("min cut needs at least two vertices");
  MinCutEnumeration out;
  bool first = true;
  // Vertex 0 fixed on the side, bits 1..n-1 free: each unordered
  // bipartition appears exactly once. mask = lim-1 would be the full set.
  const std::uint64_t lim = 1ULL << (n - 1);
  for (std::uint64_t mask = 0; mask + 1 < lim; ++mask) {
    VertexSet s(n);
    s.add(0);
    for (int v = 1; v < n; ++v)
      if ((mask >> (v - 1)) & 1) s.add(v);
    Weight val = 0;
    for (const Edge& e : g.edges())
      if (s.contains(e.u) != s.contains(e.v)) val += e.w;
    if (first || val < out.lambda) {
      out.lambda = val;
      out.cuts.clear();
      first = false;
    }
    if (val == out.lambda) out.cuts.push_back(s);
  }
  return out;
}

Graph gnp(int n, double p, std::uint64_t seed) {
  auto rng = make_rng(hash_combine(seed, 0x6e70));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.push_back({u, v, 1});
  return Graph(n, std::move(edges));
}

Graph cycle(int n) {
  if (n < 3) throw domain_error("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, 1});
  return Graph(n, std::move(edges));
}

Graph clique(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1});
  return Graph(n, std::move(edges));
}

Graph path(int n) {
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1});
  return Graph(n, std::move(edges));
}

Graph star(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({0, v, 1});
  return Graph(n, std::move(edges));
}

Graph grid(int rows, int cols) {
  auto id = [&](int r, int c) { return r * cols + c; };
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1});
    }
  return Graph(rows * cols, std::move(edges));
}

Graph barbell(int clique_size, int bridge_count) {
  if (bridge_count > clique_size)
    throw domain_error("barbell: more bridges than clique vertices");
  if (bridge_count >= clique_size - 1)
    throw domain_error("barbell: bridges must stay below the clique degree");
  int n = 2 * clique_size;
  std::vector<Edge> edges;
  for (int u = 0; u < clique_size; ++u)
    for (int v = u + 1; v < clique_size; ++v) {
      edges.push_back({u, v, 1});
      edges.push_back({clique_size + u, clique_size + v, 1});
    }
  for (int b = 0; b < bridge_count; ++b)
    edges.push_back({b, clique_size + b, 1});
  return Graph(n, std::move(edges));
}

namespace {
// Half = circulant on h vertices with offsets 1..d (vertex-transitive, so
// its edge connectivity equals its degree 2d), plus seeded extra chords.
void add_half(std::vector<Edge>& edges, int base, int h, int d, int extra,
              std::uint64_t seed, std::set<std::pair<int, int>>& seen) {
  auto put = [&](int a, int b) {
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) return false;
    edges.push_back({a, b, 1});
    return true;
  };
  for (int i = 0; i < h; ++i)
    for (int off = 1; off <= d; ++off) put(base + i, base + (i + off) % h);
  auto rng = make_rng(hash_combine(seed, base + 1));
  std::uniform_int_distribution<int> pick(0, h - 1);
  int added = 0, guard = 0;
  while (added < extra && guard < 50 * (extra + 1)) {
    ++guard;
    if (put(base + pick(rng), base + pick(rng))) ++added;
  }
}
}  // namespace

Graph planted_cut_dense(int n, int k, int delta, std::uint64_t seed) {
  int h1 = n / 2, h2 = n - h1;
  int h_min = std::min(h1, h2);
  int d = std::max(k / 2 + 1, delta / 2);
  if (2 * d > h_min - 1) throw domain_error("planted cut: halves too small for degree target");
  if (k < 1) throw domain_error("planted cut: k >= 1 required");

  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  add_half(edges, 0, h1, d, 0, seed, seen);
  add_half(edges, h1, h2, d, 0, seed, seen);
  // Spread the k crossing edges over distinct endpoints where possible, so
  // no vertex loses a large fraction of its degree to the planted cut.
  auto rng = make_rng(hash_combine(seed, 0xb71d6e));
  for (int b = 0; b < k; ++b) {
    int u = b % h1;
    int v = h1 + (b % h2);
    while (seen.count({std::min(u, v), std::max(u, v)})) {
      u = static_cast<int>(rng() % h1);
      v = h1 + static_cast<int>(rng() % h2);
    }
    seen.insert({std::min(u, v), std::max(u, v)});
    edges.push_back({u, v, 1});
  }
  return Graph(n, std::move(edges));
}

Graph planted_cut(int n, int k, std::uint64_t seed, int extra_degree) {
  return planted_cut_dense(n, k, 2 * (k / 2 + 1) + extra_degree, seed);
}

Graph with_random_weights(const Graph& g, Weight max_w, std::uint64_t seed) {
  auto rng = make_rng(hash_combine(seed, 0x77e1));
  std::uniform_int_distribution<Weight> pick(1, std::max<Weight>(1, max_w));
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.w = pick(rng);
  return Graph(g.n(), std::move(edges), true);
}

}  // namespace congestcut::oracle
