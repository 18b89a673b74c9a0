#include "congestcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace congestcut {

Graph::Graph(int n, std::vector<Edge> edges, bool weighted)
    : n_(n), weighted_(weighted), edges_(std::move(edges)), incident_(n) {
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    Edge& ed = edges_[e];
    if (ed.u < 0 || ed.u >= n_ || ed.v < 0 || ed.v >= n_)
      throw domain_error("edge endpoint out of range");
    if (ed.u == ed.v) throw domain_error("self-loop");
    if (ed.u > ed.v) std::swap(ed.u, ed.v);
    if (ed.w < 1) throw domain_error("nonpositive edge weight");
    incident_[ed.u].push_back(e);
    incident_[ed.v].push_back(e);
  }
}

Weight Graph::weighted_degree(int v) const {
  Weight d = 0;
  for (int e : incident_[v]) d += edges_[e].w;
  return d;
}

Weight Graph::min_weighted_degree() const {
  Weight best = 0;
  for (int v = 0; v < n_; ++v) {
    Weight d = weighted_degree(v);
    if (v == 0 || d < best) best = d;
  }
  return best;
}

int Graph::min_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) {
    int d = degree(v);
    if (v == 0 || d < best) best = d;
  }
  return best;
}

Weight Graph::total_weight() const {
  Weight t = 0;
  for (const Edge& e : edges_) t += e.w;
  return t;
}

std::optional<int> Graph::find_edge(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return std::nullopt;
  const auto& inc = degree(u) <= degree(v) ? incident_[u] : incident_[v];
  int x = degree(u) <= degree(v) ? u : v;
  int y = degree(u) <= degree(v) ? v : u;
  for (int e : inc)
    if (edges_[e].other(x) == y) return e;
  return std::nullopt;
}

void Graph::validate(int weight_exponent) const {
  std::set<std::pair<int, int>> seen;
  Weight max_w = 1;
  for (int i = 0; i < weight_exponent; ++i) {
    max_w *= std::max(n_, 1);
    if (max_w > (Weight(1) << 60)) { max_w = Weight(1) << 60; break; }
  }
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw invariant_error("simple", "self-loop present");
    if (!seen.insert({e.u, e.v}).second)
      throw invariant_error("simple", "duplicate edge present");
    if (e.w < 1 || e.w > max_w)
      throw invariant_error("weight-range", "edge weight outside {1..n^c}");
  }
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) { ++deg[e.u]; ++deg[e.v]; }
  for (int v = 0; v < n_; ++v)
    if (deg[v] != degree(v))
      throw invariant_error("adjacency", "incidence list disagrees with edge set");
}

static void check_proper(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.n()) throw domain_error("vertex set universe mismatch");
  if (s.empty()) throw domain_error("empty cut side");
  if (s.is_full()) throw domain_error("cut side equals V");
}

Weight cut_weight(const Graph& g, const VertexSet& s) {
  check_proper(g, s);
  Weight total = 0;
  for (const Edge& e : g.edges())
    if (s.contains(e.u) != s.contains(e.v)) total += e.w;
  return total;
}

std::int64_t volume(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.n()) throw domain_error("vertex set universe mismatch");
  std::int64_t vol = 0;
  for (int v : s.to_vector()) vol += g.degree(v);
  return vol;
}

Rational conductance(const Graph& g, const VertexSet& s) {
  check_proper(g, s);
  std::int64_t crossing = 0;
  for (const Edge& e : g.edges())
    if (s.contains(e.u) != s.contains(e.v)) ++crossing;
  std::int64_t vol = volume(g, s);
  std::int64_t cvol = 2LL * g.m() - vol;
  std::int64_t denom = std::min(vol, cvol);
  if (denom <= 0) throw domain_error("degenerate side: zero volume");
  return Rational(crossing, denom);
}

Rational graph_conductance_exhaustive(const Graph& g) {
  if (g.n() > 20) throw capacity_error("conductance enumeration limited to n <= 20");
  if (g.n() < 2) throw domain_error("need at least two vertices");
  Rational best(1, 1);
  bool found = false;
  // Vertex 0 fixed on one side; phi is symmetric under complement.
  const std::uint64_t lim = 1ULL << (g.n() - 1);
  for (std::uint64_t mask = 0; mask < lim; ++mask) {
    VertexSet s(g.n());
    s.add(0);
    for (int v = 1; v < g.n(); ++v)
      if ((mask >> (v - 1)) & 1) s.add(v);
    if (s.is_full()) continue;
    std::int64_t vol = volume(g, s);
    std::int64_t cvol = 2LL * g.m() - vol;
    if (vol == 0 || cvol == 0) continue;
    Rational phi = conductance(g, s);
    if (!found || phi < best) { best = phi; found = true; }
  }
  if (!found) throw domain_error("no valid subset with positive volume");
  return best;
}

namespace {
struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};
}  // namespace

std::vector<VertexSet> connected_components(const Graph& g, const std::vector<int>& edge_filter) {
  Dsu dsu(g.n());
  std::vector<bool> touched(g.n(), false);
  for (int e : edge_filter) {
    const Edge& ed = g.edge(e);
    touched[ed.u] = touched[ed.v] = true;
    dsu.unite(ed.u, ed.v);
  }
  std::vector<int> comp_of_root(g.n(), -1);
  std::vector<VertexSet> comps;
  for (int v = 0; v < g.n(); ++v) {
    if (!touched[v]) continue;
    int r = dsu.find(v);
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(comps.size());
      comps.emplace_back(g.n());
    }
    comps[comp_of_root[r]].add(v);
  }
  return comps;
}

std::vector<int> RootedTree::ancestors(int v) const {
  std::vector<int> chain;
  for (int x = v; x != -1; x = parent[x]) chain.push_back(x);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

void RootedTree::finish() {
  int n = static_cast<int>(parent.size());
  tin.assign(n, 0);
  tout.assign(n, 0);
  // Iterative preorder from root.
  int timer = 0;
  std::vector<std::pair<int, int>> stack;  // (vertex, child index)
  stack.push_back({root, 0});
  tin[root] = timer++;
  while (!stack.empty()) {
    auto& [v, ci] = stack.back();
    if (ci < static_cast<int>(children[v].size())) {
      int c = children[v][ci++];
      tin[c] = timer++;
      stack.push_back({c, 0});
    } else {
      tout[v] = timer;
      stack.pop_back();
    }
  }
}

RootedTree bfs(const Graph& g, int root, const std::vector<int>& edge_filter) {
  if (root < 0 || root >= g.n()) throw domain_error("bfs root out of range");
  std::vector<std::vector<int>> adj(g.n());
  for (int e : edge_filter) {
    adj[g.edge(e).u].push_back(e);
    adj[g.edge(e).v].push_back(e);
  }
  RootedTree t;
  t.root = root;
  t.parent.assign(g.n(), -1);
  t.parent_edge.assign(g.n(), -1);
  t.children.assign(g.n(), {});
  t.level.assign(g.n(), -1);
  t.level[root] = 0;
  t.order.push_back(root);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    int v = t.order[head];
    for (int e : adj[v]) {
      int u = g.edge(e).other(v);
      if (t.level[u] >= 0) continue;
      t.level[u] = t.level[v] + 1;
      t.parent[u] = v;
      t.parent_edge[u] = e;
      t.children[v].push_back(u);
      t.order.push_back(u);
      t.depth = std::max(t.depth, t.level[u]);
    }
  }
  t.finish();
  return t;
}

RootedTree bfs_full(const Graph& g, int root) {
  std::vector<int> all(g.m());
  std::iota(all.begin(), all.end(), 0);
  return bfs(g, root, all);
}

int eccentricity(const Graph& g, int root) { return bfs_full(g, root).depth; }

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  return bfs_full(g, 0).size() == g.n();
}

CutResult make_cut_result(const Graph& g, const VertexSet& side) {
  CutResult r;
  r.side = side.contains(0) ? side : side.complement();
  r.value = 0;
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    if (r.side.contains(ed.u) != r.side.contains(ed.v)) {
      r.value += ed.w;
      r.crossing_edges.push_back(e);
    }
  }
  return r;
}

}  // namespace congestcut
