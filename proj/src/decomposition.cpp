#include "congestcut/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>

#include "congestcut/rng.hpp"

namespace congestcut::decomp {

DecompParams DecompParams::make(const Graph& g, double gamma, double rho) {
  if (!(gamma > 0.0 && gamma < 1.0) || !(rho > 0.0 && rho < 1.0))
    throw domain_error("tripartition exponents must lie in (0,1)");
  DecompParams p;
  p.gamma = gamma;
  p.rho = rho;
  p.n = g.n();
  p.m = g.m();
  p.n_gamma = std::pow(static_cast<double>(g.n()), gamma);
  p.n_rho = std::pow(static_cast<double>(g.n()), rho);
  p.log2_m = std::log2(std::max<double>(2.0, static_cast<double>(g.m())));
  return p;
}

int find_sparse_index(const std::vector<std::int64_t>& a, std::int64_t m, double n_rho) {
  const int len = static_cast<int>(a.size());
  if (len < 4) throw domain_error("sparse index: sequence too short");
  std::int64_t total = 0;
  for (std::int64_t x : a) {
    if (x <= 0) throw domain_error("sparse index: sequence must be positive");
    total += x;
  }
  if (total > m) throw domain_error("sparse index: sequence sums beyond m");

  const long double factor =
      12.0L * static_cast<long double>(n_rho) * std::log2(std::max<long double>(2.0L, m));

  // Prefix sums over the lighter half; reverse when the suffix is lighter.
  std::vector<std::int64_t> seq(a);
  std::vector<std::int64_t> prefix(len + 1, 0);
  for (int i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + seq[i];
  bool reversed = false;
  if (prefix[len / 2] > total - prefix[len / 2]) {
    std::reverse(seq.begin(), seq.end());
    for (int i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + seq[i];
    reversed = true;
  }

  const int lo = (len + 3) / 4;  // ceil(len/4), 1-based scan start
  const int hi = len / 2;
  for (int j = lo; j <= hi; ++j) {
    // a_j <= prefix_{<j} / factor; the suffix side is at least as heavy.
    if (static_cast<long double>(seq[j - 1]) * factor <=
        static_cast<long double>(prefix[j - 1]))
      return reversed ? len + 1 - j : j;
  }
  throw domain_error("sparse index: no valid index (precondition violated)");
}

namespace {

/// Local adjacency of a working subgraph: per touched vertex, the incident
/// subgraph edges.
struct SubView {
  std::vector<int> verts;               // touched vertices
  std::vector<std::vector<int>> inc;    // indexed by vertex id (global)
  std::vector<int> deg;                 // residual degree, global indexing

  SubView(const Graph& g, const std::vector<int>& edges) : inc(g.n()), deg(g.n(), 0) {
    std::vector<char> seen(g.n(), 0);
    for (int e : edges) {
      const Edge& ed = g.edge(e);
      inc[ed.u].push_back(e);
      inc[ed.v].push_back(e);
      ++deg[ed.u];
      ++deg[ed.v];
      for (int v : {ed.u, ed.v})
        if (!seen[v]) {
          seen[v] = 1;
          verts.push_back(v);
        }
    }
    std::sort(verts.begin(), verts.end());
  }
};

/// BFS restricted to a subgraph edge list; returns levels (global ids).
struct SubBfs {
  std::vector<int> level;   // -1 outside
  std::vector<int> order;
  int depth = 0;

  SubBfs(const Graph& g, const SubView& view, int root) : level(g.n(), -1) {
    level[root] = 0;
    order.push_back(root);
    for (std::size_t h = 0; h < order.size(); ++h) {
      int v = order[h];
      for (int e : view.inc[v]) {
        int u = g.edge(e).other(v);
        if (level[u] >= 0) continue;
        level[u] = level[v] + 1;
        depth = std::max(depth, level[u]);
        order.push_back(u);
      }
    }
  }
};

std::vector<std::vector<int>> split_components(const Graph& g, const std::vector<int>& edges) {
  // Union-find over the edge list only.
  std::vector<int> parent(g.n(), -1);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] >= 0 && parent[parent[x]] >= 0) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return parent[x] >= 0 ? parent[x] : x;
  };
  for (int e : edges) {
    int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a != b) parent[b] = a;
  }
  std::vector<int> slot(g.n(), -1);
  std::vector<std::vector<int>> groups;
  for (int e : edges) {
    int r = find(g.edge(e).u);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(e);
  }
  return groups;
}

}  // namespace

SubCut high_diameter_cut(const Graph& g, const std::vector<int>& sub_edges, int root,
                         const DecompParams& params) {
  SubView view(g, sub_edges);
  SubBfs bfs_res(g, view, root);
  const int ecc = bfs_res.depth;
  if (static_cast<double>(ecc) < params.diameter_threshold())
    throw domain_error("high diameter cut: eccentricity below 48 n^rho log^2 m");
  // No edge may join two vertices of degree <= n^gamma / 2.
  const double low = params.n_gamma / 2.0;
  for (int e : sub_edges) {
    const Edge& ed = g.edge(e);
    if (view.deg[ed.u] <= low && view.deg[ed.v] <= low)
      throw domain_error("high diameter cut: edge joins two low-degree vertices");
  }

  // a_j = edges between levels j-1 and j (1-based, j = 1..ecc).
  std::vector<std::int64_t> a(ecc, 0);
  for (int e : sub_edges) {
    int lu = bfs_res.level[g.edge(e).u], lv = bfs_res.level[g.edge(e).v];
    if (lu == lv) continue;
    a[std::max(lu, lv) - 1] += 1;
  }
  int j = find_sparse_index(a, params.m, params.n_rho);

  SubCut cut;
  cut.side = VertexSet(g.n());
  for (int v : bfs_res.order)
    if (bfs_res.level[v] < j) cut.side.add(v);
  for (int e : sub_edges) {
    if (cut.side.contains(g.edge(e).u) != cut.side.contains(g.edge(e).v)) {
      cut.crossing.push_back(e);
      ++cut.crossing_count;
    }
  }
  return cut;
}

PeelResult low_degree_peel(const Graph& g, const std::vector<int>& sub_edges,
                           const DecompParams& params) {
  SubView view(g, sub_edges);
  PeelResult res;
  res.e_s.assign(g.n(), {});
  res.peel_batch.assign(g.n(), -1);
  std::vector<char> edge_alive(g.m(), 0);
  for (int e : sub_edges) edge_alive[e] = 1;
  std::vector<int> deg = view.deg;
  std::vector<char> removed(g.n(), 0);

  const double threshold = params.n_gamma;
  int batch_index = 0;
  while (true) {
    std::vector<int> batch;
    for (int v : view.verts)
      if (!removed[v] && deg[v] <= threshold) batch.push_back(v);
    if (batch.empty()) break;
    ++batch_index;
    for (int v : batch) {
      removed[v] = 1;
      res.peel_batch[v] = batch_index;
    }
    for (int v : batch) {
      for (int e : view.inc[v]) {
        if (!edge_alive[e]) continue;
        const Edge& ed = g.edge(e);
        int u = ed.other(v);
        // Orient away from the removed endpoint; if both endpoints sit in
        // this batch the smaller id takes the edge.
        int owner = v;
        if (removed[u] && res.peel_batch[u] == batch_index) owner = std::min(u, v);
        edge_alive[e] = 0;
        --deg[ed.u];
        --deg[ed.v];
        res.e_s[owner].push_back(e);
      }
    }
    res.removed_vertices += static_cast<int>(batch.size());
    if (static_cast<double>(batch.size()) <= threshold / 2.0) break;
  }
  res.iterations = batch_index;
  for (int e : sub_edges)
    if (edge_alive[e]) res.kept_edges.push_back(e);
  return res;
}

std::optional<SubCut> low_conductance_cut(const Graph& g, const std::vector<int>& sub_edges,
                                          double phi, const DecompParams& params,
                                          std::uint64_t seed, const Config& cfg) {
  if (phi > 1.0 / 12.0) throw domain_error("low conductance cut: phi must be <= 1/12");
  SubView view(g, sub_edges);
  const int nv = static_cast<int>(view.verts.size());
  if (nv < 2 || sub_edges.size() < 1) return std::nullopt;

  const std::int64_t vol_total = 2 * static_cast<std::int64_t>(sub_edges.size());
  const double target = 12.0 * phi;

  const int n_seeds =
      static_cast<int>(std::ceil(cfg.lc_seed_factor * std::log2(std::max(2, nv)))) + 2;
  const double lnm = std::log(std::max<double>(2.0, static_cast<double>(sub_edges.size())));
  const int steps = static_cast<int>(std::ceil(cfg.lc_step_factor * lnm * lnm)) + 10;

  // Dense local indexing for the walk.
  std::vector<int> local(g.n(), -1);
  for (int i = 0; i < nv; ++i) local[view.verts[i]] = i;

  std::optional<SubCut> best;
  Rational best_phi(1, 1);

  std::vector<double> p(nv), q(nv);
  std::vector<int> order(nv);
  std::vector<char> in_side(nv, 0);

  auto rng = make_rng(hash_combine(seed, 0x10c0));
  for (int s = 0; s < n_seeds; ++s) {
    // Degree-weighted start vertex.
    std::uniform_int_distribution<std::int64_t> pick(0, vol_total - 1);
    std::int64_t ticket = pick(rng);
    int start = view.verts[0];
    for (int v : view.verts) {
      ticket -= view.deg[v];
      if (ticket < 0) { start = v; break; }
    }

    std::fill(p.begin(), p.end(), 0.0);
    p[local[start]] = 1.0;

    for (int t = 0; t < steps; ++t) {
      // Lazy step: half stays, half spreads over incident edges.
      std::fill(q.begin(), q.end(), 0.0);
      for (int i = 0; i < nv; ++i) {
        if (p[i] <= 0.0) continue;
        int v = view.verts[i];
        q[i] += p[i] / 2.0;
        double share = p[i] / (2.0 * view.deg[v]);
        for (int e : view.inc[v]) q[local[g.edge(e).other(v)]] += share;
      }
      std::swap(p, q);

      if (t % 4 != 3 && t + 1 != steps) continue;

      // Sweep by probability over degree.
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ka = p[a] * view.deg[view.verts[b]];
        double kb = p[b] * view.deg[view.verts[a]];
        if (ka != kb) return ka > kb;
        return view.verts[a] < view.verts[b];
      });
      std::fill(in_side.begin(), in_side.end(), 0);
      std::int64_t crossing = 0, vol = 0;
      int best_prefix = -1;
      Rational best_here(1, 1);
      for (int idx = 0; idx + 1 < nv; ++idx) {
        int i = order[idx];
        int v = view.verts[i];
        in_side[i] = 1;
        vol += view.deg[v];
        for (int e : view.inc[v])
          crossing += in_side[local[g.edge(e).other(v)]] ? -1 : 1;
        std::int64_t denom = std::min(vol, vol_total - vol);
        if (denom <= 0) continue;
        Rational phi_here(crossing, denom);
        if (best_prefix < 0 || phi_here < best_here) {
          best_prefix = idx;
          best_here = phi_here;
        }
      }
      if (best_prefix >= 0 &&
          static_cast<double>(best_here.to_double()) <= target &&
          (!best || best_here < best_phi)) {
        SubCut cut;
        cut.side = VertexSet(g.n());
        for (int idx = 0; idx <= best_prefix; ++idx) cut.side.add(view.verts[order[idx]]);
        for (int e : sub_edges)
          if (cut.side.contains(g.edge(e).u) != cut.side.contains(g.edge(e).v)) {
            cut.crossing.push_back(e);
            ++cut.crossing_count;
          }
        best = std::move(cut);
        best_phi = best_here;
      }
    }
  }
  return best;
}

namespace {

struct WorkItem {
  std::vector<int> edges;
};

}  // namespace

BlackBoxOutput blackbox_partition(const Graph& g, const std::vector<int>& sub_edges,
                                  const DecompParams& params, std::uint64_t seed,
                                  const Config& cfg) {
  BlackBoxOutput out;
  out.e_s.assign(g.n(), {});
  sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
  int next_part_id = 1;

  SubView view(g, sub_edges);

  // Strip edges internal to the low-degree fringe, oriented toward the
  // larger id (acyclic by construction).
  std::vector<int> active;
  for (int e : sub_edges) {
    const Edge& ed = g.edge(e);
    if (view.deg[ed.u] <= params.n_gamma && view.deg[ed.v] <= params.n_gamma)
      out.e_s[std::min(ed.u, ed.v)].push_back(e);
    else
      active.push_back(e);
  }

  const double diam_threshold = params.diameter_threshold();

  auto emit_part = [&](std::vector<int> edges, PartCase pc) {
    Part part;
    part.id = next_part_id++;
    part.vertices = VertexSet(g.n());
    for (int e : edges) {
      part.vertices.add(g.edge(e).u);
      part.vertices.add(g.edge(e).v);
    }
    part.edges = std::move(edges);
    part.halt_case = pc;
    out.parts.push_back(std::move(part));
  };

  auto handle_cut = [&](const std::vector<int>& edges, const SubCut& cut) {
    std::vector<int> side_a, side_b;
    for (int e : edges) {
      bool cu = cut.side.contains(g.edge(e).u), cv = cut.side.contains(g.edge(e).v);
      if (cu != cv)
        out.e_r.push_back(e);
      else if (cu)
        side_a.push_back(e);
      else
        side_b.push_back(e);
    }
    if (!side_a.empty()) emit_part(std::move(side_a), PartCase::kRecurse);
    if (!side_b.empty()) emit_part(std::move(side_b), PartCase::kRecurse);
  };

  for (auto& comp : split_components(g, active)) {
    SubView cview(g, comp);
    int root = cview.verts.front();
    SubBfs cbfs(g, cview, root);
    formulas.charge(out.transcript, "broadcast", {{"D", static_cast<double>(cbfs.depth)}});

    if (static_cast<double>(cbfs.depth) >= diam_threshold) {
      // High diameter: sparse BFS-level cut, both sides recurse.
      SubCut cut = high_diameter_cut(g, comp, root, params);
      handle_cut(comp, cut);
      continue;
    }

    PeelResult peel = low_degree_peel(g, comp, params);
    formulas.charge(out.transcript, "low_degree_peel",
                    {{"D", static_cast<double>(cbfs.depth)},
                     {"removed", static_cast<double>(peel.removed_vertices)},
                     {"n_gamma", params.n_gamma}});
    for (int v = 0; v < g.n(); ++v)
      if (!peel.e_s[v].empty())
        out.e_s[v].insert(out.e_s[v].end(), peel.e_s[v].begin(), peel.e_s[v].end());

    for (auto& sub : split_components(g, peel.kept_edges)) {
      SubView sview(g, sub);
      int sroot = sview.verts.front();
      SubBfs sbfs(g, sview, sroot);
      if (static_cast<double>(sbfs.depth) >= diam_threshold) {
        SubCut cut = high_diameter_cut(g, sub, sroot, params);
        formulas.charge(out.transcript, "broadcast",
                        {{"D", static_cast<double>(sbfs.depth)}});
        handle_cut(sub, cut);
        continue;
      }
      auto cut = low_conductance_cut(g, sub, params.phi(), params,
                                     hash_combine(seed, out.parts.size() + 17), cfg);
      formulas.charge(out.transcript, "low_conductance_cut",
                      {{"D", static_cast<double>(sbfs.depth)},
                       {"n", static_cast<double>(params.n)},
                       {"rho", params.rho},
                       {"m", static_cast<double>(params.m)}});
      if (cut.has_value()) {
        handle_cut(sub, *cut);
      } else {
        emit_part(sub, PartCase::kHighConductance);
      }
    }
  }

  // Untouched vertices: touched by the input but in no part.
  out.untouched = VertexSet(g.n());
  {
    std::vector<char> in_part(g.n(), 0);
    for (const Part& part : out.parts)
      for (int v : part.vertices.to_vector()) in_part[v] = 1;
    for (int v : view.verts)
      if (!in_part[v]) out.untouched.add(v);
  }

  // C1: part vertex sets and the untouched set partition the input.
  {
    std::vector<int> owner(g.n(), -1);
    for (const Part& part : out.parts)
      for (int v : part.vertices.to_vector()) {
        if (owner[v] >= 0) throw invariant_error("C1", "vertex in two parts");
        owner[v] = part.id;
      }
  }
  // C2: for vertices that shed edges, shed count plus remaining degree
  // stays within n^gamma.
  {
    std::vector<std::int64_t> part_deg(g.n(), 0);
    for (const Part& part : out.parts)
      for (int e : part.edges) {
        ++part_deg[g.edge(e).u];
        ++part_deg[g.edge(e).v];
      }
    for (int v = 0; v < g.n(); ++v) {
      if (out.e_s[v].empty()) continue;
      if (static_cast<double>(out.e_s[v].size()) + static_cast<double>(part_deg[v]) >
          params.n_gamma + 1e-9)
        throw invariant_error("C2", "per-vertex shed bound exceeded");
    }
  }
  // C5: charging inequality against the final parts.
  {
    auto xlogx = [](double x) { return x > 1.0 ? x * std::log2(x) : 0.0; };
    double budget = xlogx(static_cast<double>(sub_edges.size()));
    for (const Part& part : out.parts) budget -= xlogx(static_cast<double>(part.edges.size()));
    budget /= 6.0 * params.n_rho * params.log2_m;
    if (static_cast<double>(out.e_r.size()) > budget + 1e-9)
      throw invariant_error("C5", "removed-edge charge exceeds the split budget");
  }
  return out;
}

Tripartition tripartition(const Graph& g, double gamma, double rho, std::uint64_t seed,
                          const Config& cfg) {
  Tripartition tp;
  tp.params = DecompParams::make(g, gamma, rho);
  tp.e_s.assign(g.n(), {});

  std::vector<int> all_edges(g.m());
  std::iota(all_edges.begin(), all_edges.end(), 0);

  const int depth_guard =
      static_cast<int>(std::ceil(std::pow(static_cast<double>(g.n()),
                                          1.0 - gamma))) + 8;

  std::deque<std::pair<std::vector<int>, int>> queue;  // (edges, depth)
  if (g.m() > 0) queue.push_back({all_edges, 0});
  std::uint64_t call = 0;

  while (!queue.empty()) {
    auto [edges, depth] = std::move(queue.front());
    queue.pop_front();
    if (depth > depth_guard)
      throw invariant_error("recursion-guard", "tripartition exceeded its depth bound");
    BlackBoxOutput bb =
        blackbox_partition(g, edges, tp.params, hash_combine(seed, ++call), cfg);
    tp.transcript.absorb(bb.transcript);
    for (int v = 0; v < g.n(); ++v)
      if (!bb.e_s[v].empty())
        tp.e_s[v].insert(tp.e_s[v].end(), bb.e_s[v].begin(), bb.e_s[v].end());
    tp.e_r.insert(tp.e_r.end(), bb.e_r.begin(), bb.e_r.end());
    for (Part& part : bb.parts) {
      if (part.halt_case == PartCase::kHighConductance)
        tp.e_h.insert(tp.e_h.end(), part.edges.begin(), part.edges.end());
      else
        queue.push_back({std::move(part.edges), depth + 1});
    }
  }

  std::sort(tp.e_h.begin(), tp.e_h.end());
  std::sort(tp.e_r.begin(), tp.e_r.end());
  tp.components = connected_components(g, tp.e_h);
  tp.transcript.declare_stage("tripartition", false);
  return tp;
}

TripartitionReport check_tripartition(const Graph& g, const Tripartition& tp) {
  TripartitionReport rep;
  const DecompParams& p = tp.params;

  // Exact partition of E.
  std::vector<int> count(g.m(), 0);
  for (int e : tp.e_h) ++count[e];
  for (int e : tp.e_r) ++count[e];
  for (const auto& es : tp.e_s)
    for (int e : es) ++count[e];
  rep.partition_exact =
      std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });

  rep.e_r_size = static_cast<std::int64_t>(tp.e_r.size());
  rep.e_r_limit = static_cast<double>(g.m()) / (6.0 * p.n_rho);
  rep.e_r_bound = static_cast<double>(rep.e_r_size) <= rep.e_r_limit + 1e-9;

  rep.e_s_per_vertex_bound = true;
  for (int v = 0; v < g.n(); ++v)
    if (static_cast<double>(tp.e_s[v].size()) > p.n_gamma + 1e-9)
      rep.e_s_per_vertex_bound = false;

  // Orientation acyclic: edge in e_s[v] points v -> other endpoint.
  {
    std::vector<int> indeg(g.n(), 0);
    std::vector<std::vector<int>> adj(g.n());
    for (int v = 0; v < g.n(); ++v)
      for (int e : tp.e_s[v]) {
        int u = g.edge(e).other(v);
        adj[v].push_back(u);
        ++indeg[u];
      }
    std::deque<int> q;
    for (int v = 0; v < g.n(); ++v)
      if (indeg[v] == 0) q.push_back(v);
    int seen = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      ++seen;
      for (int u : adj[v])
        if (--indeg[u] == 0) q.push_back(u);
    }
    rep.orientation_acyclic = seen == g.n();
  }

  // Every residual edge joins two different dense components.
  {
    std::vector<int> comp(g.n(), -1);
    for (std::size_t i = 0; i < tp.components.size(); ++i)
      for (int v : tp.components[i].to_vector()) comp[v] = static_cast<int>(i);
    rep.e_r_endpoints_separated = true;
    for (int e : tp.e_r) {
      int cu = comp[g.edge(e).u], cv = comp[g.edge(e).v];
      // A vertex with no dense edge counts as its own singleton component.
      if (cu == cv && cu != -1) rep.e_r_endpoints_separated = false;
    }
  }

  // Internal degree of every dense component stays above n^gamma / 2.
  {
    std::vector<std::int64_t> deg(g.n(), 0);
    for (int e : tp.e_h) {
      ++deg[g.edge(e).u];
      ++deg[g.edge(e).v];
    }
    rep.component_min_degree = true;
    for (const auto& c : tp.components)
      for (int v : c.to_vector())
        if (static_cast<double>(deg[v]) <= p.n_gamma / 2.0)
          rep.component_min_degree = false;
  }
  return rep;
}

}  // namespace congestcut::decomp
