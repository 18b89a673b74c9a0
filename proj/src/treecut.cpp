#include "congestcut/treecut.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "congestcut/oracle.hpp"
#include "congestcut/rng.hpp"

namespace congestcut::treecut {

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};

// Packing key: completion edges sort after all skeleton edges; within a
// tier, load per unit weight with edge id as the final tie.
struct PackKey {
  int tier;
  std::int64_t load;
  Weight w;
  int id;

  bool operator<(const PackKey& o) const {
    if (tier != o.tier) return tier < o.tier;
    __int128 lhs = static_cast<__int128>(load) * o.w;
    __int128 rhs = static_cast<__int128>(o.load) * w;
    if (lhs != rhs) return lhs < rhs;
    return id < o.id;
  }
};

std::vector<int> boruvka_min_tree(const Graph& g, const std::vector<PackKey>& key) {
  std::vector<int> picked;
  Dsu dsu(g.n());
  bool merged = true;
  while (merged) {
    merged = false;
    std::vector<int> best_edge;
    std::vector<int> slot(g.n(), -1);
    auto consider = [&](int root, int e) {
      if (slot[root] < 0) {
        slot[root] = static_cast<int>(best_edge.size());
        best_edge.push_back(e);
      } else if (key[e] < key[best_edge[slot[root]]]) {
        best_edge[slot[root]] = e;
      }
    };
    for (int e = 0; e < g.m(); ++e) {
      int ru = dsu.find(g.edge(e).u), rv = dsu.find(g.edge(e).v);
      if (ru == rv) continue;
      consider(ru, e);
      consider(rv, e);
    }
    for (int e : best_edge)
      if (dsu.unite(g.edge(e).u, g.edge(e).v)) {
        picked.push_back(e);
        merged = true;
      }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

TreePacking greedy_tree_packing(const Graph& g, int count) {
  if (count < 1) throw domain_error("tree packing needs count >= 1");
  if (!is_connected(g)) throw domain_error("tree packing needs a connected graph");
  TreePacking packing;
  packing.load.assign(g.m(), 0);
  std::vector<PackKey> key(g.m());
  for (int t = 0; t < count; ++t) {
    for (int e = 0; e < g.m(); ++e) key[e] = {0, packing.load[e], g.edge(e).w, e};
    std::vector<int> tree = boruvka_min_tree(g, key);
    for (int e : tree) ++packing.load[e];
    packing.tree_edges.push_back(std::move(tree));
  }
  return packing;
}

Skeleton skeleton_sample(const Graph& g, Weight lambda_estimate, std::uint64_t seed,
                         const Config& cfg) {
  if (lambda_estimate < 1) throw domain_error("skeleton needs lambda estimate >= 1");
  Skeleton s;
  double log_n = std::log2(std::max(2.0, static_cast<double>(g.n())));
  double target = cfg.c_skel * std::pow(log_n, 1.1);
  s.i = std::max(0, static_cast<int>(std::ceil(
                        std::log2(static_cast<double>(lambda_estimate) / target))));
  s.p = std::ldexp(1.0, -s.i);
  s.in_h.assign(g.m(), 0);
  s.h_weight.assign(g.m(), 0);
  if (s.i == 0) {
    for (int e = 0; e < g.m(); ++e) {
      s.in_h[e] = 1;
      s.h_weight[e] = g.edge(e).w;
    }
    return s;
  }
  auto rng = make_rng(hash_combine(seed, 0x5ce1));
  for (int e = 0; e < g.m(); ++e) {
    std::binomial_distribution<Weight> bin(g.edge(e).w, s.p);
    Weight kept = bin(rng);
    if (kept >= 1) {
      s.in_h[e] = 1;
      s.h_weight[e] = kept;
    }
  }
  return s;
}

TreeSet spanning_tree_set(const Graph& g, std::uint64_t seed, Weight lambda_estimate,
                          const Config& cfg) {
  if (!is_connected(g)) throw domain_error("spanning tree set needs a connected graph");
  TreeSet ts;
  ts.skeleton = skeleton_sample(g, lambda_estimate, seed, cfg);
  double log_n = std::log2(std::max(2.0, static_cast<double>(g.n())));
  int count = std::max(1, static_cast<int>(std::ceil(cfg.c_pack * std::pow(log_n, 2.2))));

  std::vector<std::int64_t> load(g.m(), 0);
  std::vector<PackKey> key(g.m());
  for (int t = 0; t < count; ++t) {
    for (int e = 0; e < g.m(); ++e) {
      int tier = ts.skeleton.in_h[e] ? 0 : 1;
      Weight w = ts.skeleton.in_h[e] ? ts.skeleton.h_weight[e] : 1;
      key[e] = {tier, load[e], w, e};
    }
    std::vector<int> edges = boruvka_min_tree(g, key);
    for (int e : edges) ++load[e];
    ts.trees.push_back(bfs(g, 0, edges));
    ts.tree_edges.push_back(std::move(edges));
  }
  return ts;
}

namespace {

/// Binary-lifting LCA on a rooted tree.
struct Lca {
  int levels;
  std::vector<std::vector<int>> up;  // up[k][v]
  const RootedTree* t;

  explicit Lca(const RootedTree& tree) : t(&tree) {
    int n = static_cast<int>(tree.parent.size());
    levels = 1;
    while ((1 << levels) <= std::max(1, tree.depth)) ++levels;
    up.assign(levels + 1, std::vector<int>(n, -1));
    for (int v = 0; v < n; ++v) up[0][v] = tree.parent[v];
    for (int k = 1; k <= levels; ++k)
      for (int v = 0; v < n; ++v)
        up[k][v] = up[k - 1][v] < 0 ? -1 : up[k - 1][up[k - 1][v]];
  }

  int query(int a, int b) const {
    if (t->is_ancestor(a, b)) return a;
    if (t->is_ancestor(b, a)) return b;
    for (int k = levels; k >= 0; --k)
      if (up[k][a] >= 0 && !t->is_ancestor(up[k][a], b)) a = up[k][a];
    return up[0][a];
  }
};

std::vector<Weight> subtree_sums(const RootedTree& t, std::vector<Weight> delta) {
  // Reverse BFS order: children accumulate into parents.
  for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
    int v = *it;
    if (t.parent[v] >= 0) delta[t.parent[v]] += delta[v];
  }
  return delta;
}

}  // namespace

std::vector<Weight> one_respect_values(const Graph& g, const RootedTree& t) {
  if (t.size() != g.n()) throw domain_error("tree must span the graph");
  Lca lca(t);
  std::vector<Weight> delta(g.n(), 0);
  for (const Edge& e : g.edges()) {
    delta[e.u] += e.w;
    delta[e.v] += e.w;
    delta[lca.query(e.u, e.v)] -= 2 * e.w;
  }
  return subtree_sums(t, std::move(delta));
}

std::vector<Weight> cross_values(const Graph& g, const RootedTree& t, int u) {
  // Atomic terms: a_x = total weight from x into desc(u), resolved by
  // ancestor tests on x's neighbors.
  std::vector<Weight> a(g.n(), 0);
  for (int x = 0; x < g.n(); ++x) {
    bool u_above_x = t.is_ancestor(u, x);
    Weight sum = 0;
    for (int e : g.incident(x)) {
      int y = g.edge(e).other(x);
      bool y_in_desc_u = t.is_ancestor(u, y);
      if (u_above_x ? !y_in_desc_u : y_in_desc_u) sum += g.edge(e).w;
    }
    a[x] = sum;
  }
  return subtree_sums(t, std::move(a));
}

std::optional<TwoRespectResult> min_2respect(const Graph& g, const RootedTree& t) {
  if (t.size() != g.n()) throw domain_error("tree must span the graph");
  const int n = g.n();
  if (n < 2) return std::nullopt;

  TwoRespectResult best;
  bool found = false;
  auto better = [&](Weight value, bool pair, int u, int v) {
    // Order: value, singletons before pairs, then the vertex ids.
    auto key = [&](Weight val, bool p, int a, int b) {
      return std::tuple(val, p ? 1 : 0, a, b);
    };
    int a = pair ? std::min(u, v) : v;
    int b = pair ? std::max(u, v) : -1;
    if (!found ||
        key(value, pair, a, b) < key(best.value, best.is_pair,
                                     best.is_pair ? std::min(best.u, best.v) : best.v,
                                     best.is_pair ? std::max(best.u, best.v) : -1)) {
      best.value = value;
      best.is_pair = pair;
      if (pair) {
        best.u = a;
        best.v = b;
      } else {
        best.u = -1;
        best.v = v;
      }
      found = true;
    }
  };

  std::vector<Weight> c1 = one_respect_values(g, t);
  for (int v = 0; v < n; ++v)
    if (v != t.root) better(c1[v], false, -1, v);

  for (int u = 0; u < n; ++u) {
    if (u == t.root) continue;
    std::vector<Weight> s = cross_values(g, t, u);
    for (int v = 0; v < n; ++v) {
      if (v == t.root || v == u || t.is_ancestor(v, u)) continue;
      better(c1[v] + c1[u] - 2 * s[v], true, u, v);
    }
  }
  if (!found) return std::nullopt;

  best.c_desc = c1;
  if (best.is_pair) {
    // Recover the winner's cross term for the record.
    std::vector<Weight> s = cross_values(g, t, best.u);
    best.cross = s[best.v];
  }

  // The reported value must be reproducible from scratch.
  Weight direct = cut_weight(g, two_respect_side(g, t, best));
  if (direct != best.value)
    throw invariant_error("two-respect", "table value disagrees with a direct recount");
  return best;
}

VertexSet two_respect_side(const Graph& g, const RootedTree& t, const TwoRespectResult& r) {
  VertexSet side(g.n());
  for (int x = 0; x < g.n(); ++x) {
    bool in_v = t.is_ancestor(r.v, x);
    bool in_u = r.is_pair && t.is_ancestor(r.u, x);
    if (in_v != in_u) side.add(x);
  }
  return side;
}

std::vector<int> recover_cut_edges(const Graph& g, const RootedTree& t,
                                   const TwoRespectResult& r) {
  std::vector<int> out;
  auto in_side = [&](int x) {
    bool in_v = t.is_ancestor(r.v, x);
    bool in_u = r.is_pair && t.is_ancestor(r.u, x);
    return in_v != in_u;
  };
  for (int e = 0; e < g.m(); ++e)
    if (in_side(g.edge(e).u) != in_side(g.edge(e).v)) out.push_back(e);
  return out;
}

ExactResult min_cut_exact(const Graph& g, std::uint64_t seed, const Config& cfg) {
  if (!is_connected(g)) throw domain_error("exact min cut needs a connected graph");
  ExactResult res;
  sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
  double D = static_cast<double>(eccentricity(g, 0));

  Weight lambda_est = oracle::stoer_wagner(g).value;
  formulas.charge(res.transcript, "lambda_estimate",
                  {{"n", static_cast<double>(g.n())}, {"D", D}, {"eps", 0.5}});
  res.transcript.declare_stage("mincut:lambda_estimate", false);

  TreeSet ts = spanning_tree_set(g, seed, std::max<Weight>(1, lambda_est), cfg);
  res.tree_count = static_cast<int>(ts.trees.size());
  res.p_skeleton = ts.skeleton.p;

  std::optional<TwoRespectResult> best;
  for (int i = 0; i < res.tree_count; ++i) {
    auto r = min_2respect(g, ts.trees[i]);
    formulas.charge(res.transcript, "two_respect_tree",
                    {{"depth", static_cast<double>(ts.trees[i].depth)},
                     {"n", static_cast<double>(g.n())},
                     {"D", D}});
    if (!r) continue;
    if (!best || r->value < best->value) {
      best = *r;
      res.winning_tree = i;
    }
  }
  res.transcript.declare_stage("mincut:two_respect", false);
  if (!best) throw domain_error("no candidate cut found");

  formulas.charge(res.transcript, "broadcast", {{"D", D}});  // edge recovery
  res.cut = make_cut_result(g, two_respect_side(g, ts.trees[res.winning_tree], *best));
  if (res.cut.value != best->value)
    throw invariant_error("two-respect", "recovered cut value mismatch");
  return res;
}

Mapping build_mapping(const Graph& g, const msgc::ContractedGraph& cg,
                      const RootedTree& tbar) {
  Mapping map;
  map.tree_depth = tbar.depth;

  for (int s = 0; s < cg.graph.n(); ++s) {
    int ci = cg.core_cluster[s];
    if (ci < 0) continue;
    if (cg.back_map[s].size() < 2) continue;  // physical vertex, routes directly
    const VertexSet& members = cg.clusters[ci].second;

    int leader;
    if (s == tbar.root) {
      leader = cg.back_map[s].to_vector().front();
    } else {
      int cg_edge = tbar.parent_edge[s];
      const Edge& rep = g.edge(cg.rep_edge[cg_edge]);
      leader = cg.map[rep.u] == s ? rep.u : rep.v;
    }

    std::vector<int> cluster_edges;
    for (int v : members.to_vector())
      for (int e : g.incident(v)) {
        const Edge& ed = g.edge(e);
        if (ed.u == v && members.contains(ed.v)) cluster_edges.push_back(e);
      }
    RootedTree ct = bfs(g, leader, cluster_edges);
    if (ct.size() != members.size())
      throw invariant_error("mapping", "cluster subgraph is disconnected");
    for (int v : ct.order)
      if (v != ct.root) map.edges.push_back(ct.parent_edge[v]);
    map.total_cluster_depth += ct.depth;
    map.cluster_trees.push_back(std::move(ct));
    map.mapped_clusters.push_back(ci);
    map.leader.push_back(leader);
  }

  for (int s : tbar.order)
    if (s != tbar.root) map.edges.push_back(cg.rep_edge[tbar.parent_edge[s]]);
  return map;
}

ExactResult min_cut_contracted(const Graph& g, const msgc::ContractedGraph& cg,
                               std::uint64_t seed, const Config& cfg) {
  ExactResult res;
  sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
  double D = static_cast<double>(eccentricity(g, 0));

  // Trivial cuts are not preserved by the contraction; the minimum
  // weighted degree covers them.
  Weight best_degree = g.weighted_degree(0);
  int best_degree_vertex = 0;
  for (int v = 1; v < g.n(); ++v) {
    Weight d = g.weighted_degree(v);
    if (d < best_degree) {
      best_degree = d;
      best_degree_vertex = v;
    }
  }

  std::optional<VertexSet> tree_side;
  Weight tree_value = 0;
  if (cg.graph.n() >= 2) {
    Weight lambda_est = oracle::stoer_wagner(cg.graph).value;
    TreeSet ts = spanning_tree_set(cg.graph, seed, std::max<Weight>(1, lambda_est), cfg);
    res.tree_count = static_cast<int>(ts.trees.size());
    res.p_skeleton = ts.skeleton.p;
    std::optional<TwoRespectResult> best;
    for (int i = 0; i < res.tree_count; ++i) {
      auto r = min_2respect(cg.graph, ts.trees[i]);
      Mapping overlay = build_mapping(g, cg, ts.trees[i]);
      formulas.charge(res.transcript, "two_respect_tree",
                      {{"depth", static_cast<double>(overlay.tree_depth +
                                                     overlay.total_cluster_depth)},
                       {"n", static_cast<double>(cg.graph.n())},
                       {"D", D}});
      if (!r) continue;
      if (!best || r->value < best->value) {
        best = *r;
        res.winning_tree = i;
      }
    }
    res.transcript.declare_stage("mincut:two_respect_contracted", false);
    if (best) {
      VertexSet super_side = two_respect_side(cg.graph, ts.trees[res.winning_tree], *best);
      VertexSet side(g.n());
      for (int s : super_side.to_vector())
        for (int v : cg.back_map[s].to_vector()) side.add(v);
      tree_side = side;
      tree_value = best->value;
    }
  }

  formulas.charge(res.transcript, "broadcast", {{"D", D}});
  if (tree_side && tree_value <= best_degree) {
    res.cut = make_cut_result(g, *tree_side);
    if (res.cut.value != tree_value)
      throw invariant_error("contracted-cut",
                            "contracted cut value disagrees with the original graph");
  } else {
    VertexSet side(g.n());
    side.add(best_degree_vertex);
    res.cut = make_cut_result(g, side);
  }
  return res;
}

// ---- simulated validation path ------------------------------------------

namespace {

/// Pipelined exchange of ancestor lists across every graph edge: one word
/// per round, list length = level + 1.
class AncExchangeProgram : public sim::NodeProgram {
 public:
  AncExchangeProgram(std::vector<std::int64_t> own, int depth,
                     std::vector<std::vector<std::int64_t>>* out)
      : own_(std::move(own)), depth_(depth), out_(out) {}

  void init(sim::NodeContext& ctx) override {
    out_->assign(ctx.port_count(), {});
    if (depth_ == 0) ctx.halt();
  }

  void on_round(sim::NodeContext& ctx, const sim::Inbox& inbox) override {
    std::int64_t r = ctx.round();
    for (int pi = 0; pi < ctx.port_count(); ++pi)
      if (inbox[pi]) (*out_)[pi].push_back(inbox[pi]->words.at(0));
    if (r <= static_cast<std::int64_t>(own_.size()))
      for (int pi = 0; pi < ctx.port_count(); ++pi)
        ctx.send(pi, sim::Message(own_[r - 1]));
    // The deepest neighbor list lands one round after its last send.
    if (r >= depth_ + 2) ctx.halt();
  }

 private:
  std::vector<std::int64_t> own_;
  int depth_;
  std::vector<std::vector<std::int64_t>>* out_;
};

}  // namespace

SimValues one_respect_values_sim(const Graph& g, const RootedTree& t, const Config& cfg) {
  sim::RunOptions opt;
  opt.bandwidth_words = cfg.bandwidth_words;

  SimValues res;
  // Ancestor sets by downcast of ids.
  auto down = sim::downcast(g, t, [&] {
    std::vector<std::int64_t> ids(g.n());
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
  }(), opt);
  res.transcript.absorb(down.transcript);

  // Each node ships its ancestor list to every neighbor, one id per round.
  std::vector<std::vector<std::vector<std::int64_t>>> neighbor_anc(g.n());
  {
    std::vector<std::unique_ptr<sim::NodeProgram>> programs;
    for (int v = 0; v < g.n(); ++v) {
      std::vector<std::int64_t> own;
      for (int a : t.ancestors(v)) own.push_back(a);
      programs.push_back(
          std::make_unique<AncExchangeProgram>(std::move(own), t.depth, &neighbor_anc[v]));
    }
    sim::Transcript tr = sim::run(g, std::move(programs), opt);
    tr.declare_stage("anc_exchange", true);
    res.transcript.absorb(tr);
  }

  // Local atomic terms from the exchanged lists, then the subtree-sum
  // pipeline. g(v, x) = weight from x to neighbors outside desc(v).
  auto g_fn = [&](int v, int x) -> std::int64_t {
    Weight sum = 0;
    for (int pi = 0; pi < static_cast<int>(g.incident(x).size()); ++pi) {
      int e = g.incident(x)[pi];
      const auto& anc_list = neighbor_anc[x][pi];
      bool v_above = std::find(anc_list.begin(), anc_list.end(), v) != anc_list.end();
      if (!v_above) sum += g.edge(e).w;
    }
    return sum;
  };
  auto agg = sim::aggregate_descendant_sums(g, t, g_fn, opt);
  res.transcript.absorb(agg.transcript);
  res.values = agg.f;
  return res;
}

SimTwoRespect min_2respect_sim(const Graph& g, const RootedTree& t, const Config& cfg) {
  SimTwoRespect res;
  SimValues ones = one_respect_values_sim(g, t, cfg);
  res.transcript.absorb(ones.transcript);

  sim::RunOptions opt;
  opt.bandwidth_words = cfg.bandwidth_words;

  // One convergecast train per candidate u: f_u(v) = C(desc(u), desc(v)).
  std::vector<int> candidates;
  for (int u = 0; u < g.n(); ++u)
    if (u != t.root) candidates.push_back(u);
  std::vector<std::vector<std::int64_t>> g_values;
  g_values.reserve(candidates.size());
  for (int u : candidates) {
    std::vector<std::int64_t> a(g.n(), 0);
    for (int x = 0; x < g.n(); ++x) {
      bool u_above_x = t.is_ancestor(u, x);
      Weight sum = 0;
      for (int e : g.incident(x)) {
        int y = g.edge(e).other(x);
        bool y_in = t.is_ancestor(u, y);
        if (u_above_x ? !y_in : y_in) sum += g.edge(e).w;
      }
      a[x] = sum;
    }
    g_values.push_back(std::move(a));
  }
  auto conv = sim::convergecast_subtree(g, t, g_values, opt);
  res.transcript.absorb(conv.transcript);

  // Candidate table broadcast is standard; charged, evaluated centrally.
  sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
  formulas.charge(res.transcript, "broadcast",
                  {{"D", static_cast<double>(g.n()) + t.depth}});

  bool found = false;
  Weight best = 0;
  for (int v = 0; v < g.n(); ++v) {
    if (v == t.root) continue;
    if (!found || ones.values[v] < best) {
      best = ones.values[v];
      found = true;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      int u = candidates[i];
      if (u == v || t.is_ancestor(v, u)) continue;
      Weight cand = ones.values[v] + ones.values[u] - 2 * conv.f[i][v];
      if (!found || cand < best) {
        best = cand;
        found = true;
      }
    }
  }
  if (!found) throw domain_error("no candidate cut in simulated minimisation");
  res.value = best;
  return res;
}

}  // namespace congestcut::treecut
