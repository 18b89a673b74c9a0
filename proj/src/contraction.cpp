#include "congestcut/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "congestcut/certificate.hpp"
#include "congestcut/oracle.hpp"
#include "congestcut/rng.hpp"

namespace congestcut::msgc {

std::vector<std::pair<int, VertexSet>> Clustering::groups() const {
  std::map<int, std::vector<int>> by_id;
  for (int v = 0; v < n; ++v) by_id[group_id[v]].push_back(v);
  std::vector<std::pair<int, VertexSet>> out;
  out.reserve(by_id.size());
  for (auto& [id, members] : by_id) out.emplace_back(id, VertexSet::of(n, members));
  return out;
}

std::vector<std::pair<int, VertexSet>> Clustering::nontrivial_groups() const {
  auto all = groups();
  std::erase_if(all, [](const auto& g) { return g.second.size() < 2; });
  return all;
}

VertexSet Clustering::core_of(const VertexSet& group) const {
  VertexSet core(n);
  if (group.size() < 2) return core;  // trivial groups have no core
  for (int v : group.to_vector())
    if (!regular[v]) core.add(v);
  return core;
}

Clustering init_groups_from_components(const Graph& g, const decomp::Tripartition& tp) {
  Clustering c;
  c.n = g.n();
  c.group_id.resize(g.n());
  c.regular.assign(g.n(), 0);
  std::iota(c.group_id.begin(), c.group_id.end(), 0);  // singletons by default
  for (const VertexSet& comp : tp.components) {
    auto members = comp.to_vector();
    int id = members.back();  // largest member id
    for (int v : members) c.group_id[v] = id;
  }
  return c;
}

namespace {

std::vector<int> group_sizes(const Graph& g, const std::vector<int>& group_id) {
  std::vector<int> size(2 * g.n(), 0);
  for (int v = 0; v < g.n(); ++v) ++size[group_id[v]];
  return size;
}

int good_count(const Graph& g, const std::vector<int>& group_id, int v) {
  int good = 0;
  for (int e : g.incident(v))
    if (group_id[g.edge(e).other(v)] == group_id[v]) ++good;
  return good;
}

}  // namespace

Clustering trim(const Graph& g, const Clustering& c, int* trimmed_count) {
  Clustering out = c;
  auto size = group_sizes(g, out.group_id);
  int trimmed = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    // Batch per iteration: decisions against the previous state.
    std::vector<int> leaving;
    for (int v = 0; v < g.n(); ++v) {
      if (size[out.group_id[v]] < 2) continue;  // singleton relabels are no-ops
      if (5LL * good_count(g, out.group_id, v) < 2LL * g.degree(v)) leaving.push_back(v);
    }
    for (int v : leaving) {
      --size[out.group_id[v]];
      out.group_id[v] = g.n() + v;
      ++size[out.group_id[v]];
      ++trimmed;
      changed = true;
    }
  }
  out.trimmed_count = c.trimmed_count + trimmed;
  if (trimmed_count) *trimmed_count = trimmed;
  return out;
}

Clustering shave(const Graph& g, const Clustering& c) {
  Clustering out = c;
  auto size = group_sizes(g, out.group_id);
  for (int v = 0; v < g.n(); ++v) {
    if (size[out.group_id[v]] < 2) {
      out.regular[v] = 1;  // trivial groups are entirely regular
      continue;
    }
    int good = good_count(g, out.group_id, v);
    out.regular[v] = 2LL * good <= static_cast<long long>(g.degree(v)) + 2 ? 1 : 0;
  }
  return out;
}

ContractedGraph contract_cores(const Graph& g, const Clustering& c) {
  ContractedGraph cg;
  const int n = g.n();

  // Union core members per nontrivial group.
  std::vector<int> dsu(n);
  std::iota(dsu.begin(), dsu.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };

  auto nontrivial = c.nontrivial_groups();
  std::vector<VertexSet> cores;
  cores.reserve(nontrivial.size());
  for (auto& [id, members] : nontrivial) {
    VertexSet core = c.core_of(members);
    cores.push_back(core);
    auto cv = core.to_vector();
    for (std::size_t i = 1; i < cv.size(); ++i) dsu[find(cv[i])] = find(cv[0]);
  }

  // Renumber super-vertices by smallest original member.
  std::vector<int> root_of(n);
  for (int v = 0; v < n; ++v) root_of[v] = find(v);
  std::vector<int> smallest(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = root_of[v];
    if (smallest[r] < 0 || v < smallest[r]) smallest[r] = v;
  }
  std::vector<int> reps;
  for (int v = 0; v < n; ++v)
    if (smallest[root_of[v]] == v) reps.push_back(v);
  std::sort(reps.begin(), reps.end());
  std::vector<int> super_of_root(n, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) super_of_root[root_of[reps[i]]] =
      static_cast<int>(i);

  cg.map.resize(n);
  cg.back_map.assign(reps.size(), VertexSet(n));
  for (int v = 0; v < n; ++v) {
    cg.map[v] = super_of_root[root_of[v]];
    cg.back_map[cg.map[v]].add(v);
  }

  // Bundle surviving edges; keep the smallest member edge id per bundle.
  std::map<std::pair<int, int>, std::pair<Weight, int>> bundles;
  for (int e = 0; e < g.m(); ++e) {
    int a = cg.map[g.edge(e).u], b = cg.map[g.edge(e).v];
    if (a == b) continue;  // core-internal edges are deleted
    if (a > b) std::swap(a, b);
    auto [it, fresh] = bundles.try_emplace({a, b}, std::make_pair(g.edge(e).w, e));
    if (!fresh) {
      it->second.first += g.edge(e).w;
      it->second.second = std::min(it->second.second, e);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(bundles.size());
  for (auto& [key, val] : bundles) {
    edges.push_back({key.first, key.second, val.first});
    cg.rep_edge.push_back(val.second);
  }
  cg.graph = Graph(static_cast<int>(reps.size()), std::move(edges), true);

  // Cluster records and their induced diameters.
  cg.core_cluster.assign(reps.size(), -1);
  for (std::size_t i = 0; i < nontrivial.size(); ++i) {
    cg.clusters.push_back(nontrivial[i]);
    auto core_members = cores[i].to_vector();
    if (!core_members.empty()) cg.core_cluster[cg.map[core_members[0]]] =
        static_cast<int>(i);
    // Diameter of the induced subgraph on the whole cluster.
    auto members = nontrivial[i].second.to_vector();
    std::vector<int> cluster_edges;
    for (int v : members)
      for (int e : g.incident(v)) {
        const Edge& ed = g.edge(e);
        if (ed.u == v && nontrivial[i].second.contains(ed.v)) cluster_edges.push_back(e);
      }
    int diam = 0;
    bool connected = true;
    for (int v : members) {
      RootedTree t = bfs(g, v, cluster_edges);
      if (t.size() != static_cast<int>(members.size())) { connected = false; break; }
      diam = std::max(diam, t.depth);
    }
    cg.cluster_diameter.push_back(connected ? diam : -1);
  }
  return cg;
}

MsgcResult build_msgc(const Graph& g, double eps, std::uint64_t seed, const Config& cfg) {
  if (g.weighted()) throw domain_error("contraction pipeline expects an unweighted graph");
  if (!is_connected(g)) throw domain_error("contraction pipeline expects a connected graph");
  if (!(eps > 0.0 && eps < 0.5)) throw domain_error("eps must lie in (0, 1/2)");

  MsgcResult res;
  res.eps = eps;
  sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);

  auto cert = cert::certificate_pipeline(g, eps / 44.0, hash_combine(seed, 1), cfg);
  res.transcript.absorb(cert.transcript);
  res.certificate_graph = cert::certificate_subgraph(g, cert.certificate);

  res.tripartition =
      decomp::tripartition(res.certificate_graph, eps, eps / 11.0, hash_combine(seed, 2), cfg);
  res.transcript.absorb(res.tripartition.transcript);

  // Component labeling: one flood per dense component; the component size
  // upper-bounds its diameter for the charge.
  double max_comp_diam = 0.0;
  for (const auto& comp : res.tripartition.components)
    max_comp_diam = std::max(max_comp_diam, static_cast<double>(comp.size()));
  formulas.charge(res.transcript, "broadcast", {{"D", max_comp_diam}});
  res.transcript.declare_stage("msgc:group_labels", false);

  Clustering groups = init_groups_from_components(res.certificate_graph, res.tripartition);
  int trimmed = 0;
  Clustering trimmed_groups = trim(res.certificate_graph, groups, &trimmed);
  res.clustering = shave(res.certificate_graph, trimmed_groups);

  double D = static_cast<double>(eccentricity(g, 0));
  formulas.charge(res.transcript, "trim_shave",
                  {{"trimmed", static_cast<double>(trimmed)}, {"D", D}});
  res.transcript.declare_stage("msgc:trim_shave", false);

  res.contracted = contract_cores(res.certificate_graph, res.clustering);
  res.contracted.delta_warning =
      static_cast<double>(res.certificate_graph.min_degree()) <
      std::pow(static_cast<double>(g.n()), 2.0 * eps);
  return res;
}

PreservationReport validate_min_cut_preservation(const Graph& g, const Clustering& c) {
  PreservationReport rep;
  auto enumeration = oracle::enumerate_min_cuts(g);
  auto nontrivial = c.nontrivial_groups();
  std::int64_t delta = g.min_degree();
  std::int64_t dichotomy_floor = (delta + 99) / 100;
  rep.dichotomy_enforced = dichotomy_floor > 2;

  for (const VertexSet& side : enumeration.cuts) {
    int a = side.size(), b = g.n() - a;
    bool trivial = a == 1 || b == 1;
    ++rep.checked_cuts;
    if (!trivial) rep.vacuous = false;
    for (auto& [id, members] : nontrivial) {
      int in_side = 0;
      for (int v : members.to_vector())
        if (side.contains(v)) ++in_side;
      int out_side = members.size() - in_side;
      if (!trivial) {
        VertexSet core = c.core_of(members);
        int core_in = 0, core_out = 0;
        for (int v : core.to_vector()) side.contains(v) ? ++core_in : ++core_out;
        if (core_in > 0 && core_out > 0) ++rep.core_split_violations;
      }
      if (in_side > 2 && out_side > 2) ++rep.small_side_violations;
      if (rep.dichotomy_enforced && in_side >= dichotomy_floor && out_side >= dichotomy_floor)
        ++rep.dichotomy_violations;
    }
  }
  return rep;
}

StructureReport structure_report(const Graph& cert_graph, const Clustering& c,
                                 const ContractedGraph& cg, double eps) {
  StructureReport rep;
  rep.delta_used = cert_graph.min_degree();
  rep.trimmed_count = c.trimmed_count;
  for (int v = 0; v < cert_graph.n(); ++v)
    if (c.regular[v]) ++rep.regular_count;
  rep.nontrivial_cluster_count = static_cast<int>(cg.clusters.size());
  for (int d : cg.cluster_diameter) rep.sum_cluster_diameters += std::max(d, 0);

  rep.cluster_count_limit =
      rep.delta_used > 0 ? 3.0 * cert_graph.n() / static_cast<double>(rep.delta_used) : 0.0;
  rep.cluster_size_floor = 2.0 * static_cast<double>(rep.delta_used) / 5.0;
  rep.cluster_count_ok =
      rep.delta_used == 0 ||
      static_cast<double>(rep.nontrivial_cluster_count) <= rep.cluster_count_limit + 1e-9;
  rep.cluster_size_ok = true;
  for (const auto& [id, members] : cg.clusters)
    if (static_cast<double>(members.size()) < rep.cluster_size_floor - 1e-9)
      rep.cluster_size_ok = false;
  rep.diameter_target = std::pow(static_cast<double>(cert_graph.n()), 1.0 - eps / 20.0);
  return rep;
}

}  // namespace congestcut::msgc
