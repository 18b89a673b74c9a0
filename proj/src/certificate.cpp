#include "congestcut/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "congestcut/oracle.hpp"
#include "congestcut/rng.hpp"

namespace congestcut::cert {

CertificateParams make_params_ln(double ln_n, int k, double eps, double tau) {
  if (!(eps > 0.0 && eps < 1.0)) throw domain_error("eps must lie in (0,1)");
  if (tau < 3.0) throw domain_error("tau must be at least 3");
  if (k < 1) throw domain_error("k must be at least 1");
  if (ln_n <= 0.0) throw domain_error("ln n must be positive");
  CertificateParams p;
  p.k = k;
  p.eps = eps;
  p.tau = tau;
  p.ln_n = ln_n;
  p.p = tau * ln_n / (eps * eps * k);
  // 1/p rounded; a fractional class count is folded into tau's slack.
  p.c = std::max(1, static_cast<int>(std::llround(1.0 / p.p)));
  p.forests_per_class =
      std::max(1, static_cast<int>(std::ceil((1.0 + eps) * tau * ln_n / (eps * eps))));
  return p;
}

CertificateParams make_params(int n, int k, double eps, double tau) {
  if (n < 2) throw domain_error("need n >= 2");
  return make_params_ln(std::log(static_cast<double>(n)), k, eps, tau);
}

EdgeColoring color_edges(const Graph& g, int c, std::uint64_t seed) {
  EdgeColoring col;
  col.c = c;
  col.seed = seed;
  col.color.resize(g.m());
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    int hi = std::max(ed.u, ed.v), lo = std::min(ed.u, ed.v);
    col.color[e] = uniform_color(node_round_word(seed, hi, 0, lo), c);
  }
  return col;
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};

// Boruvka minimum spanning forest over the listed edges; keys compared as
// (weight, edge id), so the forest is unique and deterministic.
std::vector<int> boruvka_forest(int n, const Graph& g, const std::vector<int>& edge_ids,
                                const std::vector<Weight>* weight_override) {
  auto key_of = [&](int e) -> std::pair<Weight, int> {
    Weight w = weight_override ? (*weight_override)[e] : g.edge(e).w;
    return {w, e};
  };
  std::vector<int> picked;
  Dsu dsu(n);
  int components_with_edges = 1;
  while (components_with_edges > 0) {
    std::vector<std::pair<std::pair<Weight, int>, int>> best;  // per root: (key, edge)
    std::vector<int> root_slot(n, -1);
    auto consider = [&](int root, int e) {
      if (root_slot[root] < 0) {
        root_slot[root] = static_cast<int>(best.size());
        best.push_back({key_of(e), e});
        return;
      }
      auto& entry = best[root_slot[root]];
      auto k = key_of(e);
      if (k < entry.first) entry = {k, e};
    };
    for (int e : edge_ids) {
      int ru = dsu.find(g.edge(e).u), rv = dsu.find(g.edge(e).v);
      if (ru == rv) continue;
      consider(ru, e);
      consider(rv, e);
    }
    components_with_edges = 0;
    std::sort(best.begin(), best.end());
    for (auto& [k, e] : best) {
      if (dsu.unite(g.edge(e).u, g.edge(e).v)) {
        picked.push_back(e);
        ++components_with_edges;
      }
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

std::vector<std::vector<int>> c_slot_mst(const Graph& g,
                                         const std::vector<std::vector<Weight>>& weights) {
  if (weights.empty()) throw domain_error("c_slot_mst needs at least one slot");
  std::vector<std::vector<int>> forests;
  forests.reserve(weights.size());
  for (const auto& w : weights) {
    std::vector<int> finite;
    for (int e = 0; e < g.m(); ++e)
      if (w[e] != kInfWeight) finite.push_back(e);
    std::vector<Weight> wcopy = w;
    forests.push_back(boruvka_forest(g.n(), g, finite, &wcopy));
  }
  return forests;
}

Certificate certificate_sequential(const Graph& g, const CertificateParams& params,
                                   std::uint64_t seed) {
  EdgeColoring col = color_edges(g, params.c, seed);
  Certificate cert;
  cert.forests.assign(params.c, {});
  std::vector<char> kept(g.m(), 0);
  for (int cls = 1; cls <= params.c; ++cls) {
    std::vector<int> residual;
    for (int e = 0; e < g.m(); ++e)
      if (col.color[e] == cls) residual.push_back(e);
    for (int it = 0; it < params.forests_per_class && !residual.empty(); ++it) {
      std::vector<int> forest = boruvka_forest(g.n(), g, residual, nullptr);
      if (forest.empty()) break;
      cert.forests[cls - 1].push_back(forest);
      std::vector<char> used(g.m(), 0);
      for (int e : forest) {
        used[e] = 1;
        kept[e] = 1;
      }
      std::erase_if(residual, [&](int e) { return used[e]; });
    }
  }
  for (int e = 0; e < g.m(); ++e)
    if (kept[e]) cert.edges.push_back(e);
  return cert;
}

DistCertificateResult certificate_distributed(const Graph& g, const CertificateParams& params,
                                              std::uint64_t seed, const Config& cfg) {
  DistCertificateResult out;
  sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
  double D = g.n() > 0 ? static_cast<double>(eccentricity(g, 0)) : 0.0;

  // Phase 1: leader broadcast of c, then local coloring announced by the
  // larger-id endpoint of each edge.
  formulas.charge(out.transcript, "broadcast", {{"D", D}});
  out.transcript.declare_stage("certificate:coloring", false);
  EdgeColoring col = color_edges(g, params.c, seed);

  // Phase 2: weight slots W_i(e) = 1 iff color(e) = i else infinity;
  // selected MST edges join E' and are reweighted to infinity.
  std::vector<std::vector<Weight>> slots(params.c, std::vector<Weight>(g.m(), kInfWeight));
  for (int e = 0; e < g.m(); ++e) slots[col.color[e] - 1][e] = 1;

  Certificate cert;
  cert.forests.assign(params.c, {});
  std::vector<char> kept(g.m(), 0);
  for (int it = 0; it < params.forests_per_class; ++it) {
    bool any_finite = false;
    for (const auto& w : slots)
      for (int e = 0; e < g.m(); ++e)
        if (w[e] != kInfWeight) { any_finite = true; break; }
    if (!any_finite) break;  // classes exhausted; later iterations are empty
    auto forests = c_slot_mst(g, slots);
    for (int cls = 0; cls < params.c; ++cls) {
      std::vector<int> selected;
      for (int e : forests[cls]) {
        if (slots[cls][e] != kInfWeight) {
          selected.push_back(e);
          kept[e] = 1;
          slots[cls][e] = kInfWeight;
        }
      }
      if (!selected.empty()) cert.forests[cls].push_back(std::move(selected));
    }
  }
  // The protocol runs all iterations; the charge covers them.
  formulas.charge(out.transcript, "c_slot_mst",
                  {{"D", D},
                   {"n", static_cast<double>(g.n())},
                   {"l", static_cast<double>(params.c)}});
  auto& call = out.transcript.charges.back();
  call.rounds *= params.forests_per_class;
  call.inputs["iterations"] = params.forests_per_class;
  out.transcript.declare_stage("certificate:c_slot_mst", false);

  for (int e = 0; e < g.m(); ++e)
    if (kept[e]) cert.edges.push_back(e);
  out.certificate = std::move(cert);
  return out;
}

ConcentrationStats sampling_concentration_check(const Graph& g, int k, double eps, double tau,
                                                int trials, std::uint64_t seed) {
  if (g.n() > 24) throw capacity_error("concentration check limited to n <= 24");
  double p = std::min(1.0, tau * std::log(static_cast<double>(g.n())) / (eps * eps * k));
  ConcentrationStats stats;

  // All bipartitions, vertex 0 fixed.
  std::vector<std::vector<int>> cuts;  // edge lists
  const std::uint64_t lim = 1ULL << (g.n() - 1);
  for (std::uint64_t mask = 0; mask + 1 < lim; ++mask) {
    VertexSet s(g.n());
    s.add(0);
    for (int v = 1; v < g.n(); ++v)
      if ((mask >> (v - 1)) & 1) s.add(v);
    std::vector<int> cut;
    for (int e = 0; e < g.m(); ++e)
      if (s.contains(g.edge(e).u) != s.contains(g.edge(e).v)) cut.push_back(e);
    if (!cut.empty()) cuts.push_back(std::move(cut));
  }

  auto rng = make_rng(hash_combine(seed, 0xc04c));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<char> sampled(g.m(), 0);
  for (int t = 0; t < trials; ++t) {
    for (int e = 0; e < g.m(); ++e) sampled[e] = coin(rng) < p ? 1 : 0;
    for (const auto& cut : cuts) {
      std::int64_t in_sample = 0;
      for (int e : cut) in_sample += sampled[e];
      double ratio = p > 0 ? in_sample / (p * cut.size()) : 0.0;
      stats.max_ratio = std::max(stats.max_ratio, ratio);
      ++stats.pairs;
      if (in_sample >= (1.0 + eps) * p * cut.size()) ++stats.violations;
    }
  }
  return stats;
}

CertificatePipelineResult certificate_pipeline(const Graph& g, double eps_outer,
                                               std::uint64_t seed, const Config& cfg) {
  if (!(eps_outer > 0.0 && eps_outer < 0.5))
    throw domain_error("outer eps must lie in (0, 1/2)");
  CertificatePipelineResult out;
  sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
  double D = static_cast<double>(eccentricity(g, 0));

  // Connectivity estimate: computed centrally, charged as the cited
  // approximation oracle.
  out.lambda_estimate = oracle::stoer_wagner(g).value;
  formulas.charge(out.transcript, "lambda_estimate",
                  {{"n", static_cast<double>(g.n())}, {"D", D}, {"eps", eps_outer}});
  out.transcript.declare_stage("certificate:lambda_estimate", false);

  double threshold = std::pow(static_cast<double>(g.n()), 1.0 - 2.0 * eps_outer);
  if (static_cast<double>(out.lambda_estimate) >= threshold || out.lambda_estimate < 1) {
    out.whole_graph = true;
    out.certificate.edges.resize(g.m());
    std::iota(out.certificate.edges.begin(), out.certificate.edges.end(), 0);
    return out;
  }

  CertificateParams params =
      make_params(g.n(), static_cast<int>(out.lambda_estimate), eps_outer, cfg.tau);
  DistCertificateResult dist = certificate_distributed(g, params, seed, cfg);
  out.certificate = std::move(dist.certificate);
  out.transcript.absorb(dist.transcript);
  return out;
}

Graph certificate_subgraph(const Graph& g, const Certificate& cert) {
  std::vector<Edge> edges;
  edges.reserve(cert.edges.size());
  for (int e : cert.edges) edges.push_back(g.edge(e));
  return Graph(g.n(), std::move(edges), g.weighted());
}

}  // namespace congestcut::cert
