#include "congestcut/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "congestcut/contraction.hpp"
#include "congestcut/decomposition.hpp"
#include "congestcut/oracle.hpp"
#include "congestcut/rng.hpp"
#include "congestcut/sim.hpp"
#include "congestcut/treecut.hpp"

namespace congestcut::cli {

BranchDecision select_branch(int n, double d_estimate, Weight lambda_estimate,
                             std::int64_t delta, bool weighted, const Config& cfg) {
  BranchDecision b;
  b.d_estimate = d_estimate;
  b.lambda_estimate = lambda_estimate;
  b.delta = delta;
  const double ln_n = std::log(std::max(2.0, static_cast<double>(n)));
  b.eps = delta > 1 ? std::log(static_cast<double>(delta)) / (2.0 * ln_n) : 0.0;
  b.mu = d_estimate > 0.0
             ? 1.0 - std::log(std::max(1.0, d_estimate)) / ln_n
             : 1.0;
  b.eps_break = b.mu > 0.5 ? 22.0 / 353.0 : 44.0 * std::max(0.0, b.mu) / 353.0;

  // Exponents of the two round bounds, evaluated numerically: the
  // contraction path runs in ~n^(1 - eps/44) + n^(1 - mu); the
  // small-connectivity oracle in ~n^(max(1/2, 1 - mu) + 8 eps_l).
  double eps_l =
      lambda_estimate > 1 ? std::log(static_cast<double>(lambda_estimate)) / (2.0 * ln_n) : 0.0;
  b.exponent_contracted = std::max(1.0 - b.eps / 44.0, 1.0 - b.mu);
  b.exponent_direct = std::max(0.5, 1.0 - b.mu) + 8.0 * eps_l;

  if (weighted) {
    b.contracted_path = false;
    b.reason = "weighted input: direct tree-packing path";
  } else if (n < cfg.msgc_min_n || delta < cfg.msgc_min_delta) {
    b.contracted_path = false;
    b.reason = "below contraction thresholds (n or min degree too small)";
  } else if (b.eps >= b.eps_break) {
    b.contracted_path = true;
    b.reason = "eps above the break-point: contraction path";
  } else {
    b.contracted_path = false;
    b.reason = "eps below the break-point: direct path";
  }
  return b;
}

namespace {

double estimate_diameter(const Graph& g, const PipelineOptions& opt,
                         sim::Transcript& transcript) {
  // Double BFS: twice the eccentricity of any vertex lies in [D, 2D].
  int ecc0, ecc1;
  if (opt.simulate && g.n() <= 256) {
    sim::RunOptions ropt;
    ropt.bandwidth_words = opt.cfg.bandwidth_words;
    ropt.audit_bandwidth = opt.audit_bandwidth;
    auto b0 = sim::bfs_protocol(g, 0, ropt);
    ecc0 = b0.tree.depth;
    int far = b0.tree.order.empty() ? 0 : b0.tree.order.back();
    auto b1 = sim::bfs_protocol(g, far, ropt);
    ecc1 = b1.tree.depth;
    transcript.absorb(b0.transcript);
    transcript.absorb(b1.transcript);
    transcript.declare_stage("pipeline:double_bfs", true);
  } else {
    RootedTree t0 = bfs_full(g, 0);
    ecc0 = t0.depth;
    int far = t0.order.empty() ? 0 : t0.order.back();
    ecc1 = eccentricity(g, far);
    sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(opt.cfg);
    formulas.charge(transcript, "broadcast", {{"D", static_cast<double>(ecc0 + ecc1)}});
    transcript.declare_stage("pipeline:double_bfs", false);
  }
  return 2.0 * std::min(std::max(ecc0, 1), std::max(ecc1, 1));
}

}  // namespace

PipelineResult pipeline(const Graph& g, const PipelineOptions& opt) {
  PipelineResult res;
  const Config& cfg = opt.cfg;

  if (g.n() < 2 || !is_connected(g)) {
    res.disconnected = true;
    res.lambda = 0;
    nlohmann::json j;
    j["disconnected"] = true;
    j["lambda"] = 0;
    res.report_json = j.dump(2);
    return res;
  }

  double d_est = estimate_diameter(g, opt, res.transcript);

  // Connectivity estimate via the charged approximation oracle.
  Weight lambda_est = oracle::stoer_wagner(g).value;
  {
    sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
    formulas.charge(res.transcript, "lambda_estimate",
                    {{"n", static_cast<double>(g.n())},
                     {"D", d_est},
                     {"eps", 0.25}});
    res.transcript.declare_stage("pipeline:lambda_estimate", false);
  }

  res.branch = select_branch(g.n(), d_est, lambda_est, g.min_degree(), g.weighted(), cfg);

  Weight degree_fallback = g.min_weighted_degree();
  int degree_vertex = 0;
  for (int v = 0; v < g.n(); ++v)
    if (g.weighted_degree(v) == degree_fallback) {
      degree_vertex = v;
      break;
    }

  CutResult answer;
  if (res.branch.contracted_path) {
    auto msgc = msgc::build_msgc(g, res.branch.eps, hash_combine(opt.seed, 11), cfg);
    res.transcript.absorb(msgc.transcript);
    auto cut = treecut::min_cut_contracted(g, msgc.contracted, hash_combine(opt.seed, 13), cfg);
    res.transcript.absorb(cut.transcript);
    answer = cut.cut;
    if (opt.simulate && g.n() <= 256) {
      // Message-level pass over the contracted graph's winning machinery.
      auto ts = treecut::spanning_tree_set(msgc.contracted.graph, hash_combine(opt.seed, 13),
                                           std::max<Weight>(1, answer.value), cfg);
      if (!ts.trees.empty() && msgc.contracted.graph.n() >= 2) {
        auto sim_run = treecut::min_2respect_sim(msgc.contracted.graph, ts.trees[0], cfg);
        res.transcript.absorb(sim_run.transcript);
        res.transcript.declare_stage("pipeline:two_respect_sim", true);
      }
    }
  } else {
    auto cut = treecut::min_cut_exact(g, hash_combine(opt.seed, 17), cfg);
    res.transcript.absorb(cut.transcript);
    answer = cut.cut;
    if (opt.charge_ns14_direct) {
      sim::ChargeFormulas formulas = sim::ChargeFormulas::standard(cfg);
      formulas.charge(res.transcript, "ns14_exact_mincut",
                      {{"n", static_cast<double>(g.n())},
                       {"D", d_est},
                       {"lambda", static_cast<double>(lambda_est)}});
      res.transcript.declare_stage("pipeline:ns14_charge", false);
    }
    if (opt.simulate && g.n() <= 256) {
      auto ts = treecut::spanning_tree_set(g, hash_combine(opt.seed, 17),
                                           std::max<Weight>(1, lambda_est), cfg);
      auto sim_run = treecut::min_2respect_sim(g, ts.trees[0], cfg);
      res.transcript.absorb(sim_run.transcript);
      res.transcript.declare_stage("pipeline:two_respect_sim", true);
    }
  }

  // Trivial cuts always compete.
  if (degree_fallback < answer.value) {
    VertexSet side(g.n());
    side.add(degree_vertex);
    answer = make_cut_result(g, side);
  }
  res.cut = answer;
  res.lambda = answer.value;

  if (opt.verify) {
    res.oracle_checked = true;
    res.oracle_agrees = oracle::stoer_wagner(g).value == res.lambda;
  }

  nlohmann::json j;
  j["n"] = g.n();
  j["m"] = g.m();
  j["weighted"] = g.weighted();
  j["seed"] = opt.seed;
  j["lambda"] = res.lambda;
  j["cut_edges"] = res.cut.crossing_edges;
  j["branch"] = {{"d_estimate", res.branch.d_estimate},
                 {"lambda_estimate", res.branch.lambda_estimate},
                 {"delta", res.branch.delta},
                 {"eps", res.branch.eps},
                 {"mu", res.branch.mu},
                 {"eps_break", res.branch.eps_break},
                 {"exponent_contracted", res.branch.exponent_contracted},
                 {"exponent_direct", res.branch.exponent_direct},
                 {"contracted_path", res.branch.contracted_path},
                 {"reason", res.branch.reason}};
  j["rounds"] = res.transcript.total_rounds();
  j["rounds_simulated"] = res.transcript.rounds_elapsed;
  j["rounds_charged"] = res.transcript.charged_rounds();
  j["bandwidth_violations"] = res.transcript.violations.size();
  if (res.oracle_checked) j["oracle_agrees"] = res.oracle_agrees;
  j["transcript"] = nlohmann::json::parse(res.transcript.to_json());
  res.report_json = j.dump(2);
  return res;
}

}  // namespace congestcut::cli
