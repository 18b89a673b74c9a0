#pragma once

#include <cstdint>
#include <string>

#include "congestcut/config.hpp"
#include "congestcut/graph.hpp"
#include "congestcut/transcript.hpp"

namespace congestcut::cli {

struct PipelineOptions {
  std::uint64_t seed = 0;
  bool verify = false;          // compare against the exact oracle
  bool simulate = false;        // message-simulate the simulable stages (n <= 256)
  bool audit_bandwidth = true;  // collect violations instead of failing
  bool charge_ns14_direct = false;  // direct path charged by the small-lambda oracle
  Config cfg;
};

struct BranchDecision {
  double d_estimate = 0.0;       // in [D, 2D]
  Weight lambda_estimate = 0;
  std::int64_t delta = 0;
  double eps = 0.0;              // delta = n^(2 eps)
  double mu = 0.0;               // D' = n^(1 - mu)
  double eps_break = 0.0;        // 22/353 or 44 mu / 353
  double exponent_contracted = 0.0;
  double exponent_direct = 0.0;
  bool contracted_path = false;
  std::string reason;
};

/// Pure function of (n, D', lambda', delta): the exponent arithmetic that
/// picks the contraction path or the direct tree-packing path.
BranchDecision select_branch(int n, double d_estimate, Weight lambda_estimate,
                             std::int64_t delta, bool weighted, const Config& cfg);

struct PipelineResult {
  CutResult cut;
  Weight lambda = 0;
  bool disconnected = false;
  BranchDecision branch;
  sim::Transcript transcript;
  bool oracle_checked = false;
  bool oracle_agrees = false;
  std::string report_json;
};

/// End-to-end driver: diameter and connectivity estimates, branch
/// selection, contraction or direct path, trivial-cut fallback, report.
PipelineResult pipeline(const Graph& g, const PipelineOptions& opt);

}  // namespace congestcut::cli
