#pragma once

#include <cstdint>

namespace congestcut {

// Every tunable constant of the pipeline in one place. Defaults are the
// documented values used by the test suites; the CLI can override any of
// them from a config file.
struct Config {
  // Graph model: edge weights live in {1, ..., n^weight_exponent}.
  int weight_exponent = 4;

  // Simulator: words per directed edge per round. One word holds a value
  // in {0, ..., n^weight_exponent}.
  int bandwidth_words = 1;

  // Certificate sampling constant (tau >= 3 for the concentration bound).
  double tau = 3.0;

  // Charge-formula constants: each charged oracle multiplies its cited
  // round formula by one of these.
  double c_mst = 1.0;       // l-slot MST: c * (D + sqrt(n*l)) * ceil(log2 n)
  double c_ns14 = 1.0;      // approx min-cut oracle: c * (sqrt(n)log*n + D) * eps^-5 * ceil(log2 n)^3
  double c_lc = 1.0;        // low-conductance finder: c * (D + n^(10 rho) * ceil(log2 m)^3)
  double c_bcast = 1.0;     // tree/BFS broadcasts: c * (D + 1)

  // Tripartition component-conductance constant (reported, not asserted).
  double phi_constant = 1000.0;

  // Sweep-cut finder: number of walk seeds and walk length multipliers.
  double lc_seed_factor = 1.0;   // seeds = ceil(f * log2 n*) + 2
  double lc_step_factor = 1.0;   // steps = ceil(f * ln^2 m*) + 10

  // Tree packing constants: skeleton target connectivity c_skel * log2(n)^1.1,
  // packing size c_pack * log2(n)^2.2.
  double c_skel = 4.0;
  double c_pack = 2.0;

  // Pipeline branch selection: the contraction path needs a graph large and
  // dense enough for the decomposition thresholds to bite.
  int msgc_min_n = 100;
  int msgc_min_delta = 8;

  // Timeout multiplier for full message-level simulations.
  std::int64_t sim_round_limit = 1 << 22;
};

inline Config& default_config() {
  static Config cfg;
  return cfg;
}

}  // namespace congestcut
