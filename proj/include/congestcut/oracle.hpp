#pragma once

#include <cstdint>
#include <vector>

#include "congestcut/graph.hpp"

namespace congestcut::oracle {

/// Exact global min cut (Stoer-Wagner). Disconnected input yields value 0
/// with one component as the side.
CutResult stoer_wagner(const Graph& g);

struct MinCutEnumeration {
  Weight lambda = 0;
  std::vector<VertexSet> cuts;  // canonical sides (each contains vertex 0)
};

/// Exhaustive over all 2^(n-1) - 1 bipartitions. n <= 20.
MinCutEnumeration enumerate_min_cuts(const Graph& g);

// Deterministic generators.
Graph gnp(int n, double p, std::uint64_t seed);
Graph cycle(int n);
Graph clique(int n);
Graph path(int n);
Graph star(int n);
Graph grid(int rows, int cols);

/// Two cliques of the given size joined by bridge_count disjoint bridges.
Graph barbell(int clique_size, int bridge_count);

/// Two dense halves with exactly k crossing edges and internal min degree
/// > k, so the edge connectivity is k by construction. extra_degree pads
/// the halves beyond the minimum.
Graph planted_cut(int n, int k, std::uint64_t seed, int extra_degree = 0);

/// Same structure with each half built to minimum internal degree at least
/// delta (still > k); used for the contraction pipeline's dense regime.
Graph planted_cut_dense(int n, int k, int delta, std::uint64_t seed);

/// Copy with fresh random weights in {1..max_w}.
Graph with_random_weights(const Graph& g, Weight max_w, std::uint64_t seed);

}  // namespace congestcut::oracle
