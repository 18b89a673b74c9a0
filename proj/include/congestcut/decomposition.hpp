#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "congestcut/config.hpp"
#include "congestcut/graph.hpp"
#include "congestcut/transcript.hpp"

namespace congestcut::decomp {

/// Exponents and the derived thresholds, fixed once per tripartition run
/// against the global n and m of the input graph.
struct DecompParams {
  double gamma = 0.3;
  double rho = 0.05;
  int n = 0;        // global vertex count
  std::int64_t m = 0;  // global edge count
  double n_gamma = 1.0;   // n^gamma
  double n_rho = 1.0;     // n^rho
  double log2_m = 1.0;    // log2(max(2, m))

  static DecompParams make(const Graph& g, double gamma, double rho);

  double diameter_threshold() const { return 48.0 * n_rho * log2_m * log2_m; }
  double sparsity_factor() const { return 12.0 * n_rho * log2_m; }  // denominator
  double phi() const { return 1.0 / (144.0 * n_rho * log2_m); }
};

/// Index j in [len/4, 3len/4] (1-based) whose value is at most
/// min(prefix, suffix) / (12 n^rho log2 m); scans the lighter half.
int find_sparse_index(const std::vector<std::int64_t>& a, std::int64_t m, double n_rho);

struct SubCut {
  VertexSet side;                 // contains the BFS root / sweep seed side
  std::vector<int> crossing;      // subgraph edge ids crossing
  std::int64_t crossing_count = 0;
};

/// BFS-level cut for components of large eccentricity: the boundary at a
/// sparse level index. Preconditions checked: eccentricity over the
/// threshold, and no edge joining two vertices of degree <= n^gamma / 2.
SubCut high_diameter_cut(const Graph& g, const std::vector<int>& sub_edges, int root,
                         const DecompParams& params);

struct PeelResult {
  std::vector<int> kept_edges;                    // the high-degree remainder
  std::vector<std::vector<int>> e_s;              // per vertex, edges oriented away
  std::vector<int> peel_batch;                    // per vertex: batch index, -1 if kept
  int iterations = 0;
  int removed_vertices = 0;
};

/// Batch peeling of low-degree vertices: every batch removes all vertices
/// with at most n^gamma residual incident edges, orienting their edges
/// away (toward the larger id inside a batch); stops once a batch has at
/// most n^gamma / 2 vertices. Every surviving vertex keeps residual
/// degree above n^gamma / 2.
PeelResult low_degree_peel(const Graph& g, const std::vector<int>& sub_edges,
                           const DecompParams& params);

/// Sweep cut over lazy random walk distributions. Returns a cut with
/// conductance at most 12 phi if the sweep finds one; empty otherwise.
/// phi must be at most 1/12.
std::optional<SubCut> low_conductance_cut(const Graph& g, const std::vector<int>& sub_edges,
                                          double phi, const DecompParams& params,
                                          std::uint64_t seed, const Config& cfg);

enum class PartCase { kHighConductance, kRecurse };  // the two halt cases

struct Part {
  int id = 0;
  std::vector<int> edges;
  VertexSet vertices;
  PartCase halt_case = PartCase::kRecurse;
};

struct BlackBoxOutput {
  std::vector<Part> parts;
  std::vector<std::vector<int>> e_s;  // per vertex
  std::vector<int> e_r;
  VertexSet untouched;                // vertices of the input with no part
  sim::Transcript transcript;
};

/// One invocation of the recursive partitioner: strips low-degree-internal
/// edges, splits components by high-diameter level cuts, peels, and either
/// certifies a part as having no sparse cut or removes one and splits.
/// Conditions on the output (partitioning, per-vertex bound, charging
/// inequality, part ids) are asserted before returning.
BlackBoxOutput blackbox_partition(const Graph& g, const std::vector<int>& sub_edges,
                                  const DecompParams& params, std::uint64_t seed,
                                  const Config& cfg = default_config());

struct Tripartition {
  std::vector<int> e_h;
  std::vector<int> e_r;
  std::vector<std::vector<int>> e_s;   // per vertex, oriented away from it
  std::vector<VertexSet> components;   // components of G[e_h]
  sim::Transcript transcript;
  DecompParams params;
};

/// Recursive application of the black box: high-conductance parts settle
/// into E_h, the rest recurse; E_s and E_r accumulate.
Tripartition tripartition(const Graph& g, double gamma, double rho, std::uint64_t seed,
                          const Config& cfg = default_config());

struct TripartitionReport {
  bool partition_exact = false;
  bool e_r_bound = false;
  bool e_s_per_vertex_bound = false;
  bool orientation_acyclic = false;
  bool e_r_endpoints_separated = false;
  bool component_min_degree = false;  // every E_h component internal degree > n^gamma/2
  std::int64_t e_r_size = 0;
  double e_r_limit = 0.0;
  bool all() const {
    return partition_exact && e_r_bound && e_s_per_vertex_bound && orientation_acyclic &&
           e_r_endpoints_separated && component_min_degree;
  }
};

TripartitionReport check_tripartition(const Graph& g, const Tripartition& tp);

}  // namespace congestcut::decomp
