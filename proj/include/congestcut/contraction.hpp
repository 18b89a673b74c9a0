#pragma once

#include <cstdint>
#include <vector>

#include "congestcut/config.hpp"
#include "congestcut/decomposition.hpp"
#include "congestcut/graph.hpp"
#include "congestcut/transcript.hpp"

namespace congestcut::msgc {

/// Vertex groups plus the core/regular split. Group ids live in [0, 2n):
/// a surviving group keeps the largest member id of its originating dense
/// component, singletons keep their own id, trimmed vertices take n + id.
struct Clustering {
  int n = 0;
  std::vector<int> group_id;
  std::vector<char> regular;
  int trimmed_count = 0;

  std::vector<std::pair<int, VertexSet>> groups() const;            // all groups
  std::vector<std::pair<int, VertexSet>> nontrivial_groups() const; // size >= 2
  VertexSet core_of(const VertexSet& group) const;
};

/// Each dense component becomes a group identified by its largest member
/// id; every other vertex is a singleton group.
Clustering init_groups_from_components(const Graph& g, const decomp::Tripartition& tp);

/// Bulk-synchronous trimming to a fixed point: a vertex with fewer than
/// 2/5 of its neighbors inside its group leaves it. Degrees are always
/// taken in g itself, never in a residual graph.
Clustering trim(const Graph& g, const Clustering& c, int* trimmed_count = nullptr);

/// One shaving pass: a grouped vertex with at most deg/2 + 1 in-group
/// neighbors is flagged regular. Group membership never changes; trivial
/// groups end up entirely regular.
Clustering shave(const Graph& g, const Clustering& c);

/// Cores collapsed to super-vertices; parallel bundles become one
/// weighted edge carrying the bundle's total weight and the smallest
/// member edge as its representative.
struct ContractedGraph {
  Graph graph;                      // weighted by bundle totals
  std::vector<int> map;             // original vertex -> super id
  std::vector<VertexSet> back_map;  // super id -> original members
  std::vector<int> rep_edge;        // contracted edge -> original edge id
  std::vector<int> core_cluster;    // super id -> index into clusters, -1 if not a core
  std::vector<std::pair<int, VertexSet>> clusters;   // nontrivial groups (id, members)
  std::vector<int> cluster_diameter;                 // aligned with clusters; -1 disconnected
  bool delta_warning = false;       // min degree below n^(2 eps)
};

ContractedGraph contract_cores(const Graph& g, const Clustering& c);

struct MsgcResult {
  ContractedGraph contracted;
  Clustering clustering;
  Graph certificate_graph;
  decomp::Tripartition tripartition;
  sim::Transcript transcript;
  double eps = 0.0;
};

/// The full contraction pipeline: sparse certificate, tripartition with
/// gamma = eps and rho = eps/11, group initialisation, trim, shave,
/// contraction. Input must be unweighted and connected.
MsgcResult build_msgc(const Graph& g, double eps, std::uint64_t seed,
                      const Config& cfg = default_config());

struct PreservationReport {
  bool vacuous = true;           // no non-trivial min cut
  std::int64_t checked_cuts = 0;
  std::int64_t core_split_violations = 0;
  std::int64_t small_side_violations = 0;   // a group meets both sides with > 2 vertices
  std::int64_t dichotomy_violations = 0;    // both sides >= delta/100 (only when > 2)
  bool dichotomy_enforced = false;
};

/// Exhaustive check (n <= 20) that no core is split by a non-trivial min
/// cut, plus the small-side and dichotomy counting properties.
PreservationReport validate_min_cut_preservation(const Graph& g, const Clustering& c);

struct StructureReport {
  int nontrivial_cluster_count = 0;
  int trimmed_count = 0;
  int regular_count = 0;
  std::int64_t sum_cluster_diameters = 0;
  std::int64_t delta_used = 0;
  double cluster_count_limit = 0.0;   // 3n / delta
  double cluster_size_floor = 0.0;    // 2 delta / 5
  bool cluster_count_ok = false;
  bool cluster_size_ok = false;
  double diameter_target = 0.0;       // n^(1 - eps/20), reported only
};

StructureReport structure_report(const Graph& cert_graph, const Clustering& c,
                                 const ContractedGraph& cg, double eps);

}  // namespace congestcut::msgc
