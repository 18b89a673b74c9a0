#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "congestcut/config.hpp"
#include "congestcut/contraction.hpp"
#include "congestcut/graph.hpp"
#include "congestcut/sim.hpp"

namespace congestcut::treecut {

/// Greedy packing: tree i is a minimum spanning tree under the loads left
/// by trees 1..i-1. Weighted edges order by load(e)/w(e), ties by id.
struct TreePacking {
  std::vector<std::vector<int>> tree_edges;
  std::vector<std::int64_t> load;  // per edge: number of trees using it
};

TreePacking greedy_tree_packing(const Graph& g, int count);

/// Random skeleton: every edge kept with probability p = 2^-i, chosen so
/// the sampled connectivity lands near c_skel * log2(n)^1.1; weighted
/// edges keep a binomially resampled weight.
struct Skeleton {
  std::vector<char> in_h;
  std::vector<Weight> h_weight;
  double p = 1.0;
  int i = 0;
};

Skeleton skeleton_sample(const Graph& g, Weight lambda_estimate, std::uint64_t seed,
                         const Config& cfg = default_config());

/// Packing on the skeleton, each tree completed to a spanning tree of g
/// by load-free non-skeleton edges. Roots are fixed at vertex 0.
struct TreeSet {
  std::vector<RootedTree> trees;
  std::vector<std::vector<int>> tree_edges;
  Skeleton skeleton;
};

TreeSet spanning_tree_set(const Graph& g, std::uint64_t seed, Weight lambda_estimate,
                          const Config& cfg = default_config());

/// Subtree cut values C(desc(v)) for every non-root v (entry 0 at the
/// root slot).
std::vector<Weight> one_respect_values(const Graph& g, const RootedTree& t);

/// For fixed u: C(desc(u), desc(v)) for every v with u outside desc(v)
/// (other entries are meaningless). Runs one incident-edge scan plus a
/// subtree sum.
std::vector<Weight> cross_values(const Graph& g, const RootedTree& t, int u);

struct TwoRespectResult {
  Weight value = 0;
  bool is_pair = false;
  int v = -1;               // singleton vertex, or the pair's second member
  int u = -1;               // pair's first member (-1 for singletons)
  std::vector<Weight> c_desc;  // C(desc(x)) table for the tree
  Weight cross = 0;            // C(desc(u), desc(v)) of the winner (pairs)
};

/// Minimum over all cuts sharing at most two edges with the tree: all
/// single subtrees and all symmetric differences of two subtrees. The
/// returned value is re-derived from scratch before returning.
std::optional<TwoRespectResult> min_2respect(const Graph& g, const RootedTree& t);

/// Vertex side desc(u) (+) desc(v) of a result.
VertexSet two_respect_side(const Graph& g, const RootedTree& t, const TwoRespectResult& r);

/// Crossing edges of the winner, classified by ancestor tests only.
std::vector<int> recover_cut_edges(const Graph& g, const RootedTree& t,
                                   const TwoRespectResult& r);

struct ExactResult {
  CutResult cut;
  sim::Transcript transcript;
  int tree_count = 0;
  double p_skeleton = 1.0;
  int winning_tree = -1;
};

/// Full tree-packing min cut for weighted graphs: skeleton, packing,
/// per-tree two-respect minimisation, edge recovery.
ExactResult min_cut_exact(const Graph& g, std::uint64_t seed,
                          const Config& cfg = default_config());

/// union of the contracted tree and one BFS tree per contracted cluster,
/// the routing overlay for tree communication on the contracted graph.
struct Mapping {
  std::vector<int> edges;                 // g edge ids, multiplicity preserved
  std::vector<RootedTree> cluster_trees;  // over g, aligned with mapped_clusters
  std::vector<int> mapped_clusters;       // indices into cg.clusters
  std::vector<int> leader;                // r_C per mapped cluster
  int tree_depth = 0;
  int total_cluster_depth = 0;
};

Mapping build_mapping(const Graph& g, const msgc::ContractedGraph& cg, const RootedTree& tbar);

/// Min cut of the contracted graph measured in original edge weights,
/// with the trivial-cut fallback against the minimum weighted degree.
ExactResult min_cut_contracted(const Graph& g, const msgc::ContractedGraph& cg,
                               std::uint64_t seed, const Config& cfg = default_config());

// ---- message-level validation path (small n) ----------------------------

struct SimValues {
  sim::Transcript transcript;
  std::vector<Weight> values;
};

/// Subtree cut values computed by the ancestor-exchange plus
/// descendant-sum schedule; equals one_respect_values.
SimValues one_respect_values_sim(const Graph& g, const RootedTree& t,
                                 const Config& cfg = default_config());

struct SimTwoRespect {
  sim::Transcript transcript;
  Weight value = 0;
};

/// Full simulated two-respect evaluation of one tree: ancestor downcast,
/// neighbor list exchange, subtree aggregation, one n-train convergecast.
SimTwoRespect min_2respect_sim(const Graph& g, const RootedTree& t,
                               const Config& cfg = default_config());

}  // namespace congestcut::treecut
