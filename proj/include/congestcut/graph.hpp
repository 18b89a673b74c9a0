#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congestcut/errors.hpp"
#include "congestcut/rational.hpp"
#include "congestcut/vertex_set.hpp"

namespace congestcut {

using Weight = std::int64_t;

struct Edge {
  int u = 0;
  int v = 0;
  Weight w = 1;

  int other(int x) const { return x == u ? v : u; }
};

/// Undirected simple graph with positive integer weights, vertex ids 0..n-1.
/// Immutable after construction; all operations below are pure.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges, bool weighted = false);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  bool weighted() const { return weighted_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  /// Incident edge indices of v.
  const std::vector<int>& incident(int v) const { return incident_[v]; }

  int degree(int v) const { return static_cast<int>(incident_[v].size()); }
  Weight weighted_degree(int v) const;
  Weight min_weighted_degree() const;
  int min_degree() const;
  Weight total_weight() const;

  /// Edge index of {u, v} if present.
  std::optional<int> find_edge(int u, int v) const;

  /// Checks simplicity, weight range {1..n^weight_exponent}, and that the
  /// adjacency lists agree with the edge set. Throws invariant_error.
  void validate(int weight_exponent = 4) const;

 private:
  int n_ = 0;
  bool weighted_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

/// A cut given by its vertex side. The side is canonical: it contains
/// vertex id 0. value is the total weight of crossing edges.
struct CutResult {
  VertexSet side;
  Weight value = 0;
  std::vector<int> crossing_edges;
};

CutResult make_cut_result(const Graph& g, const VertexSet& side);

/// Total weight of edges with exactly one endpoint in s.
Weight cut_weight(const Graph& g, const VertexSet& s);

/// Sum of unweighted degrees over s.
std::int64_t volume(const Graph& g, const VertexSet& s);

/// Unweighted crossing-edge count over the smaller side volume. Exact.
Rational conductance(const Graph& g, const VertexSet& s);

/// Minimum conductance over all nonempty proper subsets. n <= 20 only.
Rational graph_conductance_exhaustive(const Graph& g);

/// Connected components of the subgraph spanned by the given edge indices.
/// Vertices touching no filtered edge are not reported.
std::vector<VertexSet> connected_components(const Graph& g, const std::vector<int>& edge_filter);

/// Rooted spanning tree of one component: parents, children, levels, and
/// ancestor access. level(parent(v)) = level(v) - 1 and |anc(v)| = level(v)+1.
struct RootedTree {
  int root = -1;
  int depth = 0;
  std::vector<int> parent;       // -1 for root and for vertices outside the tree
  std::vector<int> parent_edge;  // graph edge index to parent, -1 otherwise
  std::vector<std::vector<int>> children;
  std::vector<int> level;        // -1 outside the tree
  std::vector<int> order;        // members in BFS order (root first)
  std::vector<int> tin, tout;    // preorder intervals for ancestor tests

  bool in_tree(int v) const { return level[v] >= 0; }
  /// True iff a is an ancestor of x (a = x included).
  bool is_ancestor(int a, int x) const {
    return tin[a] <= tin[x] && tout[x] <= tout[a];
  }
  /// Ancestors of v from the root down, v included.
  std::vector<int> ancestors(int v) const;
  int size() const { return static_cast<int>(order.size()); }
  void finish();  // fills tin/tout/order given parent/children/level
};

/// BFS tree over the filtered subgraph from root; levels are graph distances.
RootedTree bfs(const Graph& g, int root, const std::vector<int>& edge_filter);
RootedTree bfs_full(const Graph& g, int root);

/// Eccentricity of root in the filtered subgraph (depth of its BFS tree).
int eccentricity(const Graph& g, int root);

bool is_connected(const Graph& g);

}  // namespace congestcut
