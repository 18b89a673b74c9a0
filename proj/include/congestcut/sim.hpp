#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "congestcut/graph.hpp"
#include "congestcut/transcript.hpp"

namespace congestcut::sim {

/// Payload of one edge transmission: a sequence of words, each holding a
/// value in {0..n^c_w}. Word count against the per-round budget.
struct Message {
  std::vector<std::int64_t> words;

  Message() = default;
  explicit Message(std::int64_t w) : words{w} {}
  int word_count() const { return static_cast<int>(words.size()); }
};

/// One incident edge slot of a node.
struct Port {
  int edge = -1;  // graph edge index
  int peer = -1;  // neighbor id (known to the node in this model)
};

class Engine;

/// Local view a program gets each round: its id, its ports, the round
/// number, a private coin stream, and the outbox.
class NodeContext {
 public:
  int id() const { return id_; }
  int port_count() const { return static_cast<int>(ports_->size()); }
  const Port& port(int i) const { return (*ports_)[i]; }
  std::int64_t round() const { return round_; }

  std::uint64_t rand_word(std::uint64_t salt = 0) const;

  void send(int port_index, Message msg);
  void halt() { halted_ = true; }
  bool halted() const { return halted_; }

 private:
  friend class Engine;
  int id_ = -1;
  std::int64_t round_ = 0;
  std::uint64_t seed_ = 0;
  bool halted_ = false;
  const std::vector<Port>* ports_ = nullptr;
  std::vector<std::optional<Message>>* outbox_ = nullptr;
};

using Inbox = std::vector<std::optional<Message>>;

/// A node's protocol. State lives in the derived object; handlers may read
/// only their own state, the context, and the inbox.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(NodeContext& ctx) { (void)ctx; }
  virtual void on_round(NodeContext& ctx, const Inbox& inbox) = 0;
};

struct RunOptions {
  std::int64_t max_rounds = 1 << 22;
  int bandwidth_words = 1;
  bool audit_bandwidth = false;  // record violations instead of failing
  std::uint64_t seed = 0;
};

/// Lockstep synchronous execution until every node halts. A message sent
/// in round r is readable in round r+1. Delivery is reliable and ordered
/// by (sender id, edge id); the whole run is deterministic in (graph,
/// programs, seed).
Transcript run(const Graph& g, std::vector<std::unique_ptr<NodeProgram>> programs,
               const RunOptions& opt = {});

// ---- Tree communication primitives -------------------------------------
// Each runs a full message-level simulation over the tree edges and
// returns both the computed values and the transcript. Round guarantees
// (hard bounds asserted by the tests):
//   downcast                 <= 2*Depth(T) + 1
//   aggregate descendants    <= 2*Depth(T) + 1
//   convergecast, k trains   <= 2*Depth(T) + k + 1

struct DowncastResult {
  Transcript transcript;
  std::vector<std::vector<std::int64_t>> received;  // per node, ancestor msgs root-first
};

/// Every vertex v holds one word msg[v]; afterwards each tree vertex has
/// received the messages of all its proper ancestors, pipelined.
DowncastResult downcast(const Graph& g, const RootedTree& t,
                        const std::vector<std::int64_t>& msg, const RunOptions& opt = {});

struct AggregateResult {
  Transcript transcript;
  std::vector<std::int64_t> f;  // f[v] = sum over descendants x of g(v, x)
};

/// Level-synchronised descendant-sum pipeline: node x contributes g(v, x)
/// for each of its ancestors v; every v learns the subtree total.
AggregateResult aggregate_descendant_sums(
    const Graph& g, const RootedTree& t,
    const std::function<std::int64_t(int ancestor, int node)>& g_fn, const RunOptions& opt = {});

struct ConvergecastResult {
  Transcript transcript;
  std::vector<std::vector<std::int64_t>> f;  // [k][v]
};

/// k bottom-up recursions f_i(v) = g_i(v) + sum of f_i over children,
/// pipelined as a train of k words per tree edge.
ConvergecastResult convergecast_subtree(const Graph& g, const RootedTree& t,
                                        const std::vector<std::vector<std::int64_t>>& g_values,
                                        const RunOptions& opt = {});

struct BfsResult {
  Transcript transcript;
  RootedTree tree;
};

/// Distributed BFS-tree construction by flooding; parent = announcing
/// neighbor with the smallest id.
BfsResult bfs_protocol(const Graph& g, int root, const RunOptions& opt = {});

struct FloodResult {
  Transcript transcript;
  std::vector<std::int64_t> value;  // per-node final maximum
};

/// Max-id flooding with a known horizon (e.g. a diameter bound): after
/// `horizon` rounds every node holds the global maximum id.
FloodResult flood_max_id(const Graph& g, std::int64_t horizon, const RunOptions& opt = {});

}  // namespace congestcut::sim
