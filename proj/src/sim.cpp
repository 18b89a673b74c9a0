#include "congestcut/sim.hpp"

#include <algorithm>
#include <string>

#include "congestcut/rng.hpp"

namespace congestcut::sim {

std::uint64_t NodeContext::rand_word(std::uint64_t salt) const {
  return node_round_word(seed_, static_cast<std::uint64_t>(id_),
                         static_cast<std::uint64_t>(round_), salt);
}

void NodeContext::send(int port_index, Message msg) {
  if (port_index < 0 || port_index >= port_count())
    throw sim_error("send on unknown port at node " + std::to_string(id_));
  auto& slot = (*outbox_)[port_index];
  if (slot.has_value())
    throw sim_error("node " + std::to_string(id_) + " sent twice on one edge in round " +
                    std::to_string(round_));
  slot = std::move(msg);
}

Transcript run(const Graph& g, std::vector<std::unique_ptr<NodeProgram>> programs,
               const RunOptions& opt) {
  const int n = g.n();
  if (static_cast<int>(programs.size()) != n)
    throw sim_error("need exactly one program per vertex");

  // Port tables and the reverse map (edge, endpoint) -> port index.
  std::vector<std::vector<Port>> ports(n);
  std::vector<std::pair<int, int>> edge_port(g.m(), {-1, -1});  // port index at (u, v)
  for (int v = 0; v < n; ++v) {
    for (int e : g.incident(v)) {
      ports[v].push_back({e, g.edge(e).other(v)});
      if (g.edge(e).u == v)
        edge_port[e].first = static_cast<int>(ports[v].size()) - 1;
      else
        edge_port[e].second = static_cast<int>(ports[v].size()) - 1;
    }
  }

  Transcript tr;
  tr.halt_round.assign(n, -1);

  std::vector<NodeContext> ctx(n);
  std::vector<std::vector<std::optional<Message>>> outbox(n), inbox(n);
  for (int v = 0; v < n; ++v) {
    ctx[v].id_ = v;
    ctx[v].seed_ = opt.seed;
    ctx[v].ports_ = &ports[v];
    outbox[v].assign(ports[v].size(), std::nullopt);
    inbox[v].assign(ports[v].size(), std::nullopt);
    ctx[v].outbox_ = &outbox[v];
    programs[v]->init(ctx[v]);
    if (ctx[v].halted()) tr.halt_round[v] = 0;
  }

  int alive = 0;
  for (int v = 0; v < n; ++v)
    if (!ctx[v].halted()) ++alive;

  std::int64_t round = 0;
  while (alive > 0) {
    ++round;
    if (round > opt.max_rounds)
      throw sim_error("simulation exceeded max_rounds = " + std::to_string(opt.max_rounds));

    for (int v = 0; v < n; ++v) {
      if (ctx[v].halted()) continue;
      ctx[v].round_ = round;
      programs[v]->on_round(ctx[v], inbox[v]);
      if (ctx[v].halted()) {
        tr.halt_round[v] = round;
        --alive;
      }
    }

    // Deliver: senders in id order, ports in edge order per node.
    std::int64_t sent = 0;
    for (auto& box : inbox)
      for (auto& slot : box) slot.reset();
    for (int v = 0; v < n; ++v) {
      for (int pi = 0; pi < static_cast<int>(ports[v].size()); ++pi) {
        auto& slot = outbox[v][pi];
        if (!slot.has_value()) continue;
        const int e = ports[v][pi].edge;
        if (slot->word_count() > opt.bandwidth_words) {
          BandwidthViolation viol{round, v, e, slot->word_count()};
          if (!opt.audit_bandwidth)
            throw sim_error("bandwidth exceeded: node " + std::to_string(v) + ", edge " +
                            std::to_string(e) + ", round " + std::to_string(round) + " (" +
                            std::to_string(slot->word_count()) + " words)");
          tr.violations.push_back(viol);
        }
        const int peer = ports[v][pi].peer;
        const int peer_port = g.edge(e).u == peer ? edge_port[e].first : edge_port[e].second;
        inbox[peer][peer_port] = std::move(*slot);
        slot.reset();
        ++sent;
      }
    }
    tr.per_round_messages.push_back(sent);
  }

  // Trailing quiet rounds (all halted before any sends happened) still
  // count; rounds elapsed is the last halt.
  tr.rounds_elapsed = 0;
  for (int v = 0; v < n; ++v) tr.rounds_elapsed = std::max(tr.rounds_elapsed, tr.halt_round[v]);
  return tr;
}

// ---- Tree primitives ----------------------------------------------------

namespace {

/// Per-node wiring of a rooted tree: parent port, child ports, level.
struct TreeView {
  int parent_port = -1;
  std::vector<int> child_ports;
  int level = -1;
  int depth = 0;
  bool member = false;
};

std::vector<TreeView> tree_views(const Graph& g, const RootedTree& t) {
  std::vector<TreeView> views(g.n());
  for (int v = 0; v < g.n(); ++v) {
    if (!t.in_tree(v)) continue;
    TreeView& tv = views[v];
    tv.member = true;
    tv.level = t.level[v];
    tv.depth = t.depth;
    for (int pi = 0; pi < static_cast<int>(g.incident(v).size()); ++pi) {
      int e = g.incident(v)[pi];
      int u = g.edge(e).other(v);
      if (t.parent[v] == u && t.parent_edge[v] == e) tv.parent_port = pi;
      if (t.parent[u] == v && t.parent_edge[u] == e) tv.child_ports.push_back(pi);
    }
  }
  return views;
}

/// Downcast: each node forwards, one word per round, the stream
/// [own message, then ancestor messages as they arrive from the parent].
/// A node at level l has received all l ancestor words after round l.
class DowncastProgram : public NodeProgram {
 public:
  DowncastProgram(const TreeView& tv, std::int64_t own,
                  std::vector<std::int64_t>* received_out)
      : tv_(tv), received_(received_out) {
    pending_.push_back(own);
  }

  void init(NodeContext& ctx) override {
    if (!tv_.member || (tv_.child_ports.empty() && tv_.level == 0)) ctx.halt();
  }

  void on_round(NodeContext& ctx, const Inbox& inbox) override {
    if (tv_.parent_port >= 0 && inbox[tv_.parent_port]) {
      std::int64_t w = inbox[tv_.parent_port]->words.at(0);
      received_->push_back(w);
      pending_.push_back(w);
    }
    if (next_ < pending_.size())
      for (int cp : tv_.child_ports) ctx.send(cp, Message(pending_[next_]));
    if (next_ < pending_.size()) ++next_;
    // Done once all ancestors arrived and everything was forwarded.
    if (static_cast<int>(received_->size()) == tv_.level &&
        next_ >= pending_.size())
      ctx.halt();
  }

 private:
  TreeView tv_;
  std::vector<std::int64_t> pending_;
  std::size_t next_ = 0;
  std::vector<std::int64_t>* received_;
};

}  // namespace

DowncastResult downcast(const Graph& g, const RootedTree& t,
                        const std::vector<std::int64_t>& msg, const RunOptions& opt) {
  if (t.root < 0 || !t.in_tree(t.root)) throw sim_error("downcast: tree has no root");
  for (int v = 0; v < g.n(); ++v)
    if (t.in_tree(v) && v != t.root && !t.in_tree(t.parent[v]))
      throw sim_error("downcast: disconnected tree");
  auto views = tree_views(g, t);
  DowncastResult res;
  res.received.assign(g.n(), {});
  std::vector<std::unique_ptr<NodeProgram>> programs;
  for (int v = 0; v < g.n(); ++v)
    programs.push_back(std::make_unique<DowncastProgram>(
        views[v], v < static_cast<int>(msg.size()) ? msg[v] : 0, &res.received[v]));
  res.transcript = run(g, std::move(programs), opt);
  res.transcript.declare_stage("downcast", true);
  return res;
}

namespace {

/// Aggregation phase: node x at level l waits until round Depth - l, then
/// sends, for ancestor level a = 0..l-1 in round Depth - l + 1 + a, the
/// partial sum g(v_a, desc(x)). The level tag is implicit in the schedule.
class AggregateProgram : public NodeProgram {
 public:
  AggregateProgram(const TreeView& tv, std::vector<std::int64_t> own_terms,
                   std::int64_t* f_out)
      : tv_(tv), sums_(std::move(own_terms)), f_(f_out) {}

  void init(NodeContext& ctx) override {
    if (!tv_.member) { ctx.halt(); return; }
    if (tv_.depth == 0) {  // single-vertex tree
      *f_ = sums_.empty() ? 0 : sums_[0];
      ctx.halt();
    }
  }

  void on_round(NodeContext& ctx, const Inbox& inbox) override {
    const std::int64_t r = ctx.round();
    const std::int64_t D = tv_.depth, l = tv_.level;
    // A child at level l+1 sends ancestor-level a in round D-l+a, read
    // here one round later. The level tag is implicit in the schedule.
    for (int cp : tv_.child_ports)
      if (inbox[cp]) {
        std::int64_t a = r - (D - l) - 1;
        if (a >= 0 && a < static_cast<int>(sums_.size())) sums_[a] += inbox[cp]->words.at(0);
      }
    // Own window: rounds D-l+1 .. D carry ancestor levels 0 .. l-1.
    if (r >= D - l + 1 && r <= D) {
      std::int64_t a = r - (D - l + 1);
      if (tv_.parent_port >= 0 && a < l) ctx.send(tv_.parent_port, Message(sums_[a]));
    }
    // Children's own-level values arrive in round D+1.
    if (r >= D + 1) {
      *f_ = sums_[l];
      ctx.halt();
    }
  }

 private:
  TreeView tv_;
  std::vector<std::int64_t> sums_;  // indexed by ancestor level 0..level(x)
  std::int64_t* f_;
};

}  // namespace

AggregateResult aggregate_descendant_sums(
    const Graph& g, const RootedTree& t,
    const std::function<std::int64_t(int, int)>& g_fn, const RunOptions& opt) {
  auto views = tree_views(g, t);
  AggregateResult res;
  res.f.assign(g.n(), 0);
  std::vector<std::unique_ptr<NodeProgram>> programs;
  for (int x = 0; x < g.n(); ++x) {
    std::vector<std::int64_t> own;
    if (t.in_tree(x)) {
      auto anc = t.ancestors(x);  // root-first, x last
      own.reserve(anc.size());
      for (int v : anc) own.push_back(g_fn(v, x));
    }
    programs.push_back(std::make_unique<AggregateProgram>(views[x], std::move(own), &res.f[x]));
  }
  res.transcript = run(g, std::move(programs), opt);
  res.transcript.declare_stage("aggregate_descendant_sums", true);
  return res;
}

namespace {

/// k-function convergecast: node x sends f_i(x) in round D - l + i,
/// having received the children's f_i in the previous round.
class ConvergecastProgram : public NodeProgram {
 public:
  ConvergecastProgram(const TreeView& tv, std::vector<std::int64_t> own,
                      std::vector<std::int64_t*> f_out)
      : tv_(tv), acc_(std::move(own)), out_(std::move(f_out)) {}

  void init(NodeContext& ctx) override {
    if (!tv_.member) { ctx.halt(); return; }
    if (tv_.depth == 0) {
      publish();
      ctx.halt();
    }
  }

  void on_round(NodeContext& ctx, const Inbox& inbox) override {
    const std::int64_t r = ctx.round();
    const int k = static_cast<int>(acc_.size());
    for (int cp : tv_.child_ports)
      if (inbox[cp]) {
        std::int64_t i = r - (tv_.depth - tv_.level) - 1;  // train index from child
        if (i >= 0 && i < k) acc_[i] += inbox[cp]->words.at(0);
      }
    if (r >= tv_.depth - tv_.level + 1 && r <= tv_.depth - tv_.level + k) {
      std::int64_t i = r - (tv_.depth - tv_.level + 1);
      if (tv_.parent_port >= 0) ctx.send(tv_.parent_port, Message(acc_[i]));
    }
    if (r >= tv_.depth - tv_.level + k) {
      publish();
      ctx.halt();
    }
  }

 private:
  void publish() {
    for (std::size_t i = 0; i < out_.size(); ++i) *out_[i] = acc_[i];
  }
  TreeView tv_;
  std::vector<std::int64_t> acc_;
  std::vector<std::int64_t*> out_;
};

}  // namespace

ConvergecastResult convergecast_subtree(const Graph& g, const RootedTree& t,
                                        const std::vector<std::vector<std::int64_t>>& g_values,
                                        const RunOptions& opt) {
  const int k = static_cast<int>(g_values.size());
  if (k == 0) throw sim_error("convergecast with zero functions");
  auto views = tree_views(g, t);
  ConvergecastResult res;
  res.f.assign(k, std::vector<std::int64_t>(g.n(), 0));
  std::vector<std::unique_ptr<NodeProgram>> programs;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<std::int64_t> own(k, 0);
    std::vector<std::int64_t*> out(k);
    for (int i = 0; i < k; ++i) {
      own[i] = g_values[i][v];
      out[i] = &res.f[i][v];
    }
    programs.push_back(std::make_unique<ConvergecastProgram>(views[v], std::move(own),
                                                             std::move(out)));
  }
  res.transcript = run(g, std::move(programs), opt);
  res.transcript.declare_stage("convergecast_subtree", true);
  return res;
}

namespace {

class BfsProgram : public NodeProgram {
 public:
  BfsProgram(int root, std::int64_t horizon, int* parent_out, int* level_out)
      : root_(root), horizon_(horizon), parent_(parent_out), level_(level_out) {}

  void on_round(NodeContext& ctx, const Inbox& inbox) override {
    if (ctx.round() == 1 && ctx.id() == root_) {
      *parent_ = -1;
      *level_ = 0;
      joined_ = announce_ = true;
    }
    if (!joined_) {
      int best = -1;
      for (int pi = 0; pi < ctx.port_count(); ++pi)
        if (inbox[pi] && (best < 0 || ctx.port(pi).peer < ctx.port(best).peer)) best = pi;
      if (best >= 0) {
        joined_ = announce_ = true;
        *parent_ = ctx.port(best).peer;
        *level_ = static_cast<int>(inbox[best]->words.at(0)) + 1;
      }
    }
    if (announce_) {
      for (int pi = 0; pi < ctx.port_count(); ++pi) ctx.send(pi, Message(*level_));
      announce_ = false;
      ctx.halt();  // a joined node announces once and is done
      return;
    }
    if (ctx.round() >= horizon_) ctx.halt();  // unreached: stop at the horizon
  }

 private:
  int root_;
  std::int64_t horizon_;
  bool joined_ = false, announce_ = false;
  int* parent_;
  int* level_;
};

}  // namespace

BfsResult bfs_protocol(const Graph& g, int root, const RunOptions& opt) {
  std::vector<int> parent(g.n(), -1), level(g.n(), -1);
  std::vector<std::unique_ptr<NodeProgram>> programs;
  // n rounds always suffice: the frontier reaches level k at round k+1.
  std::int64_t horizon = g.n() + 1;
  for (int v = 0; v < g.n(); ++v)
    programs.push_back(std::make_unique<BfsProgram>(root, horizon, &parent[v], &level[v]));
  BfsResult res;
  res.transcript = run(g, std::move(programs), opt);
  res.transcript.declare_stage("bfs_tree", true);

  RootedTree t;
  t.root = root;
  t.parent = parent;
  t.parent_edge.assign(g.n(), -1);
  t.children.assign(g.n(), {});
  t.level = level;
  for (int v = 0; v < g.n(); ++v) {
    if (v == root || level[v] < 0) continue;
    t.parent_edge[v] = g.find_edge(v, parent[v]).value();
    t.depth = std::max(t.depth, level[v]);
  }
  // children in BFS-order: stable by (level, id)
  std::vector<int> members;
  for (int v = 0; v < g.n(); ++v)
    if (level[v] >= 0) members.push_back(v);
  std::sort(members.begin(), members.end(),
            [&](int a, int b) { return std::pair(level[a], a) < std::pair(level[b], b); });
  t.order = members;
  for (int v : members)
    if (v != root) t.children[parent[v]].push_back(v);
  t.finish();
  res.tree = t;
  return res;
}

namespace {

class FloodMaxProgram : public NodeProgram {
 public:
  FloodMaxProgram(std::int64_t horizon, std::int64_t* value_out)
      : horizon_(horizon), value_(value_out) {}

  void on_round(NodeContext& ctx, const Inbox& inbox) override {
    if (ctx.round() == 1) {
      best_ = ctx.id();
      dirty_ = true;
    }
    for (int pi = 0; pi < ctx.port_count(); ++pi)
      if (inbox[pi] && inbox[pi]->words.at(0) > best_) {
        best_ = inbox[pi]->words.at(0);
        dirty_ = true;
      }
    if (dirty_) {
      for (int pi = 0; pi < ctx.port_count(); ++pi) ctx.send(pi, Message(best_));
      dirty_ = false;
    }
    if (ctx.round() >= horizon_) {
      *value_ = best_;
      ctx.halt();
    }
  }

 private:
  std::int64_t horizon_;
  std::int64_t best_ = -1;
  bool dirty_ = false;
  std::int64_t* value_;
};

}  // namespace

FloodResult flood_max_id(const Graph& g, std::int64_t horizon, const RunOptions& opt) {
  FloodResult res;
  res.value.assign(g.n(), -1);
  std::vector<std::unique_ptr<NodeProgram>> programs;
  for (int v = 0; v < g.n(); ++v)
    programs.push_back(std::make_unique<FloodMaxProgram>(horizon, &res.value[v]));
  res.transcript = run(g, std::move(programs), opt);
  res.transcript.declare_stage("flood_max_id", true);
  return res;
}

}  // namespace congestcut::sim
