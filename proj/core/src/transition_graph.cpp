#include "brdyn/transition_graph.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>

#include "brdyn/errors.hpp"

namespace brdyn {

std::vector<TgEdge> TransitionGraph::out_edges(NodeId v) const {
  std::vector<TgEdge> out;
  for (std::uint64_t e = offsets_.at(v); e < offsets_[v + 1]; ++e) {
    out.push_back({v, labels_[e], targets_[e]});
  }
  return out;
}

std::optional<NodeId> TransitionGraph::successor(NodeId v, PlayerId player) const {
  for (std::uint64_t e = offsets_.at(v); e < offsets_[v + 1]; ++e) {
    if (labels_[e] == player) return targets_[e];
  }
  return std::nullopt;
}

std::vector<NodeId> TransitionGraph::sinks() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (out_degree(v) == 0) out.push_back(v);
  }
  return out;
}

NodeId TransitionGraph::encode(const Game& game, const State& s) const {
  std::uint64_t code = 0;
  std::uint64_t weight = 1;
  for (PlayerId i = 0; i < radix_.size(); ++i) {
    code += weight * *game.slot_of(i, s.choice(i));
    weight *= radix_[i];
  }
  return static_cast<NodeId>(code);
}

State TransitionGraph::decode(const Game& game, NodeId v) const {
  std::vector<ResourceId> choice(radix_.size());
  std::uint64_t rest = v;
  for (PlayerId i = 0; i < radix_.size(); ++i) {
    choice[i] = game.strategies(i)[rest % radix_[i]];
    rest /= radix_[i];
  }
  return State(game, std::move(choice));
}

namespace {

struct Chunk {
  std::vector<std::uint32_t> degree;
  std::vector<NodeId> targets;
  std::vector<PlayerId> labels;
};

// Walks nodes [begin, end) in order, updating one State incrementally.
void scan_chunk(const Game& game, const std::vector<std::uint32_t>& radix,
                const std::vector<std::uint64_t>& weight, std::uint64_t begin, std::uint64_t end,
                Chunk& out) {
  const std::size_t n = radix.size();
  std::vector<std::uint32_t> slot(n);
  std::vector<ResourceId> choice(n);
  std::uint64_t rest = begin;
  for (PlayerId i = 0; i < n; ++i) {
    slot[i] = static_cast<std::uint32_t>(rest % radix[i]);
    rest /= radix[i];
    choice[i] = game.strategies(i)[slot[i]];
  }
  State s(game, choice);
  out.degree.reserve(end - begin);
  for (std::uint64_t v = begin; v < end; ++v) {
    std::uint32_t deg = 0;
    for (PlayerId i = 0; i < n; ++i) {
      const ResourceId br = best_response(game, s, i);
      if (br == s.choice(i)) continue;
      const std::uint32_t to_slot = static_cast<std::uint32_t>(*game.slot_of(i, br));
      const std::uint64_t w = v - weight[i] * slot[i] + weight[i] * to_slot;
      out.targets.push_back(static_cast<NodeId>(w));
      out.labels.push_back(i);
      ++deg;
    }
    out.degree.push_back(deg);
    // Mixed-radix increment.
    for (PlayerId i = 0; i < n; ++i) {
      if (++slot[i] < radix[i]) {
        s.move(i, game.strategies(i)[slot[i]]);
        break;
      }
      slot[i] = 0;
      s.move(i, game.strategies(i)[0]);
    }
  }
}

}  // namespace

TransitionGraph build_tg(const Game& game, std::size_t node_cap, unsigned threads) {
  TransitionGraph tg;
  const std::size_t n = game.player_count();
  std::vector<std::uint64_t> weight(n);
  std::uint64_t total = 1;
  for (PlayerId i = 0; i < n; ++i) {
    const auto r = static_cast<std::uint32_t>(game.strategy_count(i));
    tg.radix_.push_back(r);
    weight[i] = total;
    if (total > node_cap / r) {
      throw CapExceeded("transition graph would exceed " + std::to_string(node_cap) + " states");
    }
    total *= r;
  }
  if (total > node_cap || total > UINT32_MAX) {
    throw CapExceeded("transition graph would exceed " + std::to_string(node_cap) + " states");
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, total / 4096)));
  std::vector<Chunk> chunks(threads);
  {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b = total * t / threads;
      const std::uint64_t e = total * (t + 1) / threads;
      if (threads == 1) {
        scan_chunk(game, tg.radix_, weight, b, e, chunks[t]);
      } else {
        pool.emplace_back(scan_chunk, std::cref(game), std::cref(tg.radix_), std::cref(weight), b,
                          e, std::ref(chunks[t]));
      }
    }
    for (auto& th : pool) th.join();
  }

  tg.offsets_.reserve(total + 1);
  tg.offsets_.push_back(0);
  for (auto& c : chunks) {
    for (auto d : c.degree) tg.offsets_.push_back(tg.offsets_.back() + d);
    tg.targets_.insert(tg.targets_.end(), c.targets.begin(), c.targets.end());
    tg.labels_.insert(tg.labels_.end(), c.labels.begin(), c.labels.end());
    c = Chunk{};
  }
  return tg;
}

std::vector<std::uint32_t> strongly_connected_components(const TransitionGraph& tg,
                                                         std::uint32_t* component_count) {
  const std::size_t nn = tg.node_count();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(nn, kUnvisited), low(nn, 0), comp(nn, kUnvisited);
  std::vector<NodeId> stack;
  std::vector<char> on_stack(nn, 0);
  std::uint32_t next_index = 0, next_comp = 0;
  const auto& off = tg.offsets();
  const auto& tgt = tg.targets();

  struct Frame {
    NodeId v;
    std::uint64_t edge;
  };
  std::vector<Frame> call;
  for (NodeId root = 0; root < nn; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, off[root]});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const NodeId v = f.v;
      if (f.edge < off[v + 1]) {
        const NodeId w = tgt[f.edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, off[w]});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) {
        const NodeId parent = call.back().v;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  if (component_count) *component_count = next_comp;
  return comp;
}

std::optional<std::vector<TgEdge>> find_cycle(const TransitionGraph& tg) {
  std::uint32_t count = 0;
  const auto comp = strongly_connected_components(tg, &count);
  std::vector<std::uint32_t> size(count, 0);
  for (auto c : comp) ++size[c];
  NodeId start = 0;
  bool found = false;
  for (NodeId v = 0; v < tg.node_count(); ++v) {
    if (size[comp[v]] >= 2) {
      start = v;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;

  // BFS inside the component from start back to start.
  const std::uint32_t c = comp[start];
  const std::size_t nn = tg.node_count();
  std::vector<std::int64_t> parent_edge(nn, -1);
  std::vector<char> seen(nn, 0);
  std::queue<NodeId> q;
  q.push(start);
  const auto& off = tg.offsets();
  const auto& tgt = tg.targets();
  std::int64_t closing = -1;
  while (!q.empty() && closing < 0) {
    const NodeId v = q.front();
    q.pop();
    for (std::uint64_t e = off[v]; e < off[v + 1]; ++e) {
      const NodeId w = tgt[e];
      if (comp[w] != c) continue;
      if (w == start) {
        closing = static_cast<std::int64_t>(e);
        break;
      }
      if (!seen[w]) {
        seen[w] = 1;
        parent_edge[w] = static_cast<std::int64_t>(e);
        q.push(w);
      }
    }
  }
  // Map edge index back to its source node.
  auto source_of = [&](std::uint64_t e) {
    return static_cast<NodeId>(std::upper_bound(off.begin(), off.end(), e) - off.begin() - 1);
  };
  std::vector<TgEdge> cycle;
  std::uint64_t e = static_cast<std::uint64_t>(closing);
  for (;;) {
    const NodeId from = source_of(e);
    cycle.push_back({from, tg.labels()[e], tgt[e]});
    if (from == start) break;
    e = static_cast<std::uint64_t>(parent_edge[from]);
  }
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

namespace {

// Kahn's algorithm, optionally ignoring edges labelled `skip`.
bool topo_order(const TransitionGraph& tg, std::vector<NodeId>* order,
                std::optional<PlayerId> skip = std::nullopt) {
  const std::size_t nn = tg.node_count();
  const auto& off = tg.offsets();
  const auto& tgt = tg.targets();
  const auto& lab = tg.labels();
  std::vector<std::uint32_t> indeg(nn, 0);
  for (std::uint64_t e = 0; e < tgt.size(); ++e) {
    if (skip && lab[e] == *skip) continue;
    ++indeg[tgt[e]];
  }
  std::vector<NodeId> queue;
  queue.reserve(nn);
  for (NodeId v = 0; v < nn; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (std::uint64_t e = off[v]; e < off[v + 1]; ++e) {
      if (skip && lab[e] == *skip) continue;
      if (--indeg[tgt[e]] == 0) queue.push_back(tgt[e]);
    }
  }
  const bool acyclic = queue.size() == nn;
  if (order) *order = std::move(queue);
  return acyclic;
}

}  // namespace

bool is_acyclic(const TransitionGraph& tg) { return topo_order(tg, nullptr); }

bool every_cycle_moves(const TransitionGraph& tg, PlayerId player) {
  return topo_order(tg, nullptr, player);
}

std::uint64_t longest_path(const TransitionGraph& tg) {
  std::vector<NodeId> order;
  if (!topo_order(tg, &order)) throw CycleFound("longest_path: transition graph has a cycle");
  const auto& off = tg.offsets();
  const auto& tgt = tg.targets();
  std::vector<std::uint64_t> dist(tg.node_count(), 0);
  std::uint64_t best = 0;
  for (NodeId v : order) {
    for (std::uint64_t e = off[v]; e < off[v + 1]; ++e) {
      dist[tgt[e]] = std::max(dist[tgt[e]], dist[v] + 1);
      best = std::max(best, dist[tgt[e]]);
    }
  }
  return best;
}

bool check_cycle_player_counts(const TransitionGraph& tg, const std::vector<TgEdge>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("empty edge sequence is not a cycle");
  std::vector<std::size_t> count(tg.player_count(), 0);
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const TgEdge& e = cycle[k];
    if (e.from >= tg.node_count() || tg.successor(e.from, e.player) != e.to) {
      throw std::invalid_argument("edge " + std::to_string(k) + " is not in the transition graph");
    }
    if (cycle[(k + 1) % cycle.size()].from != e.to) {
      throw std::invalid_argument("edge " + std::to_string(k) + " does not continue the walk");
    }
    ++count.at(e.player);
  }
  return std::all_of(count.begin(), count.end(), [](std::size_t c) { return c >= 2; });
}

namespace {

// Johnson's elementary circuit enumeration, restricted per start node to the
// start's strongly connected component.
class CircuitFinder {
 public:
  CircuitFinder(const TransitionGraph& tg,
                const std::function<bool(const std::vector<TgEdge>&)>& visit, std::uint64_t limit)
      : tg_(tg), visit_(visit), limit_(limit) {
    comp_ = strongly_connected_components(tg_);
    blocked_.assign(tg_.node_count(), 0);
    b_.resize(tg_.node_count());
  }

  std::uint64_t run() {
    for (NodeId s = 0; s < tg_.node_count() && !stop_; ++s) {
      start_ = s;
      // Only nodes >= s of s's component participate.
      for (NodeId v = s; v < tg_.node_count(); ++v) {
        if (comp_[v] == comp_[s]) {
          blocked_[v] = 0;
          b_[v].clear();
        }
      }
      circuit(s);
    }
    return found_;
  }

 private:
  bool allowed(NodeId w) const { return w >= start_ && comp_[w] == comp_[start_]; }

  void unblock(NodeId u) {
    blocked_[u] = 0;
    std::vector<NodeId> pending;
    pending.swap(b_[u]);
    for (NodeId w : pending) {
      if (blocked_[w]) unblock(w);
    }
  }

  bool circuit(NodeId v) {
    bool closed = false;
    blocked_[v] = 1;
    const auto& off = tg_.offsets();
    for (std::uint64_t e = off[v]; e < off[v + 1] && !stop_; ++e) {
      const NodeId w = tg_.targets()[e];
      if (!allowed(w)) continue;
      path_.push_back({v, tg_.labels()[e], w});
      if (w == start_) {
        closed = true;
        ++found_;
        if (!visit_(path_) || found_ >= limit_) stop_ = true;
      } else if (!blocked_[w] && circuit(w)) {
        closed = true;
      }
      path_.pop_back();
    }
    if (closed) {
      unblock(v);
    } else {
      for (std::uint64_t e = off[v]; e < off[v + 1]; ++e) {
        const NodeId w = tg_.targets()[e];
        if (!allowed(w)) continue;
        auto& list = b_[w];
        if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
      }
    }
    return closed;
  }

  const TransitionGraph& tg_;
  const std::function<bool(const std::vector<TgEdge>&)>& visit_;
  std::uint64_t limit_;
  std::vector<std::uint32_t> comp_;
  std::vector<char> blocked_;
  std::vector<std::vector<NodeId>> b_;
  std::vector<TgEdge> path_;
  NodeId start_ = 0;
  std::uint64_t found_ = 0;
  bool stop_ = false;
};

}  // namespace

std::uint64_t for_each_simple_cycle(const TransitionGraph& tg,
                                    const std::function<bool(const std::vector<TgEdge>&)>& visit,
                                    std::uint64_t limit) {
  if (limit == 0) return 0;
  return CircuitFinder(tg, visit, limit).run();
}

std::optional<TgEdge> potential_violation(const Game& game, const TransitionGraph& tg,
                                          const Potential& phi) {
  std::vector<std::vector<std::int64_t>> value;
  value.reserve(tg.node_count());
  for (NodeId v = 0; v < tg.node_count(); ++v) value.push_back(phi(tg.decode(game, v)));
  const auto& off = tg.offsets();
  for (NodeId v = 0; v < tg.node_count(); ++v) {
    for (std::uint64_t e = off[v]; e < off[v + 1]; ++e) {
      const NodeId w = tg.targets()[e];
      if (!(value[w] < value[v])) return TgEdge{v, tg.labels()[e], w};
    }
  }
  return std::nullopt;
}

bool verify_potential(const Game& game, const TransitionGraph& tg, const Potential& phi) {
  return !potential_violation(game, tg, phi).has_value();
}

void write_dot(std::ostream& os, const Game& game, const TransitionGraph& tg) {
  auto name = [&](NodeId v) {
    std::string s;
    const State st = tg.decode(game, v);
    for (PlayerId i = 0; i < game.player_count(); ++i) {
      s += std::to_string(*game.slot_of(i, st.choice(i)));
    }
    return s;
  };
  os << "digraph TG {\n";
  for (NodeId v = 0; v < tg.node_count(); ++v) {
    os << "  n" << v << " [label=\"" << name(v) << "\"" << (tg.out_degree(v) == 0 ? ", shape=doublecircle" : "")
       << "];\n";
  }
  for (NodeId v = 0; v < tg.node_count(); ++v) {
    for (const auto& e : tg.out_edges(v)) {
      os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.player << "\"];\n";
    }
  }
  os << "}\n";
}

}  // namespace brdyn
