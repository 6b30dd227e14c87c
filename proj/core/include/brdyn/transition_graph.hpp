#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "brdyn/game.hpp"

namespace brdyn {

using NodeId = std::uint32_t;

struct TgEdge {
  NodeId from;
  PlayerId player;
  NodeId to;

  friend bool operator==(const TgEdge&, const TgEdge&) = default;
};

/// Complete best-response transition graph of a small game.
///
/// Nodes are states packed in mixed radix: player i contributes its strategy
/// slot times the product of the slot counts of players 0..i−1. For
/// two-strategy games this is a bitstring with player i at bit i.
class TransitionGraph {
 public:
  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  std::size_t player_count() const noexcept { return radix_.size(); }

  std::size_t out_degree(NodeId v) const { return offsets_.at(v + 1) - offsets_[v]; }
  /// Outgoing edges of v, ordered by player id.
  std::vector<TgEdge> out_edges(NodeId v) const;
  std::optional<NodeId> successor(NodeId v, PlayerId player) const;
  std::vector<NodeId> sinks() const;

  NodeId encode(const Game& game, const State& s) const;
  State decode(const Game& game, NodeId v) const;

  const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
  const std::vector<NodeId>& targets() const noexcept { return targets_; }
  const std::vector<PlayerId>& labels() const noexcept { return labels_; }

  friend bool operator==(const TransitionGraph& a, const TransitionGraph& b) {
    return a.radix_ == b.radix_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_ &&
           a.labels_ == b.labels_;
  }

 private:
  friend TransitionGraph build_tg(const Game&, std::size_t, unsigned);

  std::vector<std::uint32_t> radix_;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<PlayerId> labels_;
};

inline constexpr std::size_t kDefaultNodeCap = std::size_t{1} << 21;

/// Enumerates every state and every best-response edge. Throws CapExceeded if
/// the state count is above `node_cap`. `threads` = 0 picks the hardware count;
/// the result does not depend on it.
TransitionGraph build_tg(const Game& game, std::size_t node_cap = kDefaultNodeCap,
                         unsigned threads = 0);

/// Strongly connected components (Tarjan); component ids in reverse topological order.
std::vector<std::uint32_t> strongly_connected_components(const TransitionGraph& tg,
                                                         std::uint32_t* component_count = nullptr);

/// Some directed cycle as a closed sequence of edges, if the graph has one.
std::optional<std::vector<TgEdge>> find_cycle(const TransitionGraph& tg);

bool is_acyclic(const TransitionGraph& tg);

/// Longest directed path. Throws CycleFound if the graph has a cycle.
std::uint64_t longest_path(const TransitionGraph& tg);

/// True iff every player labels at least two edges of `cycle`. Throws
/// std::invalid_argument if `cycle` is not a closed walk of tg's edges.
bool check_cycle_player_counts(const TransitionGraph& tg, const std::vector<TgEdge>& cycle);

/// Calls `visit` on every simple cycle (as its edge sequence) until it returns
/// false or `limit` cycles were reported. Returns the number visited.
std::uint64_t for_each_simple_cycle(const TransitionGraph& tg,
                                    const std::function<bool(const std::vector<TgEdge>&)>& visit,
                                    std::uint64_t limit = UINT64_MAX);

/// True iff removing all edges labelled `player` leaves an acyclic graph, i.e.
/// every cycle contains a move of `player`.
bool every_cycle_moves(const TransitionGraph& tg, PlayerId player);

using Potential = std::function<std::vector<std::int64_t>(const State&)>;

/// First edge along which `phi` does not strictly decrease lexicographically.
std::optional<TgEdge> potential_violation(const Game& game, const TransitionGraph& tg,
                                          const Potential& phi);
bool verify_potential(const Game& game, const TransitionGraph& tg, const Potential& phi);

/// Graphviz rendering; nodes are labelled by their packed slot string.
void write_dot(std::ostream& os, const Game& game, const TransitionGraph& tg);

}  // namespace brdyn
