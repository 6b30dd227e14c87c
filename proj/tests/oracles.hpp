#pragma once

// Straightforward re-implementations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <brdyn/game.hpp>

namespace oracle {

using brdyn::Game;
using brdyn::PlayerId;
using brdyn::ResourceId;
using Profile = std::vector<ResourceId>;

inline std::vector<std::uint32_t> congestion(const Game& g, const Profile& p) {
  std::vector<std::uint32_t> c(g.resource_count(), 0);
  for (ResourceId r : p) ++c[r];
  return c;
}

// Best response as the cheapest option, where staying costs d(n_r) and moving costs d(n_r' + 1).
inline ResourceId best_response(const Game& g, const Profile& p, PlayerId i) {
  const auto c = congestion(g, p);
  ResourceId best = p[i];
  brdyn::Delay best_cost = g.delay(i, p[i], c[p[i]]);
  for (ResourceId r : g.strategies(i)) {
    if (r == p[i]) continue;
    const brdyn::Delay cost = g.delay(i, r, c[r] + 1);
    if (cost < best_cost) {
      best = r;
      best_cost = cost;
    }
  }
  return best;
}

inline std::vector<Profile> all_profiles(const Game& g) {
  std::vector<Profile> out{{}};
  for (PlayerId i = 0; i < g.player_count(); ++i) {
    std::vector<Profile> next;
    for (const Profile& p : out) {
      for (ResourceId r : g.strategies(i)) {
        Profile q = p;
        q.push_back(r);
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

using EdgeSet = std::set<std::tuple<Profile, PlayerId, Profile>>;

inline EdgeSet transition_edges(const Game& g) {
  EdgeSet edges;
  for (const Profile& p : all_profiles(g)) {
    for (PlayerId i = 0; i < g.player_count(); ++i) {
      const ResourceId br = best_response(g, p, i);
      if (br == p[i]) continue;
      Profile q = p;
      q[i] = br;
      edges.emplace(p, i, q);
    }
  }
  return edges;
}

using Adjacency = std::map<Profile, std::vector<Profile>>;

inline Adjacency adjacency(const Game& g) {
  Adjacency adj;
  for (const Profile& p : all_profiles(g)) adj[p];
  for (const auto& [from, i, to] : transition_edges(g)) adj[from].push_back(to);
  return adj;
}

// Depth-first search with colours; true if some node reaches itself.
inline bool has_cycle(const Adjacency& adj) {
  std::map<Profile, int> colour;
  std::function<bool(const Profile&)> visit = [&](const Profile& v) {
    colour[v] = 1;
    for (const Profile& w : adj.at(v)) {
      if (colour[w] == 1) return true;
      if (colour[w] == 0 && visit(w)) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (const auto& [v, _] : adj) {
    if (colour[v] == 0 && visit(v)) return true;
  }
  return false;
}

// Longest path in an acyclic adjacency by memoised recursion.
inline std::uint64_t longest_path(const Adjacency& adj) {
  std::map<Profile, std::uint64_t> memo;
  std::function<std::uint64_t(const Profile&)> depth = [&](const Profile& v) -> std::uint64_t {
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    std::uint64_t d = 0;
    for (const Profile& w : adj.at(v)) d = std::max(d, 1 + depth(w));
    return memo[v] = d;
  };
  std::uint64_t best = 0;
  for (const auto& [v, _] : adj) best = std::max(best, depth(v));
  return best;
}

inline bool is_nash(const Game& g, const Profile& p) {
  for (PlayerId i = 0; i < g.player_count(); ++i) {
    if (best_response(g, p, i) != p[i]) return false;
  }
  return true;
}

}  // namespace oracle
