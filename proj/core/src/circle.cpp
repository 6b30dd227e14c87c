#include "brdyn/circle.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>
#include <numeric>
#include <stdexcept>
#include <string>

#include "brdyn/errors.hpp"

namespace brdyn {

int TokenMap::overload_count() const {
  int c = 0;
  for (int t : tokens) c += t > 0 ? t : 0;
  return c;
}

int TokenMap::underload_count() const {
  int c = 0;
  for (int t : tokens) c += t < 0 ? -t : 0;
  return c;
}

std::string_view to_string(Direction d) {
  return d == Direction::Clockwise ? "clockwise" : "anticlockwise";
}

std::string_view to_string(CaseTag c) {
  switch (c) {
    case CaseTag::Case1:
      return "case1";
    case CaseTag::Case2:
      return "case2";
    case CaseTag::Case3:
      return "case3";
    case CaseTag::Case4:
      return "case4";
  }
  return "?";
}

std::pair<Direction, Direction> token_directions(PlayerType t) {
  using D = Direction;
  switch (t) {
    case PlayerType::T2:
      return {D::Anticlockwise, D::Clockwise};
    case PlayerType::T2p:
      return {D::Clockwise, D::Anticlockwise};
    case PlayerType::T3:
      return {D::Clockwise, D::Clockwise};
    case PlayerType::T3p:
      return {D::Anticlockwise, D::Anticlockwise};
    case PlayerType::T1:
    case PlayerType::T1p:
      break;
  }
  throw std::invalid_argument("type " + std::string(to_string(t)) + " has no token direction");
}

namespace {

void require_circle(const GraphGame& g) {
  if (g.topology != Topology::Circle) throw InvalidGame("game is not a circle");
}

/// Per-position view of a circle game without type-1 players.
struct Ring {
  std::size_t n;
  std::vector<Direction> over;   // direction of overload tokens via player p
  std::vector<Direction> under;
  std::vector<bool> tp_over;     // termination point at resource position p
  std::vector<bool> tp_under;

  explicit Ring(const GraphGame& g) : n(g.ring_players.size()) {
    require_circle(g);
    over.resize(n);
    under.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      std::tie(over[p], under[p]) = token_directions(classify_player_type(g, g.ring_players[p]));
    }
    tp_over.resize(n);
    tp_under.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t prev = (p + n - 1) % n;
      tp_over[p] = over[prev] == Direction::Clockwise && over[p] == Direction::Anticlockwise;
      tp_under[p] = under[prev] == Direction::Clockwise && under[p] == Direction::Anticlockwise;
    }
  }

  const std::vector<Direction>& dirs(TokenKind k) const {
    return k == TokenKind::Overload ? over : under;
  }
  const std::vector<bool>& tps(TokenKind k) const {
    return k == TokenKind::Overload ? tp_over : tp_under;
  }
  bool has_tp(TokenKind k) const {
    for (bool b : tps(k)) {
      if (b) return true;
    }
    return false;
  }

  /// Moves a token of kind k at position p makes in direction d before it
  /// stops at a termination point; 0 if it cannot move that way.
  std::int64_t reach(TokenKind k, std::size_t p, Direction d) const {
    const auto& dir = dirs(k);
    const auto& tp = tps(k);
    if (d == Direction::Clockwise) {
      if (dir[p] != Direction::Clockwise) return 0;
      for (std::size_t s = 1; s <= n; ++s) {
        if (tp[(p + s) % n]) return static_cast<std::int64_t>(s);
      }
    } else {
      if (dir[(p + n - 1) % n] != Direction::Anticlockwise) return 0;
      for (std::size_t s = 1; s <= n; ++s) {
        if (tp[(p + n * 2 - s) % n]) return static_cast<std::int64_t>(s);
      }
    }
    throw std::logic_error("token has no termination point in its direction");
  }

  std::int64_t distance(TokenKind k, std::size_t p) const {
    return std::max(reach(k, p, Direction::Clockwise), reach(k, p, Direction::Anticlockwise));
  }
};

std::vector<int> tokens_by_position(const GraphGame& g, const State& s) {
  const std::size_t n = g.ring_resources.size();
  std::vector<int> t(n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::uint32_t c = s.congestion(g.ring_resources[p]);
    if (c > 2) {
      throw std::invalid_argument("resource " + std::to_string(g.ring_resources[p]) +
                                  " has congestion " + std::to_string(c));
    }
    t[p] = static_cast<int>(c) - 1;
  }
  return t;
}

/// Steps from p in direction d to the first position whose token satisfies pred.
template <class Pred>
std::optional<std::size_t> first_token(const std::vector<int>& tok, std::size_t p, Direction d,
                                       Pred pred) {
  const std::size_t n = tok.size();
  for (std::size_t s = 1; s < n; ++s) {
    const std::size_t q = d == Direction::Clockwise ? (p + s) % n : (p + n - s) % n;
    if (pred(tok[q])) return s;
  }
  return std::nullopt;
}

}  // namespace

TokenMap place_tokens(const GraphGame& circle, const State& state) {
  require_circle(circle);
  const auto by_pos = tokens_by_position(circle, state);
  TokenMap m;
  m.tokens.assign(circle.base.resource_count(), 0);
  m.reference.assign(circle.base.resource_count(), 1);
  for (std::size_t p = 0; p < by_pos.size(); ++p) m.tokens[circle.ring_resources[p]] = by_pos[p];
  return m;
}

State tokens_to_state(const GraphGame& circle, const TokenMap& tokens) {
  require_circle(circle);
  const std::size_t n = circle.ring_players.size();
  if (tokens.tokens.size() != circle.base.resource_count()) {
    throw std::invalid_argument("token map has the wrong size");
  }
  if (tokens.empty()) throw std::invalid_argument("empty placement does not determine a state");
  int sum = 0;
  for (int t : tokens.tokens) {
    if (t < -1 || t > 1) throw std::invalid_argument("circle resources carry at most one token");
    sum += t;
  }
  if (sum != 0) throw std::invalid_argument("placement needs as many overloads as underloads");
  // Congestion at r_p is [p−1 plays one] + [p plays zero], so b_p = b_{p−1} − token(r_p).
  std::vector<int> offset(n);
  for (std::size_t p = 1; p < n; ++p) {
    offset[p] = offset[p - 1] - tokens.tokens[circle.ring_resources[p]];
  }
  const auto [lo, hi] = std::minmax_element(offset.begin(), offset.end());
  if (*hi - *lo != 1) throw std::invalid_argument("placement is not realizable");
  std::vector<bool> ones(circle.player_count());
  for (std::size_t p = 0; p < n; ++p) ones[circle.ring_players[p]] = offset[p] - *lo == 1;
  State s = circle.state_from_bits(ones);
  if (place_tokens(circle, s) != tokens) throw std::invalid_argument("placement is not realizable");
  return s;
}

TerminationPoints termination_points(const GraphGame& circle) {
  const Ring ring(circle);
  TerminationPoints tp;
  for (std::size_t p = 0; p < ring.n; ++p) {
    if (ring.tp_over[p]) tp.overload.push_back(circle.ring_resources[p]);
    if (ring.tp_under[p]) tp.underload.push_back(circle.ring_resources[p]);
  }
  return tp;
}

CaseTag classify_case(const GraphGame& circle) {
  const Ring ring(circle);
  const bool o = ring.has_tp(TokenKind::Overload);
  const bool u = ring.has_tp(TokenKind::Underload);
  if (o && u) return CaseTag::Case1;
  if (o || u) return CaseTag::Case2;
  // No termination points: both kinds move uniformly.
  return ring.over[0] != ring.under[0] ? CaseTag::Case3 : CaseTag::Case4;
}

std::int64_t potential_case1(const GraphGame& circle, const State& state) {
  const Ring ring(circle);
  if (!ring.has_tp(TokenKind::Overload) || !ring.has_tp(TokenKind::Underload)) {
    throw std::invalid_argument("game is not in case 1");
  }
  const auto tok = tokens_by_position(circle, state);
  std::int64_t phi = 0;
  for (std::size_t p = 0; p < ring.n; ++p) {
    if (tok[p] == 0) continue;
    const TokenKind k = tok[p] > 0 ? TokenKind::Overload : TokenKind::Underload;
    phi += 1 + ring.distance(k, p);
  }
  return phi;
}

std::pair<std::int64_t, std::int64_t> potential_case2(const GraphGame& circle,
                                                      const State& state) {
  const Ring ring(circle);
  const bool o = ring.has_tp(TokenKind::Overload);
  const bool u = ring.has_tp(TokenKind::Underload);
  if (o == u) throw std::invalid_argument("game is not in case 2");
  const TokenKind stopping = o ? TokenKind::Overload : TokenKind::Underload;
  const int stopping_sign = o ? 1 : -1;
  const Direction wander = o ? ring.under[0] : ring.over[0];

  const auto tok = tokens_by_position(circle, state);
  std::int64_t overloads = 0;
  std::int64_t sum = 0;
  for (std::size_t p = 0; p < ring.n; ++p) {
    if (tok[p] > 0) ++overloads;
    if (tok[p] == 0) continue;
    if (tok[p] == stopping_sign) {
      sum += ring.distance(stopping, p);
      continue;
    }
    const auto gap = first_token(tok, p, wander, [&](int t) { return t == stopping_sign; });
    if (!gap) throw std::logic_error("token without a partner");
    const std::size_t q =
        wander == Direction::Clockwise ? (p + *gap) % ring.n : (p + ring.n - *gap) % ring.n;
    sum += static_cast<std::int64_t>(*gap) + ring.reach(stopping, q, wander);
  }
  return {overloads, sum};
}

std::pair<std::int64_t, std::int64_t> potential_case3(const GraphGame& circle,
                                                      const State& state) {
  const Ring ring(circle);
  if (ring.has_tp(TokenKind::Overload) || ring.has_tp(TokenKind::Underload) ||
      ring.over[0] == ring.under[0]) {
    throw std::invalid_argument("game is not in case 3");
  }
  const auto tok = tokens_by_position(circle, state);
  std::int64_t overloads = 0;
  std::int64_t sum = 0;
  for (std::size_t p = 0; p < ring.n; ++p) {
    if (tok[p] <= 0) continue;
    ++overloads;
    const auto gap = first_token(tok, p, ring.over[0], [](int t) { return t < 0; });
    if (!gap) throw std::logic_error("overload without an underload");
    sum += static_cast<std::int64_t>(*gap);
  }
  return {overloads, sum};
}

namespace {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
Rational operator*(const Rational& a, const Rational& b) {
  return make_rational(a.num * b.num, a.den * b.den);
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw std::domain_error("division by zero");
  return make_rational(a.num * b.den, a.den * b.num);
}

}  // namespace

Rational walk_expected_steps(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("walk start outside {0..n}");
  if (k == 0 || k == n) return {0, 1};
  // Interior equations −E_{j−1} + 2E_j − E_{j+1} = 2 for j = 1..n−1 with
  // E_0 = E_n = 0, solved by forward elimination and back substitution.
  const std::size_t m = n - 1;
  std::vector<Rational> upper(m), rhs(m);
  const Rational two{2, 1}, minus_one{-1, 1};
  for (std::size_t j = 0; j < m; ++j) {
    const Rational diag = j == 0 ? two : two - minus_one * upper[j - 1];
    upper[j] = minus_one / diag;
    rhs[j] = j == 0 ? two / diag : (two - minus_one * rhs[j - 1]) / diag;
  }
  std::vector<Rational> e(m);
  e[m - 1] = rhs[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) e[j] = rhs[j] - upper[j] * e[j + 1];
  return e[k - 1];
}

std::vector<std::int64_t> token_count_trace(const GraphGame& circle, const RunRecord& record) {
  require_circle(circle);
  State s = initial_state_of(circle.base, record);
  auto weight = [&](ResourceId r) {
    return static_cast<std::int64_t>(std::abs(static_cast<int>(s.congestion(r)) - 1));
  };
  std::int64_t total = 0;
  for (ResourceId r = 0; r < circle.base.resource_count(); ++r) total += weight(r);
  std::vector<std::int64_t> out{total};
  out.reserve(record.trace->size() + 1);
  for (const Move& mv : *record.trace) {
    total -= weight(mv.from) + weight(mv.to);
    s.move(mv.player, mv.to);
    total += weight(mv.from) + weight(mv.to);
    out.push_back(total);
  }
  return out;
}

std::vector<Block> synchronized_blocks(const GraphGame& circle, const State& state) {
  require_circle(circle);
  const std::size_t n = circle.ring_players.size();
  std::vector<bool> ones(n);
  for (std::size_t p = 0; p < n; ++p) ones[p] = circle.plays_one(state, circle.ring_players[p]);
  std::size_t start = 0;
  while (start < n && ones[start] == ones[(start + n - 1) % n]) ++start;
  if (start == n) return {};
  std::vector<Block> blocks;
  for (std::size_t s = 0; s < n;) {
    const std::size_t p = (start + s) % n;
    std::size_t len = 1;
    while (s + len < n && ones[(p + len) % n] == ones[p]) ++len;
    blocks.push_back({p, len, ones[p]});
    s += len;
  }
  return blocks;
}

State two_block_state(const GraphGame& circle, std::size_t zeros) {
  require_circle(circle);
  const std::size_t n = circle.ring_players.size();
  if (zeros > n) throw std::invalid_argument("more zeros than players");
  std::vector<bool> ones(n);
  for (std::size_t p = zeros; p < n; ++p) ones[circle.ring_players[p]] = true;
  return circle.state_from_bits(ones);
}

}  // namespace brdyn
