#pragma once

#include <cstdint>
#include <vector>

namespace brdyn {

/// Signed token multiplicities per resource id, relative to a reference
/// congestion: +k means k overload tokens, −k means k underload tokens.
struct TokenMap {
  std::vector<int> tokens;
  std::vector<std::uint32_t> reference;

  int overload_count() const;
  int underload_count() const;
  /// Total number of tokens of both kinds.
  int total() const { return overload_count() + underload_count(); }
  bool empty() const { return total() == 0; }

  friend bool operator==(const TokenMap&, const TokenMap&) = default;
};

}  // namespace brdyn
