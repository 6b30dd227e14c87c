#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brdyn {

/// Game data violates the model (bad strategy sets, non-increasing tables, ties).
class InvalidGame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two delay values compared by a best response are equal.
class TieViolation : public InvalidGame {
 public:
  using InvalidGame::InvalidGame;
};

/// An enumeration would exceed its configured state cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Analysis requires an acyclic transition graph.
class CycleFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A forced move sequence listed a player with no incentive to move.
class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace brdyn
