#pragma once

#include <compare>
#include <string>
#include <vector>

namespace stylemark {

// Observable identity of one action: the engine's (state, sub-state, basic move).
struct ActionTriple {
  std::string state;
  std::string sub_state;
  std::string basic_move;

  auto operator<=>(const ActionTriple&) const = default;

  // "state/sub_state/basic_move"
  std::string key() const { return state + '/' + sub_state + '/' + basic_move; }
};

// Closed token sets declared in a recording header.
struct Alphabets {
  std::vector<std::string> state;
  std::vector<std::string> sub_state;
  std::vector<std::string> basic_move;

  bool operator==(const Alphabets&) const = default;

  bool contains(const ActionTriple& a) const;
};

}  // namespace stylemark
