#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace imglab::mealy {

/// Binary invertible Mealy automaton (Q, {0,1}, pi, lambda); transition and
/// output are total on states x {0,1}. Immutable after construction.
struct MealyAutomaton {
  std::vector<std::string> states;
  std::vector<std::array<int, 2>> transition;  // state index per (state, bit)
  std::vector<std::array<int, 2>> output;      // output bit per (state, bit)

  int index_of(std::string_view state) const;  // InputError when unknown
};

// The four-state automaton generating IMG(z^2+i): states {1, a, b, c},
// a = (1,1)s, b = (a,c), c = (b,1).
MealyAutomaton img_automaton();

// One-state identity automaton.
MealyAutomaton identity_automaton();

bool is_invertible(const MealyAutomaton& m);

// Sequential transduction of the vertex by the given state.
// Throws InvalidAutomatonError when the automaton is not invertible.
std::string automaton_act(const MealyAutomaton& m, std::string_view state,
                          std::string_view vertex);

// Deterministic Moore-diagram DOT text; one edge per (state, bit) labeled
// "bit|output".
std::string moore_dot(const MealyAutomaton& m);

std::string automaton_to_json(const MealyAutomaton& m);
MealyAutomaton automaton_from_json(std::string_view text);

}  // namespace imglab::mealy
