#pragma once

#include <cstddef>
#include <optional>

#include "imglab/word.hpp"

namespace imglab {

struct TrivialityStats {
  int max_depth = 0;           // deepest section level visited
  std::size_t memo_size = 0;   // distinct normal forms examined
};

/// Word problem for G = IMG(z^2+i): true iff g acts trivially on the whole
/// tree. Recurses on first-level sections of the Gamma-canonical word;
/// level-2 sections of a length-l element have length <= (l+1)/2, so the
/// recursion terminates. The memo is call-local.
bool is_trivial(const Word& g, TrivialityStats* stats = nullptr);

// Equality as tree automorphisms.
bool equal_elements(const Word& g, const Word& h);

/// Least k <= cap with g^k trivial; nullopt when the cap is exceeded.
std::optional<int> element_order(const Word& g, int cap);

}  // namespace imglab
