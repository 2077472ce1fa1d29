#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "imglab/word.hpp"

namespace imglab {

/// Exact arithmetic in the dihedral factor D4 = <a, c | a^2, c^2, (ac)^4>.
/// Elements are indexed 0..7 by their stored geodesic representative.
namespace d4 {

inline constexpr int kOrder = 8;
inline constexpr int kIdentity = 0;

// Index order: e, a, c, ac, ca, aca, cac, acac.
const std::array<std::string_view, kOrder>& reps();
const std::array<int, kOrder>& geodesic_lengths();

int multiply(int lhs, int rhs);
int from_letters(std::string_view run);  // fold a run over {a,c}

}  // namespace d4

// One syllable of the C2 * D4 free-product normal form of Gamma.
struct GammaSyllable {
  bool from_b_factor = false;  // true: the involution b; false: nontrivial D4 element
  int d4 = d4::kIdentity;
};

/// Free-product normal form in Gamma = C2 * D4; `length` is the geodesic
/// length l(g), i.e. the minimum {a,b,c}-word length representing g in Gamma.
struct GammaNormalForm {
  std::vector<GammaSyllable> syllables;
  int length = 0;

  bool is_identity() const { return syllables.empty(); }
  Word canonical_word() const;  // concatenated geodesic representatives
};

GammaNormalForm gamma_normal_form(const Word& w);
int gamma_length(const Word& w);
Word gamma_canonical(const Word& w);

}  // namespace imglab
