#pragma once

#include <array>
#include <string>
#include <vector>

#include "imglab/word.hpp"

namespace imglab::presentation {

inline constexpr int kFamilyCount = 7;
inline constexpr int kMaxSubstitutionDepth = 8;  // |phi^n(w)| can triple per step

/// The substitution a -> b, b -> c, c -> aba applied n times, reducing after
/// each pass.
Word substitute(const Word& w, int n);

// Base relators: a^2, (ac)^4, [c,ab]^2, [c,bab]^2, [c,ababa]^2, [c,ababab]^2,
// [c,bababab]^2. The first reduces to the empty word.
const std::array<Word, kFamilyCount>& relator_bases();

// phi^n applied to base j (1-based); may be empty for family 1.
Word relator(int family, int n);

// U1 = (ba)^8, U2..U6 = the commutator squares, expanded and reduced.
std::array<Word, 6> u_words();

struct RelatorCheck {
  int family = 0;
  int n = 0;
  std::size_t length = 0;  // reduced letter length
  bool verified = false;
  int depth = 0;  // word-problem recursion depth
  double millis = 0.0;
};

/// Checks triviality of every phi^n image, n = 0..max_n, of all seven
/// families; max_n is capped at kMaxSubstitutionDepth.
std::vector<RelatorCheck> verify_relators(int max_n);

bool all_verified(const std::vector<RelatorCheck>& checks);

// CSV with header "family,n,length,verified,milliseconds".
std::string relator_report_csv(const std::vector<RelatorCheck>& checks);

/// phi(w) stabilizes the root and its left section equals w: the section
/// property behind the ascending HNN-extension.
bool phi_section_check(const Word& w);

/// Branch identities [b,c] = ([a,b],1) and [c,b^a] = ([b,c],1), checked via
/// the word problem plus an action comparison down to `depth` levels, with
/// [a,b] and [b,c] individually nontrivial.
bool branch_identity_check(int depth);

/// 4-generator, 10-relator HNN-extension presentation data as JSON text; the
/// seven word relators are verified trivial before emission.
std::string hnn_presentation();

}  // namespace imglab::presentation
