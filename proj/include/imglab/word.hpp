#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace imglab {

// Hard cap on word length; guards against runaway relator expansion.
inline constexpr std::size_t kMaxWordLetters = 1'000'000;

/// Freely reduced word over the involutive generators {a, b, c}.
/// The empty word is the identity and serializes as "e".
class Word {
 public:
  Word() = default;

  // Parses "e", "" or a string over {a,b,c}; reduces. Throws InputError.
  static Word parse(std::string_view text);

  const std::string& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::string str() const { return letters_.empty() ? "e" : letters_; }

  // Appends one letter with involution cancellation; stays reduced.
  void push(char letter);
  void clear() { letters_.clear(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

// Free reduction of a raw letter sequence (a^2 = b^2 = c^2 = 1).
Word reduce(std::string_view raw);

Word multiply(const Word& g, const Word& h);
Word inverse(const Word& g);                       // reversal: letters are involutions
Word conjugate(const Word& g, const Word& by);     // by^{-1} g by
Word commutator(const Word& x, const Word& y);     // x^{-1} y^{-1} x y
Word power(const Word& g, int k);

// Root permutation of the binary tree: identity or the transposition.
enum class BitPerm : unsigned char { Id = 0, Swap = 1 };

inline BitPerm compose(BitPerm lhs, BitPerm rhs) {
  return static_cast<BitPerm>(static_cast<unsigned char>(lhs) ^
                              static_cast<unsigned char>(rhs));
}

// First-level wreath decomposition g = (g|_0, g|_1) sigma_g.
struct SectionDecomposition {
  BitPerm root = BitPerm::Id;
  Word left;
  Word right;
};

SectionDecomposition sections(const Word& g);

// Parity of the root permutation without computing sections.
BitPerm root_permutation(const Word& g);

// Validates a vertex string over {0,1}; empty string is the tree root.
void check_vertex(std::string_view vertex);

// Iterated first-level section g|_v, via g|_(uv) = (g|_u)|_v.
Word section_at(const Word& g, std::string_view vertex);

// Tree action; leftmost letter acts first (gh(w) = h(g(w))).
std::string act(const Word& g, std::string_view vertex);

}  // namespace imglab
