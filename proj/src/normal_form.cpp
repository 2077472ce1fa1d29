#include "imglab/normal_form.hpp"

#include "imglab/errors.hpp"

namespace imglab {

namespace d4 {

namespace {

// rho^k a^f with rho = ac; a and c are reflections, so
// (k1,f1)(k2,f2) = (k1+k2, f2) when f1 = 0 and (k1-k2, 1-f2) when f1 = 1.
struct Pair {
  int k;
  int f;
};

constexpr Pair pair_mul(Pair l, Pair r) {
  if (l.f == 0) return {(l.k + r.k) & 3, r.f};
  return {(l.k - r.k) & 3, r.f ^ 1};
}

constexpr Pair kLetterA{0, 1};
constexpr Pair kLetterC{3, 1};  // solves a*c = rho

constexpr std::array<std::string_view, kOrder> kReps = {
    "", "a", "c", "ac", "ca", "aca", "cac", "acac"};
constexpr std::array<int, kOrder> kLengths = {0, 1, 1, 2, 2, 3, 3, 4};

constexpr Pair pair_of(std::string_view rep) {
  Pair p{0, 0};
  for (char ch : rep) p = pair_mul(p, ch == 'a' ? kLetterA : kLetterC);
  return p;
}

constexpr int pair_index(Pair p) {
  for (int i = 0; i < kOrder; ++i) {
    Pair q = pair_of(kReps[i]);
    if (q.k == p.k && q.f == p.f) return i;
  }
  return -1;
}

struct Table {
  std::array<std::array<int, kOrder>, kOrder> mul{};
  constexpr Table() {
    for (int i = 0; i < kOrder; ++i) {
      for (int j = 0; j < kOrder; ++j) {
        mul[i][j] = pair_index(pair_mul(pair_of(kReps[i]), pair_of(kReps[j])));
      }
    }
  }
};

constexpr Table kTable{};

}  // namespace

const std::array<std::string_view, kOrder>& reps() { return kReps; }
const std::array<int, kOrder>& geodesic_lengths() { return kLengths; }

int multiply(int lhs, int rhs) { return kTable.mul[lhs][rhs]; }

int from_letters(std::string_view run) {
  Pair p{0, 0};
  for (char ch : run) {
    if (ch != 'a' && ch != 'c') throw InputError("D4 run must be over {a,c}");
    p = pair_mul(p, ch == 'a' ? kLetterA : kLetterC);
  }
  return pair_index(p);
}

}  // namespace d4

Word GammaNormalForm::canonical_word() const {
  Word out;
  for (const GammaSyllable& syl : syllables) {
    if (syl.from_b_factor) {
      out.push('b');
    } else {
      for (char ch : d4::reps()[syl.d4]) out.push(ch);
    }
  }
  return out;
}

GammaNormalForm gamma_normal_form(const Word& w) {
  GammaNormalForm nf;
  auto& stack = nf.syllables;

  // Adjacent same-factor syllables merge; a merge that annihilates exposes a
  // top the *next* incoming syllable merges with, so one pass suffices.
  auto push_syllable = [&stack](GammaSyllable cur) {
    if (!cur.from_b_factor && cur.d4 == d4::kIdentity) return;
    if (!stack.empty() && stack.back().from_b_factor == cur.from_b_factor) {
      if (cur.from_b_factor) {
        stack.pop_back();  // b * b = e
        return;
      }
      cur.d4 = d4::multiply(stack.back().d4, cur.d4);
      stack.pop_back();
      if (cur.d4 == d4::kIdentity) return;
    }
    stack.push_back(cur);
  };

  const std::string& s = w.letters();
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == 'b') {
      push_syllable({true, d4::kIdentity});
      ++i;
    } else {
      std::size_t j = i;
      int acc = d4::kIdentity;
      while (j < s.size() && s[j] != 'b') {
        acc = d4::multiply(acc, s[j] == 'a' ? 1 : 2);
        ++j;
      }
      push_syllable({false, acc});
      i = j;
    }
  }

  nf.length = 0;
  for (const GammaSyllable& syl : nf.syllables) {
    nf.length += syl.from_b_factor ? 1 : d4::geodesic_lengths()[syl.d4];
  }
  return nf;
}

int gamma_length(const Word& w) { return gamma_normal_form(w).length; }

Word gamma_canonical(const Word& w) {
  return gamma_normal_form(w).canonical_word();
}

}  // namespace imglab
