#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <string>

#include "imglab/normal_form.hpp"
#include "imglab/word.hpp"

using namespace imglab;

namespace {

// Independent D4 oracle: a and c as 2x2 reflection matrices with ac a
// quarter turn, so a^2 = c^2 = (ac)^4 = I.
struct Mat2 {
  int m[2][2];
  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out.m[i][j] = l.m[i][0] * r.m[0][j] + l.m[i][1] * r.m[1][j];
    return out;
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

const Mat2 kIdent{{{1, 0}, {0, 1}}};
const Mat2 kRefA{{{1, 0}, {0, -1}}};
const Mat2 kRefC{{{0, 1}, {1, 0}}};

Mat2 mat_of(std::string_view rep) {
  Mat2 out = kIdent;
  for (char ch : rep) out = out * (ch == 'a' ? kRefA : kRefC);
  return out;
}

}  // namespace

TEST_CASE("D4 table matches the matrix model") {
  const auto& reps = d4::reps();
  // The 8 representatives are pairwise distinct as matrices.
  for (int i = 0; i < d4::kOrder; ++i)
    for (int j = i + 1; j < d4::kOrder; ++j)
      CHECK(!(mat_of(reps[i]) == mat_of(reps[j])));
  for (int i = 0; i < d4::kOrder; ++i) {
    for (int j = 0; j < d4::kOrder; ++j) {
      Mat2 expected = mat_of(reps[i]) * mat_of(reps[j]);
      CHECK(mat_of(reps[d4::multiply(i, j)]) == expected);
    }
  }
  CHECK(d4::from_letters("acacacac") == d4::kIdentity);
  CHECK(d4::from_letters("caca") == d4::from_letters("acac"));
}

TEST_CASE("normal form examples") {
  CHECK(gamma_normal_form(Word::parse("e")).is_identity());
  CHECK(gamma_length(Word::parse("e")) == 0);

  // cacac multiplies out to the single D4 syllable aca.
  auto nf = gamma_normal_form(Word::parse("cacac"));
  CHECK(nf.syllables.size() == 1);
  CHECK(nf.length == 3);
  CHECK(nf.canonical_word().str() == "aca");

  // bacab is already a normal form: b * (aca) * b.
  auto nf2 = gamma_normal_form(Word::parse("bacab"));
  CHECK(nf2.syllables.size() == 3);
  CHECK(nf2.length == 5);
  CHECK(nf2.canonical_word().str() == "bacab");

  CHECK(gamma_length(Word::parse("acacacac")) == 0);
  CHECK(gamma_canonical(Word::parse("bacacacacb")).str() == "e");
}

TEST_CASE("canonical word is idempotent and length-consistent") {
  std::mt19937_64 rng(3);
  static const char gens[3] = {'a', 'b', 'c'};
  for (int i = 0; i < 500; ++i) {
    std::string s;
    char prev = 0;
    int len = static_cast<int>(rng() % 80);
    while (static_cast<int>(s.size()) < len) {
      char ch = gens[rng() % 3];
      if (ch == prev) continue;
      s.push_back(ch);
      prev = ch;
    }
    Word w = Word::parse(s);
    Word canon = gamma_canonical(w);
    CHECK(gamma_canonical(canon) == canon);
    CHECK(static_cast<int>(canon.size()) == gamma_length(w));
    CHECK(gamma_length(canon) == gamma_length(w));
    // Canonical word never beats the raw representative in length.
    CHECK(canon.size() <= w.size());
  }
}

TEST_CASE("syllables alternate factors") {
  std::mt19937_64 rng(9);
  static const char gens[3] = {'a', 'b', 'c'};
  for (int i = 0; i < 200; ++i) {
    std::string s;
    char prev = 0;
    while (static_cast<int>(s.size()) < 40) {
      char ch = gens[rng() % 3];
      if (ch == prev) continue;
      s.push_back(ch);
      prev = ch;
    }
    auto nf = gamma_normal_form(Word::parse(s));
    for (std::size_t k = 1; k < nf.syllables.size(); ++k) {
      CHECK(nf.syllables[k].from_b_factor != nf.syllables[k - 1].from_b_factor);
    }
    for (const auto& syl : nf.syllables) {
      if (!syl.from_b_factor) CHECK(syl.d4 != d4::kIdentity);
    }
  }
}
