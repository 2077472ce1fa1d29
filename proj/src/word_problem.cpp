#include "imglab/word_problem.hpp"

#include <string>
#include <unordered_map>

#include "imglab/errors.hpp"
#include "imglab/normal_form.hpp"

namespace imglab {

namespace {

using Memo = std::unordered_map<std::string, bool>;

// `canon` must be Gamma-canonical.
bool trivial_rec(const Word& canon, int depth, Memo& memo, int& max_depth) {
  if (depth > max_depth) max_depth = depth;
  if (canon.empty()) return true;
  if (root_permutation(canon) == BitPerm::Swap) return false;
  if (canon.size() == 1) return false;  // b or c

  auto it = memo.find(canon.letters());
  if (it != memo.end()) return it->second;

  SectionDecomposition dec = sections(canon);
  bool result =
      trivial_rec(gamma_canonical(dec.left), depth + 1, memo, max_depth) &&
      trivial_rec(gamma_canonical(dec.right), depth + 1, memo, max_depth);
  memo.emplace(canon.letters(), result);
  return result;
}

}  // namespace

bool is_trivial(const Word& g, TrivialityStats* stats) {
  Memo memo;
  int max_depth = 0;
  bool result = trivial_rec(gamma_canonical(g), 0, memo, max_depth);
  if (stats != nullptr) {
    stats->max_depth = max_depth;
    stats->memo_size = memo.size();
  }
  return result;
}

bool equal_elements(const Word& g, const Word& h) {
  return is_trivial(multiply(g, inverse(h)));
}

std::optional<int> element_order(const Word& g, int cap) {
  if (cap < 1) throw InputError("order cap must be >= 1");
  Word p = g;
  for (int k = 1; k <= cap; ++k) {
    if (is_trivial(p)) return k;
    p = multiply(p, g);
  }
  return std::nullopt;
}

}  // namespace imglab
