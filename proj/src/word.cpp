#include "imglab/word.hpp"

#include "imglab/errors.hpp"

namespace imglab {

namespace {

bool is_generator(char ch) { return ch == 'a' || ch == 'b' || ch == 'c'; }

void check_size(std::size_t n) {
  if (n > kMaxWordLetters) {
    throw InputError("word exceeds the " + std::to_string(kMaxWordLetters) +
                     "-letter cap");
  }
}

}  // namespace

void Word::push(char letter) {
  if (!letters_.empty() && letters_.back() == letter) {
    letters_.pop_back();
    return;
  }
  check_size(letters_.size() + 1);
  letters_.push_back(letter);
}

Word Word::parse(std::string_view text) {
  if (text == "e") return Word{};
  for (char ch : text) {
    if (!is_generator(ch)) {
      throw InputError("invalid letter '" + std::string(1, ch) +
                       "' (expected a, b, c, or \"e\")");
    }
  }
  return reduce(text);
}

Word reduce(std::string_view raw) {
  check_size(raw.size());
  Word out;
  for (char ch : raw) {
    if (!is_generator(ch)) {
      throw InputError("invalid letter '" + std::string(1, ch) + "'");
    }
    out.push(ch);
  }
  return out;
}

Word multiply(const Word& g, const Word& h) {
  check_size(g.size() + h.size());
  Word out = g;
  for (char ch : h.letters()) out.push(ch);
  return out;
}

Word inverse(const Word& g) {
  Word out;
  const std::string& s = g.letters();
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push(*it);
  return out;
}

Word conjugate(const Word& g, const Word& by) {
  return multiply(multiply(inverse(by), g), by);
}

Word commutator(const Word& x, const Word& y) {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

Word power(const Word& g, int k) {
  if (k < 0) throw InputError("negative power");
  Word out;
  for (int i = 0; i < k; ++i) out = multiply(out, g);
  return out;
}

BitPerm root_permutation(const Word& g) {
  std::size_t a_count = 0;
  for (char ch : g.letters()) {
    if (ch == 'a') ++a_count;
  }
  return (a_count % 2 == 0) ? BitPerm::Id : BitPerm::Swap;
}

SectionDecomposition sections(const Word& g) {
  // Fold the wreath recursion a = (1,1)s, b = (a,c), c = (b,1) through the
  // product rule gh = (g|_0 h|_{s_g(0)}, g|_1 h|_{s_g(1)}) s_g s_h.
  SectionDecomposition acc;
  for (char ch : g.letters()) {
    const bool swapped = acc.root == BitPerm::Swap;
    switch (ch) {
      case 'a':
        acc.root = compose(acc.root, BitPerm::Swap);
        break;
      case 'b':  // b|_0 = a, b|_1 = c
        (swapped ? acc.left : acc.right).push('c');
        (swapped ? acc.right : acc.left).push('a');
        break;
      case 'c':  // c|_0 = b, c|_1 = 1
        (swapped ? acc.right : acc.left).push('b');
        break;
      default:
        throw InputError("invalid letter in word");
    }
  }
  return acc;
}

void check_vertex(std::string_view vertex) {
  for (char ch : vertex) {
    if (ch != '0' && ch != '1') {
      throw InputError("invalid vertex letter '" + std::string(1, ch) +
                       "' (expected 0 or 1)");
    }
  }
}

Word section_at(const Word& g, std::string_view vertex) {
  check_vertex(vertex);
  Word cur = g;
  for (char bit : vertex) {
    SectionDecomposition dec = sections(cur);
    cur = (bit == '0') ? std::move(dec.left) : std::move(dec.right);
  }
  return cur;
}

std::string act(const Word& g, std::string_view vertex) {
  check_vertex(vertex);
  std::string out(vertex);
  // Each generator is a state of the 4-state transducer; run letters in order.
  for (char gen : g.letters()) {
    char state = gen;
    for (char& bit : out) {
      switch (state) {
        case 'a':
          bit = (bit == '0') ? '1' : '0';
          state = '1';
          break;
        case 'b':
          state = (bit == '0') ? 'a' : 'c';
          break;
        case 'c':
          state = (bit == '0') ? 'b' : '1';
          break;
        default:
          break;
      }
      if (state == '1') break;  // identity from here on
    }
  }
  return out;
}

}  // namespace imglab
