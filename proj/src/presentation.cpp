#include "imglab/presentation.hpp"

#include <chrono>
#include <json.hpp>
#include <sstream>

#include "imglab/errors.hpp"
#include "imglab/word_problem.hpp"

namespace imglab::presentation {

namespace {

Word substitute_once(const Word& w) {
  std::string raw;
  raw.reserve(w.size() * 3);
  for (char ch : w.letters()) {
    switch (ch) {
      case 'a':
        raw.push_back('b');
        break;
      case 'b':
        raw.push_back('c');
        break;
      case 'c':
        raw += "aba";
        break;
    }
  }
  return reduce(raw);
}

Word commutator_square(const Word& x, const Word& y) {
  Word c = commutator(x, y);
  return multiply(c, c);
}

}  // namespace

Word substitute(const Word& w, int n) {
  if (n < 0) throw InputError("substitution count must be >= 0");
  Word cur = w;
  for (int i = 0; i < n; ++i) cur = substitute_once(cur);
  return cur;
}

const std::array<Word, kFamilyCount>& relator_bases() {
  static const std::array<Word, kFamilyCount> bases = [] {
    const Word a = Word::parse("a");
    const Word c = Word::parse("c");
    std::array<Word, kFamilyCount> out;
    out[0] = reduce("aa");
    out[1] = Word::parse("acacacac");
    out[2] = commutator_square(c, Word::parse("ab"));
    out[3] = commutator_square(c, Word::parse("bab"));
    out[4] = commutator_square(c, Word::parse("ababa"));
    out[5] = commutator_square(c, Word::parse("ababab"));
    out[6] = commutator_square(c, Word::parse("bababab"));
    (void)a;
    return out;
  }();
  return bases;
}

Word relator(int family, int n) {
  if (family < 1 || family > kFamilyCount) {
    throw InputError("relator family must be 1..7");
  }
  if (n < 0 || n > kMaxSubstitutionDepth) {
    throw InputError("substitution depth must be 0.." +
                     std::to_string(kMaxSubstitutionDepth));
  }
  return substitute(relator_bases()[family - 1], n);
}

std::array<Word, 6> u_words() {
  const Word ba = Word::parse("ba");
  std::array<Word, 6> out;
  out[0] = power(ba, 8);
  for (int j = 1; j < 6; ++j) out[j] = relator_bases()[j + 1];
  return out;
}

std::vector<RelatorCheck> verify_relators(int max_n) {
  if (max_n < 0 || max_n > kMaxSubstitutionDepth) {
    throw InputError("max_n must be 0.." +
                     std::to_string(kMaxSubstitutionDepth));
  }
  std::vector<RelatorCheck> checks;
  for (int family = 1; family <= kFamilyCount; ++family) {
    for (int n = 0; n <= max_n; ++n) {
      RelatorCheck row;
      row.family = family;
      row.n = n;
      auto t0 = std::chrono::steady_clock::now();
      Word r = relator(family, n);
      row.length = r.size();
      TrivialityStats stats;
      row.verified = is_trivial(r, &stats);
      row.depth = stats.max_depth;
      row.millis = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
      checks.push_back(row);
    }
  }
  return checks;
}

bool all_verified(const std::vector<RelatorCheck>& checks) {
  for (const auto& row : checks) {
    if (!row.verified) return false;
  }
  return true;
}

std::string relator_report_csv(const std::vector<RelatorCheck>& checks) {
  std::ostringstream os;
  os << "family,n,length,verified,milliseconds\n";
  for (const auto& row : checks) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", row.millis);
    os << row.family << ',' << row.n << ',' << row.length << ','
       << (row.verified ? "true" : "false") << ',' << buf << '\n';
  }
  return os.str();
}

bool phi_section_check(const Word& w) {
  SectionDecomposition dec = sections(substitute(w, 1));
  if (dec.root != BitPerm::Id) return false;
  return equal_elements(dec.left, w);
}

bool branch_identity_check(int depth) {
  if (depth < 2) throw InputError("branch identity depth must be >= 2");
  const Word a = Word::parse("a");
  const Word b = Word::parse("b");
  const Word c = Word::parse("c");
  const Word ab = commutator(a, b);
  const Word bc = commutator(b, c);
  const Word cba = commutator(c, conjugate(b, a));

  // Both commutators must be nontrivial for the identities to carry content.
  if (is_trivial(ab) || is_trivial(bc)) return false;

  struct Identity {
    const Word* lhs;
    const Word* left_section;
  };
  for (const Identity& id :
       {Identity{&bc, &ab}, Identity{&cba, &bc}}) {
    SectionDecomposition dec = sections(*id.lhs);
    if (dec.root != BitPerm::Id) return false;
    if (!equal_elements(dec.left, *id.left_section)) return false;
    if (!is_trivial(dec.right)) return false;
    // Action cross-check: lhs(0w) = 0 section(w) and lhs(1w) = 1w.
    for (std::uint64_t v = 0; v < (1ull << (depth - 1)); ++v) {
      std::string bits(depth - 1, '0');
      for (int i = 0; i < depth - 1; ++i) {
        if ((v >> (depth - 2 - i)) & 1u) bits[i] = '1';
      }
      if (act(*id.lhs, "0" + bits) != "0" + act(*id.left_section, bits)) {
        return false;
      }
      if (act(*id.lhs, "1" + bits) != "1" + bits) return false;
    }
  }
  return true;
}

std::string hnn_presentation() {
  static const char* kDisplay[kFamilyCount] = {
      "a^2",          "(ac)^4",       "[c,ab]^2",     "[c,bab]^2",
      "[c,ababa]^2",  "[c,ababab]^2", "[c,bababab]^2"};

  nlohmann::json j;
  j["generators"] = {"a", "b", "c", "s"};
  nlohmann::json relators = nlohmann::json::array();
  const auto& bases = relator_bases();
  for (int i = 0; i < kFamilyCount; ++i) {
    if (!is_trivial(bases[i])) {
      throw SupportViolationError("relator " + std::string(kDisplay[i]) +
                                  " failed verification");
    }
    relators.push_back({{"type", "word"},
                        {"display", kDisplay[i]},
                        {"expanded", bases[i].str()},
                        {"verified", true}});
  }
  const std::array<std::pair<const char*, const char*>, 3> conj = {
      {{"a", "b"}, {"b", "c"}, {"c", "aba"}}};
  for (const auto& [lhs, rhs] : conj) {
    relators.push_back({{"type", "conjugation"},
                        {"display", std::string(lhs) + "^s = " + rhs},
                        {"lhs", lhs},
                        {"rhs", rhs}});
  }
  j["relators"] = relators;
  j["relator_count"] = relators.size();
  return j.dump(2) + "\n";
}

}  // namespace imglab::presentation
