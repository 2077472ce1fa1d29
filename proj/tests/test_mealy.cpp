#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "imglab/errors.hpp"
#include "imglab/mealy.hpp"
#include "imglab/word.hpp"
#include "support/test_util.hpp"

using namespace imglab;
using namespace imglab::mealy;

TEST_CASE("img automaton tables") {
  auto m = img_automaton();
  REQUIRE(m.states.size() == 4);
  // state b, bit 0 -> output 0, next state a
  int b = m.index_of("b");
  CHECK(m.output[b][0] == 0);
  CHECK(m.states[m.transition[b][0]] == "a");
  CHECK(m.states[m.transition[b][1]] == "c");
  // state c, bit 1 -> output 1, next state 1
  int c = m.index_of("c");
  CHECK(m.output[c][1] == 1);
  CHECK(m.states[m.transition[c][1]] == "1");
  // only a swaps
  int a = m.index_of("a");
  CHECK(m.output[a][0] == 1);
  CHECK(m.output[a][1] == 0);
  int one = m.index_of("1");
  CHECK(m.transition[one][0] == one);
  CHECK(m.transition[one][1] == one);
  CHECK_THROWS_AS(m.index_of("d"), InputError);
}

TEST_CASE("invertibility") {
  CHECK(is_invertible(img_automaton()));
  CHECK(is_invertible(identity_automaton()));
  auto broken = identity_automaton();
  broken.output[0] = {0, 0};
  CHECK(!is_invertible(broken));
  CHECK_THROWS_AS(automaton_act(broken, "1", "01"), InvalidAutomatonError);
}

TEST_CASE("transduction matches the wreath recursion action") {
  auto m = img_automaton();
  CHECK(automaton_act(m, "a", "01") == "11");
  CHECK(automaton_act(m, "1", "0101") == "0101");
  CHECK(automaton_act(m, "c", "000") == "001");

  for (const char* q : {"a", "b", "c"}) {
    Word w = Word::parse(q);
    for (int level = 0; level <= 10; ++level) {
      for (std::uint64_t v = 0; v < (1ull << level); ++v) {
        std::string bits = testutil::vertex_bits(v, level);
        CHECK(automaton_act(m, q, bits) == act(w, bits));
      }
    }
  }
}

TEST_CASE("levelwise bijection") {
  auto m = img_automaton();
  for (const auto& q : m.states) {
    for (int level = 1; level <= 8; ++level) {
      std::vector<std::string> images;
      for (std::uint64_t v = 0; v < (1ull << level); ++v) {
        images.push_back(automaton_act(m, q, testutil::vertex_bits(v, level)));
      }
      std::sort(images.begin(), images.end());
      CHECK(std::adjacent_find(images.begin(), images.end()) == images.end());
    }
  }
}

TEST_CASE("moore dot output") {
  std::string dot = moore_dot(img_automaton());
  CHECK(dot == moore_dot(img_automaton()));  // byte-identical
  CHECK(std::count(dot.begin(), dot.end(), '>') == 8);      // 8 edges
  CHECK(dot.find("\"b\" -> \"a\" [label=\"0|0\"]") != std::string::npos);
  CHECK(dot.find("\"a\" -> \"1\" [label=\"0|1\"]") != std::string::npos);

  std::string tiny = moore_dot(identity_automaton());
  CHECK(std::count(tiny.begin(), tiny.end(), '>') == 2);
}

TEST_CASE("json round trip") {
  auto m = img_automaton();
  auto back = automaton_from_json(automaton_to_json(m));
  CHECK(back.states == m.states);
  CHECK(back.transition == m.transition);
  CHECK(back.output == m.output);
  CHECK_THROWS_AS(automaton_from_json("{"), InputError);
  CHECK_THROWS_AS(automaton_from_json("{\"states\":[\"1\"]}"), InputError);
}
