#include "imglab/mealy.hpp"

#include <json.hpp>
#include <sstream>

#include "imglab/errors.hpp"

namespace imglab::mealy {

int MealyAutomaton::index_of(std::string_view state) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == state) return static_cast<int>(i);
  }
  throw InputError("unknown automaton state '" + std::string(state) + "'");
}

MealyAutomaton img_automaton() {
  MealyAutomaton m;
  m.states = {"1", "a", "b", "c"};
  // indices: 1=0, a=1, b=2, c=3
  m.transition = {{0, 0}, {0, 0}, {1, 3}, {2, 0}};
  m.output = {{0, 1}, {1, 0}, {0, 1}, {0, 1}};
  return m;
}

MealyAutomaton identity_automaton() {
  MealyAutomaton m;
  m.states = {"1"};
  m.transition = {{0, 0}};
  m.output = {{0, 1}};
  return m;
}

bool is_invertible(const MealyAutomaton& m) {
  for (const auto& out : m.output) {
    if (out[0] == out[1]) return false;
  }
  return true;
}

std::string automaton_act(const MealyAutomaton& m, std::string_view state,
                          std::string_view vertex) {
  if (!is_invertible(m)) {
    throw InvalidAutomatonError("automaton is not invertible");
  }
  int q = m.index_of(state);
  std::string out;
  out.reserve(vertex.size());
  for (char ch : vertex) {
    if (ch != '0' && ch != '1') {
      throw InputError("invalid vertex letter '" + std::string(1, ch) + "'");
    }
    int bit = ch - '0';
    out.push_back(static_cast<char>('0' + m.output[q][bit]));
    q = m.transition[q][bit];
  }
  return out;
}

std::string moore_dot(const MealyAutomaton& m) {
  std::ostringstream os;
  os << "digraph moore {\n  rankdir=LR;\n";
  for (const auto& s : m.states) {
    os << "  \"" << s << "\" [shape=circle];\n";
  }
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    for (int bit = 0; bit < 2; ++bit) {
      os << "  \"" << m.states[q] << "\" -> \""
         << m.states[m.transition[q][bit]] << "\" [label=\"" << bit << "|"
         << m.output[q][bit] << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string automaton_to_json(const MealyAutomaton& m) {
  nlohmann::json j;
  j["states"] = m.states;
  nlohmann::json trans = nlohmann::json::object();
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    trans[m.states[q]] = {{"0", m.states[m.transition[q][0]]},
                          {"1", m.states[m.transition[q][1]]}};
    out[m.states[q]] = {{"0", m.output[q][0]}, {"1", m.output[q][1]}};
  }
  j["transition"] = trans;
  j["output"] = out;
  return j.dump(2) + "\n";
}

MealyAutomaton automaton_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("automaton JSON: ") + e.what());
  }
  MealyAutomaton m;
  try {
    m.states = j.at("states").get<std::vector<std::string>>();
    m.transition.resize(m.states.size());
    m.output.resize(m.states.size());
    for (std::size_t q = 0; q < m.states.size(); ++q) {
      const auto& t = j.at("transition").at(m.states[q]);
      const auto& o = j.at("output").at(m.states[q]);
      for (int bit = 0; bit < 2; ++bit) {
        const std::string key(1, static_cast<char>('0' + bit));
        m.transition[q][bit] = m.index_of(t.at(key).get<std::string>());
        m.output[q][bit] = o.at(key).get<int>();
        if (m.output[q][bit] != 0 && m.output[q][bit] != 1) {
          throw InputError("automaton output must be 0 or 1");
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("automaton JSON: ") + e.what());
  }
  return m;
}

}  // namespace imglab::mealy
