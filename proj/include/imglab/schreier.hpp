#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace imglab::schreier {

enum class ExportFormat { Dot, Csv };

/// Labeled Schreier graph of the level action. Edges are the directed
/// (vertex, generator) slots; involutions make the multiset symmetric.
/// Vertex indices are lexicographic with 0 < 1, first tree letter major,
/// so index 0..2^(level-1)-1 is the 0-subtree.
struct SchreierGraph {
  int level = 0;
  bool keep_loops = true;
  struct Edge {
    std::uint32_t source;
    std::uint32_t target;
    char label;  // 'a', 'b', 'c'
  };
  std::vector<Edge> edges;

  std::uint32_t vertex_count() const { return 1u << level; }
};

SchreierGraph build(int level, bool keep_loops);  // 0 <= level <= 16

bool is_connected(const SchreierGraph& g);

// Entry (u,v) counts generator edges u -> v, loops included; equals
// a_n + b_n + c_n from the operator recursion. Requires loops kept.
Eigen::MatrixXd adjacency_matrix(const SchreierGraph& g);

// CSV: one row per slot, header "source,target,label". DOT: undirected,
// one edge per involution pair.
std::string export_graph(const SchreierGraph& g, ExportFormat format);

std::string vertex_name(std::uint32_t v, int level);

}  // namespace imglab::schreier
