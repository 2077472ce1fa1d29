#include "imglab/schreier.hpp"

#include <sstream>

#include "imglab/errors.hpp"
#include "imglab/word.hpp"

namespace imglab::schreier {

namespace {

std::uint32_t act_index(char gen, std::uint32_t v, int level) {
  char state = gen;
  std::uint32_t img = 0;
  for (int i = level - 1; i >= 0; --i) {
    int bit = (v >> i) & 1u;
    int out = bit;
    switch (state) {
      case 'a':
        out = 1 - bit;
        state = '1';
        break;
      case 'b':
        state = bit == 0 ? 'a' : 'c';
        break;
      case 'c':
        state = bit == 0 ? 'b' : '1';
        break;
      default:
        break;
    }
    img = (img << 1) | static_cast<std::uint32_t>(out);
  }
  return img;
}

}  // namespace

std::string vertex_name(std::uint32_t v, int level) {
  if (level == 0) return "e";
  std::string bits(level, '0');
  for (int i = 0; i < level; ++i) {
    if ((v >> (level - 1 - i)) & 1u) bits[i] = '1';
  }
  return bits;
}

SchreierGraph build(int level, bool keep_loops) {
  if (level < 0 || level > 16) throw InputError("schreier level must be 0..16");
  SchreierGraph g;
  g.level = level;
  g.keep_loops = keep_loops;
  const std::uint32_t n = g.vertex_count();
  g.edges.reserve(static_cast<std::size_t>(n) * 3);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (char gen : {'a', 'b', 'c'}) {
      std::uint32_t u = act_index(gen, v, level);
      if (u == v && !keep_loops) continue;
      g.edges.push_back({v, u, gen});
    }
  }
  return g;
}

bool is_connected(const SchreierGraph& g) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& e : g.edges) {
    if (e.source != e.target) {
      adj[e.source].push_back(e.target);
      adj[e.target].push_back(e.source);
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  std::size_t head = 0;
  while (head < queue.size()) {
    std::uint32_t v = queue[head++];
    for (std::uint32_t u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return queue.size() == n;
}

Eigen::MatrixXd adjacency_matrix(const SchreierGraph& g) {
  if (!g.keep_loops) {
    throw InputError(
        "adjacency matrix requires loops kept (must match a_n + b_n + c_n)");
  }
  const std::uint32_t n = g.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges) m(e.source, e.target) += 1.0;
  return m;
}

std::string export_graph(const SchreierGraph& g, ExportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ExportFormat::Csv: {
      os << "source,target,label\n";
      for (const auto& e : g.edges) {
        os << vertex_name(e.source, g.level) << ','
           << vertex_name(e.target, g.level) << ',' << e.label << '\n';
      }
      break;
    }
    case ExportFormat::Dot: {
      os << "graph schreier_level_" << g.level << " {\n";
      for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        os << "  \"" << vertex_name(v, g.level) << "\";\n";
      }
      for (const auto& e : g.edges) {
        if (e.source > e.target) continue;  // one edge per involution pair
        os << "  \"" << vertex_name(e.source, g.level) << "\" -- \""
           << vertex_name(e.target, g.level) << "\" [label=\"" << e.label
           << "\"];\n";
      }
      os << "}\n";
      break;
    }
    default:
      throw InputError("unknown export format");
  }
  return os.str();
}

}  // namespace imglab::schreier
