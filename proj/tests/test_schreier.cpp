#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "imglab/errors.hpp"
#include "imglab/schreier.hpp"
#include "imglab/spectral.hpp"

using namespace imglab::schreier;
using imglab::InputError;

TEST_CASE("build") {
  auto g1 = build(1, true);
  CHECK(g1.vertex_count() == 2);
  CHECK(g1.edges.size() == 6);  // 3 generators x 2 vertices
  // a joins 0 and 1; b and c loop everywhere on level 1.
  int a_cross = 0, loops = 0;
  for (const auto& e : g1.edges) {
    if (e.label == 'a') {
      CHECK(e.source != e.target);
      ++a_cross;
    } else {
      CHECK(e.source == e.target);
      ++loops;
    }
  }
  CHECK(a_cross == 2);
  CHECK(loops == 4);

  auto g0 = build(0, true);
  CHECK(g0.vertex_count() == 1);
  CHECK(g0.edges.size() == 3);  // three loops at the root

  auto g8 = build(8, true);
  CHECK(g8.vertex_count() == 256);
  CHECK(g8.edges.size() == 3 * 256);

  auto nl = build(1, false);
  CHECK(nl.edges.size() == 2);  // loops suppressed

  CHECK_THROWS_AS(build(17, true), InputError);
  CHECK_THROWS_AS(build(-1, true), InputError);
}

TEST_CASE("connectivity") {
  for (int level = 0; level <= 10; ++level) {
    CHECK(is_connected(build(level, true)));
  }
  // An artificial two-component graph.
  SchreierGraph split;
  split.level = 1;
  split.keep_loops = true;
  split.edges = {{0, 0, 'a'}, {1, 1, 'a'}};
  CHECK(!is_connected(split));
}

TEST_CASE("adjacency matrix") {
  auto m1 = adjacency_matrix(build(1, true));
  Eigen::MatrixXd expected(2, 2);
  expected << 2, 1, 1, 2;
  CHECK(m1 == expected);

  for (int n = 0; n <= 8; ++n) {
    auto adj = adjacency_matrix(build(n, true));
    CHECK((adj - adj.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(adj.rowwise().sum().minCoeff() == 3.0);
    CHECK(adj.rowwise().sum().maxCoeff() == 3.0);
    auto ops = imglab::spectral::level_ops(n);
    CHECK((adj - (ops.a + ops.b + ops.c)).cwiseAbs().maxCoeff() == 0.0);
  }

  CHECK_THROWS_AS(adjacency_matrix(build(1, false)), InputError);
}

TEST_CASE("exports") {
  auto g1 = build(1, true);
  std::string csv = export_graph(g1, ExportFormat::Csv);
  CHECK(csv == export_graph(g1, ExportFormat::Csv));  // byte-identical
  CHECK(csv.rfind("source,target,label\n", 0) == 0);
  int rows = 0;
  for (char ch : csv) rows += ch == '\n';
  CHECK(rows == 7);  // header + 6 slots
  CHECK(csv.find("0,1,a") != std::string::npos);
  CHECK(csv.find("0,0,b") != std::string::npos);

  std::string dot = export_graph(build(0, true), ExportFormat::Dot);
  CHECK(dot.find("\"e\";") != std::string::npos);
  // Loops collapse to one DOT edge each; the a-pair at level 1 becomes one.
  std::string dot1 = export_graph(g1, ExportFormat::Dot);
  int edges = 0;
  std::size_t pos = 0;
  while ((pos = dot1.find("--", pos)) != std::string::npos) {
    ++edges;
    pos += 2;
  }
  CHECK(edges == 5);  // 1 a-edge + 4 loops
}

TEST_CASE("vertex names") {
  CHECK(vertex_name(0, 3) == "000");
  CHECK(vertex_name(5, 3) == "101");
  CHECK(vertex_name(0, 0) == "e");
}
