#include "hexdof/graph.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace hexdof;

TEST(Graph, RejectsInvalidSize) {
  EXPECT_THROW(build_graph(0), std::invalid_argument);
  EXPECT_THROW(build_graph(-2), std::invalid_argument);
  EXPECT_THROW(cardinality_formulas(0), std::invalid_argument);
}

TEST(Graph, SmallCounts) {
  auto g1 = build_graph(1);
  EXPECT_EQ(g1.num_vertices(), 7u);
  EXPECT_EQ(g1.triangles.size(), 3u);
  EXPECT_EQ(g1.undirected_edges.size(), 12u);

  auto g2 = build_graph(2);
  EXPECT_EQ(g2.num_vertices(), 23u);

  auto g3 = build_graph(3);
  EXPECT_EQ(g3.num_vertices(), 45u);
  EXPECT_EQ(g3.triangles.size(), 33u);  // 4*9 - 3

  auto g4 = build_graph(4);
  EXPECT_EQ(g4.num_vertices(), 77u);

  auto g5 = build_graph(5);
  EXPECT_EQ(g5.triangles.size(), 95u);
}

TEST(Graph, ClosedFormsMatchEnumeration) {
  for (int r = 1; r <= 10; ++r) {
    auto g = build_graph(r);
    auto cf = cardinality_formulas(r);
    EXPECT_EQ(static_cast<long>(g.num_vertices()), cf.vertices) << "r=" << r;
    EXPECT_EQ(static_cast<long>(g.triangles.size()), cf.triangles) << "r=" << r;
    long vex = static_cast<long>(g.external_vertices.size());
    EXPECT_LE(vex, cf.v_ex_bound) << "r=" << r;
    EXPECT_LE(double(vex), 9.0 * std::sqrt(double(g.num_vertices()))) << "r=" << r;
    EXPECT_LE(g.triangles.size(), g.num_vertices()) << "r=" << r;
  }
}

TEST(Graph, VertexOrderIsDecodeOrder) {
  auto g = build_graph(3);
  for (std::size_t i = 0; i + 1 < g.num_vertices(); ++i) {
    EXPECT_TRUE(pi_star(g.vertices[i], g.vertices[i + 1]));
  }
}

TEST(Graph, EdgesAreExactlyNeighborPairs) {
  auto g = build_graph(3);
  const std::set<std::pair<int, int>> neighbor_offsets = {{1, 0},  {0, 1},  {1, 1},
                                                          {-1, 0}, {0, -1}, {-1, -1}};
  std::set<std::pair<int, int>> edges(g.undirected_edges.begin(), g.undirected_edges.end());
  for (auto [i, j] : edges) {
    Eisenstein d = g.vertices[j] - g.vertices[i];
    EXPECT_TRUE(neighbor_offsets.count({d.a, d.b})) << d.str();
  }
  // Converse: every in-box neighbor pair is present.
  for (int i = 0; i < static_cast<int>(g.num_vertices()); ++i) {
    for (auto [da, db] : neighbor_offsets) {
      auto j = g.find(g.vertices[i] + Eisenstein{da, db});
      if (!j) continue;
      auto key = std::make_pair(std::min(i, *j), std::max(i, *j));
      EXPECT_TRUE(edges.count(key));
    }
  }
}

TEST(Graph, OrientationExamples) {
  auto g = build_graph(1);
  int origin = *g.find({0, 0});
  int one = *g.find({1, 0});
  int omega = *g.find({0, 1});

  std::set<std::pair<int, int>> directed(g.directed_edges.begin(), g.directed_edges.end());
  // Same line: 0 decodes before 1, so transmitter 1 interferes at receiver 0.
  EXPECT_TRUE(directed.count({one, origin}));
  EXPECT_FALSE(directed.count({origin, one}));
  // w is on the line above: w decodes first, transmitter 0 interferes at w.
  EXPECT_TRUE(directed.count({origin, omega}));
  EXPECT_FALSE(directed.count({omega, origin}));
}

TEST(Graph, OrientationIsABijectionOnEdges) {
  for (int r = 1; r <= 4; ++r) {
    auto g = build_graph(r);
    EXPECT_EQ(g.directed_edges.size(), g.undirected_edges.size());
    // Receiver always decodes earlier => smaller index; hence acyclic.
    for (auto [tx, rx] : g.directed_edges) EXPECT_LT(rx, tx);
  }
}

TEST(Graph, PluggableOrderReportsUnorderedEdges) {
  auto g = build_graph(1);
  // An order blind to the real part cannot split same-line pairs.
  auto broken = orient_edges(
      g, [](Eisenstein u, Eisenstein v) { return u.im_scaled() > v.im_scaled(); });
  EXPECT_FALSE(broken.unordered.empty());
  EXPECT_EQ(broken.directed.size() + broken.unordered.size(), g.undirected_edges.size());

  auto fine = orient_edges(g, [](Eisenstein u, Eisenstein v) { return pi_star(u, v); });
  EXPECT_TRUE(fine.unordered.empty());
}

TEST(Graph, TriangleStructure) {
  auto g = build_graph(3);
  std::set<std::pair<int, int>> edges(g.undirected_edges.begin(), g.undirected_edges.end());
  std::map<std::pair<int, int>, int> edge_triangles;
  for (const auto& t : g.triangles) {
    // Labels are [z, z+w, z+w+1].
    EXPECT_EQ(g.vertices[t[1]] - g.vertices[t[0]], kOmega);
    EXPECT_EQ(g.vertices[t[2]] - g.vertices[t[0]], (kOmega + kOne));
    for (auto [x, y] : {std::pair{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}) {
      auto key = std::make_pair(std::min(x, y), std::max(x, y));
      EXPECT_TRUE(edges.count(key));
      ++edge_triangles[key];
    }
  }
  for (const auto& [edge, count] : edge_triangles) EXPECT_LE(count, 2);
}

TEST(Graph, BoundaryClassification) {
  auto g1 = build_graph(1);
  // The origin sits in all three triangles at r = 1; the six ring cells don't.
  EXPECT_EQ(g1.triangle_count[*g1.find({0, 0})], 3);
  EXPECT_EQ(g1.internal_vertices.size(), 1u);
  EXPECT_EQ(g1.external_vertices.size(), 6u);

  auto g3 = build_graph(3);
  for (int v = 0; v < static_cast<int>(g3.num_vertices()); ++v) {
    EXPECT_GE(g3.triangle_count[v], 0);
    EXPECT_LE(g3.triangle_count[v], 3);
  }
  EXPECT_EQ(g3.triangle_count[*g3.find({0, 0})], 3);
  EXPECT_LE(g3.external_vertices.size(), 39u);  // 12r + 3
  EXPECT_EQ(g3.internal_vertices.size() + g3.external_vertices.size(), g3.num_vertices());
}
