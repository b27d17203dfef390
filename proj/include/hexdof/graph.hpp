#pragma once

// Hexagonal cellular interference graph on the bounded lattice Z(w) ∩ B_r,
// B_r = { z : |Re z| <= r, |Im z| <= sqrt(3) r / 2 }. Vertices are
// transmit-receive pairs; an edge joins each pair of nearest neighbours
// (label difference in {±1, ±w, ±(1+w)}). Edges are oriented by a decode
// order: [u,v] means "transmitter u still interferes at receiver v" after
// decoded messages have been passed along the backhaul, i.e. v decodes
// before u. Triangles are the upward triplets [z, z+w, z+w+1].
//
// Everything here is exact integer arithmetic; construction is
// single-threaded and the result is immutable, so concurrent reads are safe.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hexdof/eisenstein.hpp"

namespace hexdof {

struct CardinalityFormulas {
  long vertices;      // 4r^2 + 3r (+1 when r even)
  long triangles;     // 4r^2 - r
  long v_ex_bound;    // 12r + 3
};

inline CardinalityFormulas cardinality_formulas(int r) {
  if (r < 1) throw std::invalid_argument("cardinality_formulas: r must be >= 1");
  long rl = r;
  return {4 * rl * rl + 3 * rl + (r % 2 == 0 ? 1 : 0), 4 * rl * rl - rl, 12 * rl + 3};
}

struct InterferenceGraph {
  int r = 0;
  // Sorted in pi* decode order (Im desc, Re asc): index order == decode order.
  std::vector<Eisenstein> vertices;
  std::vector<std::pair<int, int>> undirected_edges;  // (i, j) with i < j
  std::vector<std::pair<int, int>> directed_edges;    // (tx, rx)
  std::vector<std::array<int, 3>> triangles;          // [z, z+w, z+w+1]
  std::vector<int> triangle_count;                    // n_v per vertex
  std::vector<int> internal_vertices;                 // n_v == 3
  std::vector<int> external_vertices;                 // n_v < 3
  std::vector<std::vector<int>> in_neighbors;         // tx indices per receiver
  std::vector<std::vector<int>> out_neighbors;        // rx indices per transmitter

  std::optional<int> find(Eisenstein z) const {
    auto it = index_.find({z.a, z.b});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Eisenstein& label(int v) const { return vertices[v]; }
  std::size_t num_vertices() const { return vertices.size(); }

  std::map<std::pair<int, int>, int> index_;  // (a, b) -> vertex index
};

// Orientation of the undirected edges under an arbitrary strict order
// predicate ("u decodes before v"). Edges the predicate cannot order in
// either direction are reported instead of silently dropped.
struct OrientationResult {
  std::vector<std::pair<int, int>> directed;      // (tx, rx)
  std::vector<std::pair<int, int>> unordered;
};

inline OrientationResult orient_edges(
    const InterferenceGraph& g,
    const std::function<bool(Eisenstein, Eisenstein)>& decodes_before) {
  OrientationResult out;
  for (auto [i, j] : g.undirected_edges) {
    if (decodes_before(g.vertices[i], g.vertices[j])) {
      out.directed.push_back({j, i});  // i decodes first, j interferes at i
    } else if (decodes_before(g.vertices[j], g.vertices[i])) {
      out.directed.push_back({i, j});
    } else {
      out.unordered.push_back({i, j});
    }
  }
  return out;
}

inline InterferenceGraph build_graph(int r) {
  if (r < 1) throw std::invalid_argument("build_graph: r must be >= 1");

  InterferenceGraph g;
  g.r = r;

  // Lines b = r .. -r top-down; within a line Re ascending <=> a ascending.
  for (int b = r; b >= -r; --b) {
    for (int a = -2 * r; a <= 2 * r; ++a) {
      Eisenstein z{a, b};
      if (in_box(z, r)) g.vertices.push_back(z);
    }
  }
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    g.index_[{g.vertices[i].a, g.vertices[i].b}] = i;
  }

  // Each neighbour pair once: scan offsets +1, +w, +1+w from every vertex.
  constexpr Eisenstein kOffsets[3] = {{1, 0}, {0, 1}, {1, 1}};
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    for (const auto& d : kOffsets) {
      if (auto j = g.find(g.vertices[i] + d)) {
        g.undirected_edges.push_back({std::min(i, *j), std::max(i, *j)});
      }
    }
  }
  std::sort(g.undirected_edges.begin(), g.undirected_edges.end());

  auto oriented = orient_edges(g, [](Eisenstein u, Eisenstein v) { return pi_star(u, v); });
  g.directed_edges = std::move(oriented.directed);
  std::sort(g.directed_edges.begin(), g.directed_edges.end());

  g.in_neighbors.assign(g.vertices.size(), {});
  g.out_neighbors.assign(g.vertices.size(), {});
  for (auto [tx, rx] : g.directed_edges) {
    g.in_neighbors[rx].push_back(tx);
    g.out_neighbors[tx].push_back(rx);
  }

  // Triangles [z, z+w, z+w+1], enumerated in vertex order of the base z.
  g.triangle_count.assign(g.vertices.size(), 0);
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    auto j = g.find(g.vertices[i] + kOmega);
    auto k = g.find(g.vertices[i] + kOmega + kOne);
    if (j && k) {
      g.triangles.push_back({i, *j, *k});
      ++g.triangle_count[i];
      ++g.triangle_count[*j];
      ++g.triangle_count[*k];
    }
  }
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    (g.triangle_count[v] == 3 ? g.internal_vertices : g.external_vertices).push_back(v);
  }
  return g;
}

}  // namespace hexdof
