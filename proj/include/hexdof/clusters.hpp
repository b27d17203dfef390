#pragma once

// Inactive sublattice and interference clusters for the 2x2 scheme.
//
// Silencing the cells on L0 = 2Z(w) (r odd; shifted to 2Z(w)+w when r is
// even so the boundary cut keeps |V0| <= |V|/4) splits the remaining
// directed interference edges into disjoint six-edge clusters S(z), one per
// center z in L0+w:
//
//   S(z) = { [z,z-1], [z,z+1+w], [z+1,z], [z+1,z+1+w],
//            [z-1-w,z-1], [z-1-w,z] }        (pairs are (tx, rx))
//
// Member roles, derived from the six edges: transmitters {a=z, b=z-1-w,
// c=z+1}, receivers {a=z, d=z-1, e=z+1+w}; a is the one node playing both
// roles. Clusters near the boundary may be partial (members outside B_r are
// dropped) and are flagged rather than discarded.

#include <array>
#include <utility>
#include <vector>

#include "hexdof/graph.hpp"

namespace hexdof {

struct Cluster {
  Eisenstein center;
  // Member vertex indices in role order a, b, c, d, e; -1 when outside B_r.
  std::array<int, 5> member{-1, -1, -1, -1, -1};
  std::vector<std::pair<int, int>> edges;  // (tx, rx), subset of directed_edges
  bool full = false;                       // all 5 members and all 6 edges present

  int a() const { return member[0]; }
  int b() const { return member[1]; }
  int c() const { return member[2]; }
  int d() const { return member[3]; }
  int e() const { return member[4]; }
};

struct ClusterPartition {
  std::vector<int> inactive;        // V0, ascending vertex indices
  std::vector<char> is_inactive;    // per-vertex flag
  std::vector<Cluster> clusters;    // canonical (decode) order of centers
};

// The inactive cells form a translate of 2Z(w); the translate is chosen per
// region size so that |V0| = r^2 + (r-1)/2 for odd r (and r^2 for even r),
// keeping |V0| <= |V|/4. The bare sublattice 2Z(w) = {a, b even} picks up one
// extra boundary point when r = 3 (mod 4), so that case shifts by +1.
inline bool in_inactive_lattice(Eisenstein z, int r) {
  bool a_even = (z.a % 2) == 0;
  bool b_even = (z.b % 2) == 0;
  if (r % 2 == 0) return a_even && !b_even;          // 2Z(w) + w
  if (r % 4 == 3) return !a_even && b_even;          // 2Z(w) + 1
  return a_even && b_even;                           // 2Z(w)
}

inline bool is_cluster_center(Eisenstein z, int r) {
  return in_inactive_lattice(z - kOmega, r);
}

inline ClusterPartition inactive_set_and_clusters(const InterferenceGraph& g) {
  ClusterPartition p;
  p.is_inactive.assign(g.num_vertices(), 0);
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (in_inactive_lattice(g.vertices[v], g.r)) {
      p.is_inactive[v] = 1;
      p.inactive.push_back(v);
    }
  }

  // Centers may lie outside B_r while some of their six edges are inside;
  // sweep a padded box and keep any center contributing at least one edge.
  const Eisenstein w = kOmega;
  const std::array<std::pair<Eisenstein, Eisenstein>, 6> edge_shape = {{
      {{0, 0}, {-1, 0}},        // [z, z-1]
      {{0, 0}, Eisenstein{1, 1}},  // [z, z+1+w]
      {{1, 0}, {0, 0}},         // [z+1, z]
      {{1, 0}, Eisenstein{1, 1}},  // [z+1, z+1+w]
      {Eisenstein{-1, -1}, {-1, 0}},  // [z-1-w, z-1]
      {Eisenstein{-1, -1}, {0, 0}},   // [z-1-w, z]
  }};
  const std::array<Eisenstein, 5> member_shape = {
      Eisenstein{0, 0},    // a = z
      Eisenstein{-1, -1},  // b = z-1-w
      Eisenstein{1, 0},    // c = z+1
      Eisenstein{-1, 0},   // d = z-1
      Eisenstein{1, 1},    // e = z+1+w
  };

  const int r = g.r;
  for (int b = r + 2; b >= -r - 2; --b) {
    for (int a = -2 * r - 4; a <= 2 * r + 4; ++a) {
      Eisenstein z{a, b};
      if (!is_cluster_center(z, r)) continue;
      Cluster c;
      c.center = z;
      for (int m = 0; m < 5; ++m) {
        if (auto idx = g.find(z + member_shape[m])) c.member[m] = *idx;
      }
      for (const auto& [dt, dr] : edge_shape) {
        auto tx = g.find(z + dt);
        auto rx = g.find(z + dr);
        if (tx && rx) c.edges.push_back({*tx, *rx});
      }
      if (c.edges.empty()) continue;
      c.full = c.edges.size() == 6;
      p.clusters.push_back(std::move(c));
    }
  }
  return p;
}

// Closed form for |V0| when r is odd: r^2 + (r-1)/2. (Even r has no stated
// closed form; enumeration is the contract there.)
inline long inactive_count_odd(int r) {
  long rl = r;
  return rl * rl + (rl - 1) / 2;
}

}  // namespace hexdof
