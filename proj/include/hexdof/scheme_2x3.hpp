#pragma once

// One-shot linear alignment for M = 2, N = 3; every cell decodes one stream.
//
// Receivers zero-force the stream of their right neighbour. A transmitter v
// with left neighbour u must then align with u at the designated receiver
// w = v + w_lattice (up-left): with P the 2x3 projection annihilating
// H_{w,w+1} v_{w+1},
//
//   v_v ∝ (P H_wv)^-1 P H_wu v_u ,
//
// so the interference triple {right, below-left, below-right} at every full
// receiver is linearly dependent and leaves one clean dimension in C^3.
// Lines are processed top-down and left-to-right; each line's leftmost
// transmitter (and any transmitter whose designated receiver lacks a right
// neighbour to zero-force) is unconstrained and gets a seeded unit vector.
// The right-most receiver of a line has no right neighbour; it zero-forces
// nothing there and still has spare dimensions for its two lower interferers.

#include <string>
#include <vector>

#include "hexdof/beamforming.hpp"
#include "hexdof/channel.hpp"
#include "hexdof/graph.hpp"
#include "hexdof/linalg.hpp"

namespace hexdof {

inline BeamformerSolution solve_2x3(const InterferenceGraph& g, const ChannelSet& ch) {
  if (ch.M != 2 || ch.N != 3) throw std::invalid_argument("solve_2x3 requires M = 2, N = 3");

  BeamformerSolution sol;
  sol.scheme = "2x3";
  sol.M = 2;
  sol.N = 3;
  sol.tx.assign(g.num_vertices(), CMat(2, 0));
  sol.rx.assign(g.num_vertices(), CMat(3, 0));
  sol.dof.assign(g.num_vertices(), 1);

  GaussianSource rng(ch.seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::vector<Eigen::Vector2cd> v(g.num_vertices());

  // Vertex order is decode order: top line first, left to right, so v_u of
  // the left neighbour and all beamformers of the line above are ready.
  for (int i = 0; i < static_cast<int>(g.num_vertices()); ++i) {
    const Eisenstein z = g.label(i);
    auto u = g.find(z - kOne);                 // left neighbour
    auto w = g.find(z + kOmega);               // designated receiver, line above
    auto b = g.find(z + kOmega + kOne);        // w's right neighbour

    if (!u || !w || !b) {
      v[i] = rng.unit_vector(2);
      continue;
    }
    // P: orthonormal rows spanning the complement of H_{w,b} v_b in C^3.
    CMat zf_target = ch.cross_at(*b, *w) * v[*b];
    CMat P = left_null_space(zf_target, 3).adjoint();  // 2 x 3
    Eigen::Matrix2cd Mv = P * ch.cross_at(i, *w);
    Eigen::Matrix2cd Mu = P * ch.cross_at(*u, *w);
    Eigen::Matrix2cd Mv_inv = inverse2x2_checked(
        Mv, "projected channel on edge (" + z.str() + ")->(" + g.label(*w).str() + ")");
    Eigen::Vector2cd dir = Mv_inv * (Mu * v[*u]);
    v[i] = dir / dir.norm();
  }

  for (int i = 0; i < static_cast<int>(g.num_vertices()); ++i) sol.tx[i] = v[i];

  for (int i = 0; i < static_cast<int>(g.num_vertices()); ++i) {
    CMat interf = interference_at(g, ch, sol, i);
    CMat f = zero_forcing_filter(interf, ch.direct[i] * sol.tx[i], 1);
    if (f.cols() == 0) {
      sol.dof[i] = 0;
      sol.tx[i] = CMat(2, 0);
      sol.rx[i] = CMat(3, 0);
      sol.notes.push_back("demoted cell " + std::to_string(i) + " (" + g.label(i).str() +
                          "): unalignable interference");
      continue;
    }
    sol.rx[i] = f;
  }
  return sol;
}

}  // namespace hexdof
