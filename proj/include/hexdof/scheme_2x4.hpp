#pragma once

// One-shot scheme for M = 2, N = 4. Horizontal lines are grouped top-down
// into stripes of three (top / middle / bottom); trailing stripes may have
// fewer lines. On each middle line every second cell starting from the
// leftmost ("doubled" cells, the set V2) sends two streams through a random
// unitary 2x2 precoder; everyone else sends one stream. Bottom-line
// receivers see at most three single streams (right neighbour plus the top
// line of the stripe below) and zero-force them all, which decouples the
// stripes.
//
// Within a stripe, for each doubled middle cell d (right to left):
//   * b = d+1 (single middle cell): u_b spans the left null space of the
//     out-of-cluster interference at b (two streams from d+2, one from
//     d+1-w); the bottom cell a = d-w then picks v_a orthogonal to
//     H_{b,a}^H u_b, killing its stream at b.
//   * v_b and v_c (c = d-1-w, bottom) are built from the null space of
//     F = [H_da v_a, H_db, H_dc] in C^{4x5}: with F x = 0 and x1 != 0,
//     vb~ = -[x2 x3]/x1, vc~ = -[x4 x5]/x1, gamma = min(1/|vb~|, 1/|vc~|)
//     gives H_db v_b + H_dc v_c = gamma H_da v_a, so the three interferers
//     at d collapse onto two dimensions and U_d in C^{4x2} zero-forces them.
// Top-line cells go left to right: each receiver f nulls the (at most
// three-dimensional) interference from the middle line below, and its right
// neighbour e aligns into that same span by picking v_e orthogonal to
// H_{f,e}^H u_f.
//
// The average DoF is exactly 1 + |V2|/|V|.

#include <string>
#include <vector>

#include "hexdof/beamforming.hpp"
#include "hexdof/channel.hpp"
#include "hexdof/graph.hpp"
#include "hexdof/linalg.hpp"

namespace hexdof {

struct AnchorAlignment {
  Eigen::Vector2cd vb;
  Eigen::Vector2cd vc;
  double gamma = 0.0;
};

// Alignment core: for any fa = H_da v_a != 0 and generic H_db, H_dc, find
// v_b, v_c with norms <= 1 such that H_db v_b + H_dc v_c = gamma * fa.
inline AnchorAlignment align_pair_to_anchor(const Eigen::Vector4cd& fa, const CMat& Hdb, const CMat& Hdc) {
  CMat F(4, 5);
  F.col(0) = fa;
  F.middleCols(1, 2) = Hdb;
  F.middleCols(3, 2) = Hdc;
  CMat ns = null_space(F);
  if (ns.cols() < 1) throw NumericalError("align_pair_to_anchor: F has trivial null space");
  CVec x = ns.col(0);
  if (std::abs(x(0)) < 1e-9 * x.norm()) {
    throw NumericalError("align_pair_to_anchor: degenerate null vector (x1 ~ 0)");
  }
  Eigen::Vector2cd vb_t(-x(1) / x(0), -x(2) / x(0));
  Eigen::Vector2cd vc_t(-x(3) / x(0), -x(4) / x(0));
  const double nb = vb_t.norm(), nc = vc_t.norm();
  if (nb < 1e-12 || nc < 1e-12) throw NumericalError("align_pair_to_anchor: collapsed direction");
  AnchorAlignment out;
  out.gamma = std::min(1.0 / nb, 1.0 / nc);
  out.vb = out.gamma * vb_t;
  out.vc = out.gamma * vc_t;
  return out;
}

inline BeamformerSolution solve_2x4(const InterferenceGraph& g, const ChannelSet& ch) {
  if (ch.M != 2 || ch.N != 4) throw std::invalid_argument("solve_2x4 requires M = 2, N = 4");

  const int n = static_cast<int>(g.num_vertices());
  BeamformerSolution sol;
  sol.scheme = "2x4";
  sol.M = 2;
  sol.N = 4;
  sol.tx.assign(n, CMat(2, 0));
  sol.rx.assign(n, CMat(4, 0));
  sol.dof.assign(n, 1);

  GaussianSource rng(ch.seed ^ 0x94d049bb133111ebULL);

  // Line depth within its stripe: 0 top, 1 middle, 2 bottom.
  auto depth_of = [&](Eisenstein z) { return (g.r - z.b) % 3; };

  // Doubled cells: alternate middle-line positions from the leftmost.
  std::vector<char> doubled(n, 0);
  {
    int line_b = g.r + 1;
    int pos = 0;
    for (int i = 0; i < n; ++i) {  // index order is line-major, Re ascending
      const Eisenstein z = g.label(i);
      pos = (z.b == line_b) ? pos + 1 : 0;
      line_b = z.b;
      if (depth_of(z) == 1 && pos % 2 == 0) doubled[i] = 1;
    }
  }

  std::vector<char> assigned(n, 0);
  std::vector<CMat> tx(n);
  auto set_tx = [&](int v, const CMat& val) {
    if (assigned[v]) throw std::logic_error("solve_2x4: duplicate assignment at vertex " +
                                            std::to_string(v));
    assigned[v] = 1;
    tx[v] = val;
  };
  auto get_tx = [&](int v) -> const CMat& {
    if (!assigned[v]) set_tx(v, CMat(rng.unit_vector(2)));
    return tx[v];
  };

  // Doubled cells draw their random precoders first, in vertex order.
  for (int i = 0; i < n; ++i) {
    if (doubled[i]) {
      sol.dof[i] = 2;
      set_tx(i, rng.unitary(2));
    }
  }

  // Middle/bottom construction, doubled cells right to left. Right-to-left
  // matters: the out-of-cluster stream at b from d+1-w is the c-member of
  // the doubled cell two to the right, already fixed by then.
  for (int i = n - 1; i >= 0; --i) {
    if (!doubled[i]) continue;
    const Eisenstein z = g.label(i);
    auto bnode = g.find(z + kOne);
    auto anode = g.find(z - kOmega);
    auto cnode = g.find(z - kOmega - kOne);

    if (bnode) {
      // Out-of-cluster interference at b: everything arriving at b except a.
      CMat S(4, 3);
      int cols = 0;
      for (int src : g.in_neighbors[*bnode]) {
        if (anode && src == *anode) continue;
        const CMat& x = get_tx(src);
        S.middleCols(cols, x.cols()) = ch.cross_at(src, *bnode) * x;
        cols += static_cast<int>(x.cols());
      }
      CMat ub_basis = left_null_space(S.leftCols(cols), 4);
      if (ub_basis.cols() == 0) {
        throw NumericalError("solve_2x4: no zero-forcing direction at cell " +
                             g.label(*bnode).str());
      }
      Eigen::Vector4cd ub = ub_basis.col(0);
      if (anode) {
        Eigen::Vector2cd hba = ch.cross_at(*anode, *bnode).adjoint() * ub;
        set_tx(*anode, CMat(perp2(hba)));
      }
    } else if (anode) {
      set_tx(*anode, CMat(rng.unit_vector(2)));
    }

    if (anode && bnode && cnode) {
      Eigen::Vector4cd fa = ch.cross_at(*anode, i) * tx[*anode];
      AnchorAlignment aligned = align_pair_to_anchor(fa, ch.cross_at(*bnode, i), ch.cross_at(*cnode, i));
      set_tx(*bnode, CMat(aligned.vb));
      set_tx(*cnode, CMat(aligned.vc));
    } else {
      // Two or fewer interferers at this receiver fit in 4 - 2 dimensions
      // without alignment; leave the survivors free.
      if (bnode) (void)get_tx(*bnode);
      if (cnode) (void)get_tx(*cnode);
    }
  }

  // Top lines, left to right: receiver f nulls the middle-line streams from
  // below; its right neighbour e = f+1 hides inside that same span.
  for (int i = 0; i < n; ++i) {
    const Eisenstein z = g.label(i);
    if (depth_of(z) != 0) continue;
    auto left = g.find(z - kOne);
    if (left && depth_of(g.label(*left)) == 0) continue;  // handled by the line walk below

    int f = i;
    Eigen::Vector4cd uf;
    bool have_uf = false;
    while (true) {
      (void)get_tx(f);  // leftmost: free; others were set from the previous uf
      // Interference at f from the line below (middle cells), not counting
      // the right neighbour, whose stream is controlled via v_e.
      CMat S(4, 3);
      int cols = 0;
      auto right = g.find(g.label(f) + kOne);
      for (int src : g.in_neighbors[f]) {
        if (right && src == *right) continue;
        const CMat& x = get_tx(src);
        S.middleCols(cols, x.cols()) = ch.cross_at(src, f) * x;
        cols += static_cast<int>(x.cols());
      }
      CMat basis = left_null_space(S.leftCols(cols), 4);
      if (basis.cols() == 0) {
        throw NumericalError("solve_2x4: no zero-forcing direction at cell " + g.label(f).str());
      }
      // Keep the complement direction closest to the direct signal.
      CMat proj = basis * (basis.adjoint() * (ch.direct[f] * tx[f]));
      uf = proj.norm() > 1e-12 ? Eigen::Vector4cd(proj / proj.norm())
                               : Eigen::Vector4cd(basis.col(0));
      have_uf = true;

      if (!right) break;
      Eigen::Vector2cd hfe = ch.cross_at(*right, f).adjoint() * uf;
      set_tx(*right, CMat(perp2(hfe)));
      f = *right;
    }
    (void)have_uf;
  }

  // Anything still unassigned (bottom cells without an alignment role, lone
  // lines) is a free unit vector, in vertex order.
  for (int i = 0; i < n; ++i) (void)get_tx(i);
  for (int i = 0; i < n; ++i) sol.tx[i] = tx[i];

  // Receivers, uniformly: null the actual interference and keep d_v aligned
  // signal dimensions. Anything that does not fit is demoted, never fudged.
  for (int i = 0; i < n; ++i) {
    CMat interf = interference_at(g, ch, sol, i);
    CMat f = zero_forcing_filter(interf, ch.direct[i] * sol.tx[i], sol.dof[i]);
    if (f.cols() == 0) {
      sol.dof[i] = 0;
      sol.tx[i] = CMat(2, 0);
      sol.rx[i] = CMat(4, 0);
      sol.notes.push_back("demoted cell " + std::to_string(i) + " (" + g.label(i).str() +
                          "): unalignable interference");
      continue;
    }
    sol.rx[i] = f;
  }
  return sol;
}

}  // namespace hexdof
