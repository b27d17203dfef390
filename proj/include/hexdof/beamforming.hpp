#pragma once

// Shared beamformer-solution container and receiver-side helpers used by all
// three schemes. A cell with d_v = 0 neither transmits nor decodes.

#include <string>
#include <vector>

#include "hexdof/channel.hpp"
#include "hexdof/graph.hpp"
#include "hexdof/linalg.hpp"
#include "hexdof/rational.hpp"

namespace hexdof {

struct BeamformerSolution {
  std::string scheme;  // "2x2" | "2x3" | "2x4"
  int M = 0;
  int N = 0;
  std::vector<CMat> tx;   // M x d_v per vertex (0 columns when silent)
  std::vector<CMat> rx;   // N x d_v per vertex
  std::vector<int> dof;   // d_v
  std::vector<std::string> notes;  // demotions, eigenvalue ties, boundary remarks

  long total_dof() const {
    long s = 0;
    for (int d : dof) s += d;
    return s;
  }
  Rational average_dof() const {
    return Rational(total_dof(), static_cast<std::int64_t>(dof.size()));
  }
};

// Interference matrix seen by receiver v: the columns H_{v,u} X_u over all
// in-edges [u, v] whose transmitter is active in `sol`.
inline CMat interference_at(const InterferenceGraph& g, const ChannelSet& ch,
                            const BeamformerSolution& sol, int v) {
  long cols = 0;
  for (int u : g.in_neighbors[v]) cols += sol.tx[u].cols();
  CMat A(ch.N, cols);
  long at = 0;
  for (int u : g.in_neighbors[v]) {
    if (sol.tx[u].cols() == 0) continue;
    A.middleCols(at, sol.tx[u].cols()) = ch.cross_at(u, v) * sol.tx[u];
    at += sol.tx[u].cols();
  }
  return A.leftCols(at).eval();
}

// Zero-forcing receive filter: an orthonormal N x d basis orthogonal to
// col(interference) and aligned with the direct signal H_vv V_v. Empty on
// failure (interference leaves fewer than d free dimensions, or the direct
// signal collapses into the interference span).
inline CMat zero_forcing_filter(const CMat& interference, const CMat& direct_cols, int d) {
  const int n = static_cast<int>(direct_cols.rows());
  CMat complement = left_null_space(interference, n);
  if (complement.cols() < d) return CMat(n, 0);
  CMat projected = project_out(interference, direct_cols);  // N x d
  Eigen::JacobiSVD<CMat> svd(projected, Eigen::ComputeFullU);
  if (numeric_rank(svd) < d) return CMat(n, 0);
  return svd.matrixU().leftCols(d);
}

// Post-filter effective direct links U_v^H H_vv V_v per cell. Each active
// cell's link must be full rank; rank collapse is reported as a structured
// failure naming the cell.
inline std::vector<CMat> effective_links(const InterferenceGraph& g, const ChannelSet& ch,
                                         const BeamformerSolution& sol,
                                         double min_gain = 1e-6) {
  std::vector<CMat> links(g.num_vertices());
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (sol.dof[v] == 0) {
      links[v] = CMat(0, 0);
      continue;
    }
    links[v] = sol.rx[v].adjoint() * ch.direct[v] * sol.tx[v];
    if (smallest_singular_value(links[v]) <= min_gain) {
      throw NumericalError("effective_links: rank-deficient direct link at cell " +
                           std::to_string(v) + " (" + g.label(v).str() + ")");
    }
  }
  return links;
}

}  // namespace hexdof
