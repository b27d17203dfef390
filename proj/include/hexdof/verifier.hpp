#pragma once

// Independent certification and rate measurement. Everything here recomputes
// its products from the raw channel matrices and the solution's beamformers;
// nothing is shared with the schemes' internal state, so a scheme bug cannot
// vouch for itself.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexdof/beamforming.hpp"
#include "hexdof/channel.hpp"
#include "hexdof/graph.hpp"
#include "hexdof/linalg.hpp"

namespace hexdof {

struct EdgeResidual {
  int tx = -1;
  int rx = -1;
  double residual = 0.0;  // ||U_rx^H H V_tx||_F / ||H||_F
};

struct CellGain {
  int cell = -1;
  double sigma_min = 0.0;
};

struct Certificate {
  bool pass = false;
  double tol = 0.0;
  double min_gain_floor = 0.0;
  double max_residual = 0.0;
  double min_direct_gain = std::numeric_limits<double>::infinity();
  long edges_checked = 0;
  long cells_checked = 0;
  std::vector<EdgeResidual> failed_edges;
  std::vector<CellGain> failed_cells;
};

// Pass iff every cross-edge residual between two active cells is <= tol
// (relative to the channel's Frobenius norm) and every active direct link
// keeps sigma_min above the gain floor. Failure is a value, not an error.
inline Certificate certify_alignment(const InterferenceGraph& g, const ChannelSet& ch,
                                     const BeamformerSolution& sol, double tol,
                                     double min_gain = 1e-6) {
  if (tol <= 0) throw std::invalid_argument("certify_alignment: tol must be positive");
  Certificate cert;
  cert.tol = tol;
  cert.min_gain_floor = min_gain;

  for (auto [tx, rx] : g.directed_edges) {
    if (sol.dof[tx] == 0 || sol.dof[rx] == 0) continue;
    const CMat& H = ch.cross_at(tx, rx);
    const double res = (sol.rx[rx].adjoint() * H * sol.tx[tx]).norm() / H.norm();
    cert.max_residual = std::max(cert.max_residual, res);
    ++cert.edges_checked;
    if (res > tol) cert.failed_edges.push_back({tx, rx, res});
  }
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (sol.dof[v] == 0) continue;
    const double smin = smallest_singular_value(sol.rx[v].adjoint() * ch.direct[v] * sol.tx[v]);
    cert.min_direct_gain = std::min(cert.min_direct_gain, smin);
    ++cert.cells_checked;
    if (smin <= min_gain) cert.failed_cells.push_back({v, smin});
  }
  cert.pass = cert.failed_edges.empty() && cert.failed_cells.empty();
  return cert;
}

struct RateReport {
  std::vector<double> powers;
  std::vector<std::vector<double>> cell_rate;  // [cell][power] bits/s/Hz
  std::vector<std::vector<double>> cell_sinr;  // effective per-stream SINR, 2^(R/d)-1
  std::vector<double> dof_slope;               // per cell
  std::vector<double> average_rate;            // per power
  double average_slope = 0.0;
};

// Simulated decode-and-cancel: each receiver keeps only the interference of
// transmitters decoded after it (its in-edges); everything else has been
// reconstructed from passed messages and subtracted. Rates are Shannon
// log-det on the filtered channel with residual (mis)alignment in the noise
// covariance and unit noise; per-user power P splits evenly across streams.
inline RateReport measure_rates(const InterferenceGraph& g, const ChannelSet& ch,
                                const BeamformerSolution& sol, std::vector<double> powers) {
  if (powers.size() < 2) throw std::invalid_argument("measure_rates: need >= 2 powers");
  for (double p : powers) {
    if (!(p > 0)) throw std::invalid_argument("measure_rates: powers must be positive");
  }
  std::vector<double> sorted = powers;
  std::sort(sorted.begin(), sorted.end());
  const double p_lo = sorted[sorted.size() - 2];
  const double p_hi = sorted[sorted.size() - 1];
  if (p_lo == p_hi) throw std::invalid_argument("measure_rates: degenerate slope request");

  const int n = static_cast<int>(g.num_vertices());
  RateReport rep;
  rep.powers = powers;
  rep.cell_rate.assign(n, std::vector<double>(powers.size(), 0.0));
  rep.cell_sinr.assign(n, std::vector<double>(powers.size(), 0.0));
  rep.dof_slope.assign(n, 0.0);
  rep.average_rate.assign(powers.size(), 0.0);

  auto rate_at = [&](int v, double P) {
    const int d = sol.dof[v];
    if (d == 0) return 0.0;
    CMat heff = sol.rx[v].adjoint() * ch.direct[v] * sol.tx[v];  // d x d
    CMat cov = CMat::Identity(d, d);
    for (int u : g.in_neighbors[v]) {
      if (sol.dof[u] == 0) continue;
      CMat r = sol.rx[v].adjoint() * ch.cross_at(u, v) * sol.tx[u];
      cov += (P / sol.dof[u]) * (r * r.adjoint());
    }
    CMat m = CMat::Identity(d, d) + (P / d) * heff * heff.adjoint() * cov.inverse();
    return std::log2(std::abs(m.determinant()));
  };

  for (int v = 0; v < n; ++v) {
    double r_lo = 0.0, r_hi = 0.0;
    for (std::size_t pi = 0; pi < powers.size(); ++pi) {
      const double r = rate_at(v, powers[pi]);
      rep.cell_rate[v][pi] = r;
      rep.cell_sinr[v][pi] =
          sol.dof[v] > 0 ? std::exp2(r / sol.dof[v]) - 1.0 : 0.0;
      rep.average_rate[pi] += r / n;
      if (powers[pi] == p_lo) r_lo = r;
      if (powers[pi] == p_hi) r_hi = r;
    }
    rep.dof_slope[v] = (r_hi - r_lo) / (std::log2(p_hi) - std::log2(p_lo));
    rep.average_slope += rep.dof_slope[v] / n;
  }
  return rep;
}

}  // namespace hexdof
