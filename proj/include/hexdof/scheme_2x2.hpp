#pragma once

// One-shot linear alignment for M = N = 2. Cells on the inactive sublattice
// stay silent; every remaining directed interference edge belongs to exactly
// one cluster S(z), and within a cluster the three transmit vectors must
// satisfy
//
//   v_a = H_da^-1 H_db v_b,  v_b = H_ab^-1 H_ac v_c,  v_c = H_ec^-1 H_ea v_a
//
// (up to scale), which closes into the eigenvector condition
// v_a = H_da^-1 H_db H_ab^-1 H_ac H_ec^-1 H_ea v_a. Each receiver then sees
// one-dimensional interference and zero-forces it. Boundary clusters with
// missing members keep whichever constraints still have both interferers
// present; the chain is seeded with deterministic unit vectors drawn from the
// channel seed. Every active cell decodes one stream, so the average DoF is
// 1 - |V0|/|V| by construction.

#include <string>
#include <vector>

#include "hexdof/beamforming.hpp"
#include "hexdof/channel.hpp"
#include "hexdof/clusters.hpp"
#include "hexdof/graph.hpp"
#include "hexdof/linalg.hpp"

namespace hexdof {

namespace detail {

class TxAssigner {
 public:
  TxAssigner(std::size_t n, std::uint64_t seed) : set_(n, 0), vec_(n), rng_(seed) {}

  void set(int v, const Eigen::Vector2cd& val, const std::string& who) {
    if (set_[v]) throw std::logic_error("duplicate beamformer assignment at " + who);
    set_[v] = 1;
    vec_[v] = val;
  }

  const Eigen::Vector2cd& get_or_free(int v) {
    if (!set_[v]) {
      set_[v] = 1;
      vec_[v] = rng_.unit_vector(2);
    }
    return vec_[v];
  }

  bool assigned(int v) const { return set_[v] != 0; }
  const Eigen::Vector2cd& at(int v) const { return vec_[v]; }

 private:
  std::vector<char> set_;
  std::vector<Eigen::Vector2cd> vec_;
  GaussianSource rng_;
};

}  // namespace detail

inline BeamformerSolution solve_2x2(const InterferenceGraph& g, const ClusterPartition& part,
                                    const ChannelSet& ch) {
  if (ch.M != 2 || ch.N != 2) throw std::invalid_argument("solve_2x2 requires M = N = 2");

  BeamformerSolution sol;
  sol.scheme = "2x2";
  sol.M = 2;
  sol.N = 2;
  sol.tx.assign(g.num_vertices(), CMat(2, 0));
  sol.rx.assign(g.num_vertices(), CMat(2, 0));
  sol.dof.assign(g.num_vertices(), 0);

  detail::TxAssigner tx(g.num_vertices(), ch.seed ^ 0x9e3779b97f4a7c15ULL);

  for (const auto& cl : part.clusters) {
    const int a = cl.a(), b = cl.b(), c = cl.c(), d = cl.d(), e = cl.e();
    const std::string where = "cluster " + cl.center.str();

    const bool con_d = d >= 0 && a >= 0 && b >= 0;  // rx d hears a and b
    const bool con_a = a >= 0 && b >= 0 && c >= 0;  // rx a hears b and c
    const bool con_e = e >= 0 && a >= 0 && c >= 0;  // rx e hears a and c

    Eigen::Matrix2cd Td, Ta, Te;  // v_b -> v_a, v_c -> v_b, v_a -> v_c
    if (con_d)
      Td = inverse2x2_checked(ch.cross_at(a, d), where + " H_da") * ch.cross_at(b, d);
    if (con_a)
      Ta = inverse2x2_checked(ch.cross_at(b, a), where + " H_ab") * ch.cross_at(c, a);
    if (con_e)
      Te = inverse2x2_checked(ch.cross_at(c, e), where + " H_ec") * ch.cross_at(a, e);

    auto norm = [](const Eigen::Vector2cd& v) { return Eigen::Vector2cd(v / v.norm()); };

    const int mask = (con_d ? 1 : 0) | (con_a ? 2 : 0) | (con_e ? 4 : 0);
    switch (mask) {
      case 7: {
        Eig2x2 es = eig2x2(Td * Ta * Te);
        if (es.near_tie) sol.notes.push_back("eigenvalue tie at " + where + "; lexicographic pick");
        tx.set(a, es.v1, where);
        tx.set(c, norm(Te * es.v1), where);
        tx.set(b, norm(Ta * tx.at(c)), where);
        break;
      }
      case 6:  // rx a and rx e: chain seeded at a
        tx.set(c, norm(Te * tx.get_or_free(a)), where);
        tx.set(b, norm(Ta * tx.at(c)), where);
        break;
      case 5:  // rx d and rx e: chain seeded at b
        tx.set(a, norm(Td * tx.get_or_free(b)), where);
        tx.set(c, norm(Te * tx.at(a)), where);
        break;
      case 3:  // rx d and rx a: chain seeded at c
        tx.set(b, norm(Ta * tx.get_or_free(c)), where);
        tx.set(a, norm(Td * tx.at(b)), where);
        break;
      case 1:
        tx.set(a, norm(Td * tx.get_or_free(b)), where);
        break;
      case 2:
        tx.set(b, norm(Ta * tx.get_or_free(c)), where);
        break;
      case 4:
        tx.set(c, norm(Te * tx.get_or_free(a)), where);
        break;
      default:
        break;  // no alignment constraints in this cluster
    }
  }

  // Active transmitters never pulled into any cluster constraint (isolated
  // boundary cells) get free unit vectors, in vertex order.
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (!part.is_inactive[v]) (void)tx.get_or_free(v);
  }

  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (part.is_inactive[v]) continue;
    sol.tx[v] = tx.at(v);
    sol.dof[v] = 1;
  }

  // Receivers: active interference is one-dimensional wherever a constraint
  // applied, so zero-forcing in C^2 always has room. A cell whose direct
  // signal still collapses is demoted, never silently mis-aligned.
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
    if (sol.dof[v] == 0) continue;
    CMat interf = interference_at(g, ch, sol, v);
    CMat f = zero_forcing_filter(interf, ch.direct[v] * sol.tx[v], 1);
    if (f.cols() == 0) {
      sol.dof[v] = 0;
      sol.tx[v] = CMat(2, 0);
      sol.notes.push_back("demoted cell " + std::to_string(v) + " (" + g.label(v).str() +
                          "): unalignable interference");
      continue;
    }
    sol.rx[v] = f;
  }
  return sol;
}

}  // namespace hexdof
