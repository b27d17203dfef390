#include "hexdof/verifier.hpp"

#include <gtest/gtest.h>

#include <set>

#include "hexdof/scheme_2x2.hpp"

using namespace hexdof;

namespace {

struct Setup {
  InterferenceGraph g;
  ClusterPartition part;
  ChannelSet ch;
  BeamformerSolution sol;
};

Setup run(int r, std::uint64_t seed) {
  Setup s{build_graph(r), {}, {}, {}};
  s.part = inactive_set_and_clusters(s.g);
  s.ch = generate_channels(s.g, 2, 2, seed);
  s.sol = solve_2x2(s.g, s.part, s.ch);
  return s;
}

}  // namespace

TEST(Verifier, ValidSolutionPasses) {
  auto s = run(3, 42);
  auto cert = certify_alignment(s.g, s.ch, s.sol, 1e-9);
  EXPECT_TRUE(cert.pass);
  EXPECT_TRUE(cert.failed_edges.empty());
  EXPECT_TRUE(cert.failed_cells.empty());
  EXPECT_GT(cert.edges_checked, 0);
  EXPECT_LE(cert.max_residual, 1e-9);
  EXPECT_GT(cert.min_direct_gain, 1e-6);
}

TEST(Verifier, MutationIsCaughtAndNamed) {
  auto s = run(3, 42);
  const Cluster* target = nullptr;
  for (const auto& cl : s.part.clusters) {
    if (cl.full) {
      target = &cl;
      break;
    }
  }
  ASSERT_NE(target, nullptr);

  BeamformerSolution broken = s.sol;
  GaussianSource rng(999);
  broken.tx[target->a()] = rng.unit_vector(2);
  auto cert = certify_alignment(s.g, s.ch, broken, 1e-9);
  EXPECT_FALSE(cert.pass);
  ASSERT_FALSE(cert.failed_edges.empty());
  // Every offending edge must carry the mutated transmitter's interference,
  // i.e. lie in the mutated cluster's edge set.
  std::set<std::pair<int, int>> cluster_edges(target->edges.begin(), target->edges.end());
  for (const auto& e : cert.failed_edges) {
    EXPECT_TRUE(cluster_edges.count({e.tx, e.rx}))
        << "unexpected failure on edge " << e.tx << "->" << e.rx;
  }
}

TEST(Verifier, EmptyNetworkPassesVacuously) {
  auto s = run(2, 1);
  BeamformerSolution silent = s.sol;
  for (std::size_t v = 0; v < s.g.num_vertices(); ++v) {
    silent.dof[v] = 0;
    silent.tx[v] = CMat(2, 0);
    silent.rx[v] = CMat(2, 0);
  }
  auto cert = certify_alignment(s.g, s.ch, silent, 1e-9);
  EXPECT_TRUE(cert.pass);
  EXPECT_EQ(cert.edges_checked, 0);
  EXPECT_EQ(cert.cells_checked, 0);
}

TEST(Verifier, CancellationSoundness) {
  // With message passing disabled every undirected edge interferes in both
  // directions; the 2x2 solution only aligns the post-cancellation edges, so
  // certification against the bidirectional graph must fail.
  auto bidir = build_graph(3);
  bidir.directed_edges.clear();
  for (auto [i, j] : bidir.undirected_edges) {
    bidir.directed_edges.push_back({i, j});
    bidir.directed_edges.push_back({j, i});
  }
  bidir.in_neighbors.assign(bidir.num_vertices(), {});
  bidir.out_neighbors.assign(bidir.num_vertices(), {});
  for (auto [tx, rx] : bidir.directed_edges) {
    bidir.in_neighbors[rx].push_back(tx);
    bidir.out_neighbors[tx].push_back(rx);
  }

  auto ch_full = generate_channels(bidir, 2, 2, 42);

  // Solve on the real (cancellation) graph using the same channel draws.
  auto g = build_graph(3);
  auto part = inactive_set_and_clusters(g);
  ChannelSet ch = ch_full;
  auto sol = solve_2x2(g, part, ch);
  ASSERT_TRUE(certify_alignment(g, ch, sol, 1e-9).pass);

  auto cert = certify_alignment(bidir, ch_full, sol, 1e-9);
  EXPECT_FALSE(cert.pass);
  EXPECT_GT(cert.max_residual, 1e-3);  // reverse-direction interference is unaligned
}

TEST(Verifier, RateSlopesMatchAssignedDof) {
  auto s = run(3, 42);
  auto rep = measure_rates(s.g, s.ch, s.sol, {1e3, 1e6});
  for (std::size_t v = 0; v < s.g.num_vertices(); ++v) {
    EXPECT_NEAR(rep.dof_slope[v], s.sol.dof[v], 0.05) << "cell " << v;
  }
  EXPECT_NEAR(rep.average_slope, Rational(7, 9).to_double(), 0.05);
}

TEST(Verifier, RatesMonotoneInPower) {
  auto s = run(2, 3);
  auto rep = measure_rates(s.g, s.ch, s.sol, {1e1, 1e2, 1e3, 1e4, 1e5, 1e6});
  for (std::size_t v = 0; v < s.g.num_vertices(); ++v) {
    for (std::size_t p = 0; p + 1 < rep.powers.size(); ++p) {
      EXPECT_GE(rep.cell_rate[v][p + 1] + 1e-12, rep.cell_rate[v][p]);
    }
  }
}

TEST(Verifier, DegenerateRequestsRejected) {
  auto s = run(1, 1);
  EXPECT_THROW(measure_rates(s.g, s.ch, s.sol, {1e3}), std::invalid_argument);
  EXPECT_THROW(measure_rates(s.g, s.ch, s.sol, {1e3, 1e3}), std::invalid_argument);
  EXPECT_THROW(measure_rates(s.g, s.ch, s.sol, {0.0, 1e3}), std::invalid_argument);
  EXPECT_THROW(certify_alignment(s.g, s.ch, s.sol, 0.0), std::invalid_argument);
}

TEST(Verifier, SilentCellsHaveZeroRate) {
  auto s = run(3, 8);
  auto rep = measure_rates(s.g, s.ch, s.sol, {1e3, 1e6});
  for (int v : s.part.inactive) {
    EXPECT_EQ(rep.cell_rate[v][0], 0.0);
    EXPECT_EQ(rep.dof_slope[v], 0.0);
  }
}
