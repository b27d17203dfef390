#include "hexdof/json_io.hpp"

#include <gtest/gtest.h>

#include "hexdof/scheme_2x2.hpp"

using namespace hexdof;

TEST(JsonIo, GraphSchemaAndDeterminism) {
  auto g = build_graph(2);
  auto p = inactive_set_and_clusters(g);
  auto j = graph_json(g, p);

  EXPECT_EQ(j["r"], 2);
  EXPECT_EQ(j["vertices"].size(), 23u);
  EXPECT_EQ(j["edges"].size(), g.undirected_edges.size());
  EXPECT_EQ(j["directed"].size(), g.directed_edges.size());
  EXPECT_EQ(j["triangles"].size(), g.triangles.size());
  EXPECT_EQ(j["v0"].size(), p.inactive.size());
  EXPECT_EQ(j["counts"]["V"], 23);
  EXPECT_EQ(j["counts"]["T"], 14);

  // Key order is pinned (diff-based consumers rely on it).
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"r", "vertices", "edges", "directed", "triangles",
                                            "v0", "clusters", "v_in", "v_ex", "counts"}));

  EXPECT_EQ(j.dump(), graph_json(g, p).dump());
}

TEST(JsonIo, SolutionRoundsTripStableBytes) {
  auto g = build_graph(2);
  auto p = inactive_set_and_clusters(g);
  auto ch = generate_channels(g, 2, 2, 9);
  auto sol = solve_2x2(g, p, ch);
  auto cert = certify_alignment(g, ch, sol, 1e-9);

  auto once = solution_json(g, sol, cert).dump(2);
  auto twice = solution_json(g, solve_2x2(g, p, generate_channels(g, 2, 2, 9)),
                             certify_alignment(g, ch, sol, 1e-9))
                   .dump(2);
  EXPECT_EQ(once, twice);

  auto j = solution_json(g, sol, cert);
  EXPECT_EQ(j["scheme"], "2x2");
  EXPECT_EQ(j["cells"].size(), g.num_vertices());
  EXPECT_TRUE(j["certificate"]["pass"].get<bool>());
  EXPECT_EQ(j["average_dof"]["exact"], sol.average_dof().str());
}

TEST(JsonIo, ChannelDumpShapes) {
  auto g = build_graph(1);
  auto ch = generate_channels(g, 2, 3, 4);
  auto j = channel_json(g, ch);
  EXPECT_EQ(j["direct"].size(), 7u);
  EXPECT_EQ(j["cross"].size(), 12u);
  // Row-major [re, im] pairs: N * M entries.
  EXPECT_EQ(j["direct"][0]["H"].size(), 6u);
  EXPECT_EQ(j["direct"][0]["H"][0].size(), 2u);
}

TEST(JsonIo, BoundAndTableJson) {
  auto g = build_graph(3);
  auto j = bound_json(bound_report(g, 2));
  EXPECT_EQ(j["M"], 2);
  EXPECT_EQ(j["V"], 45);
  EXPECT_EQ(j["T"], 33);
  EXPECT_EQ(j["lambda"]["exact"], "1/4");

  auto t = table_json(4);
  EXPECT_EQ(t["rows"].size(), 14u);
  bool found_max = false;
  for (const auto& row : t["rows"]) {
    if (row["max"].get<bool>()) {
      EXPECT_EQ(row["config"], (std::vector<int>{1, 2, 2}));
      EXPECT_EQ(row["f"]["exact"], "19/12");
      found_max = true;
    }
  }
  EXPECT_TRUE(found_max);
  EXPECT_TRUE(t["cap_holds"].get<bool>());
}

TEST(JsonIo, RatesCsvHeader) {
  auto g = build_graph(1);
  auto p = inactive_set_and_clusters(g);
  auto ch = generate_channels(g, 2, 2, 3);
  auto sol = solve_2x2(g, p, ch);
  auto rep = measure_rates(g, ch, sol, {1e3, 1e6});
  auto csv = rates_csv(g, sol, rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "cell,a,b,dof_assigned,dof_slope,rate@1000,rate@1e+06");
  // one header plus one line per cell
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 7);
}
