#pragma once

// Machine-readable exports. All objects use insertion-ordered keys and fixed
// iteration orders so identical inputs serialize to identical bytes; rational
// quantities carry both the exact "p/q" string and a double convenience
// field. Complex matrices serialize column-by-column as [re, im] pairs except
// in the channel dump, which is row-major flat per its schema.

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "hexdof/beamforming.hpp"
#include "hexdof/channel.hpp"
#include "hexdof/clusters.hpp"
#include "hexdof/converse.hpp"
#include "hexdof/graph.hpp"
#include "hexdof/verifier.hpp"

namespace hexdof {

using ojson = nlohmann::ordered_json;

inline ojson complex_pair(const cxd& z) { return ojson::array({z.real(), z.imag()}); }

inline ojson matrix_columns(const CMat& m) {
  ojson cols = ojson::array();
  for (int c = 0; c < m.cols(); ++c) {
    ojson col = ojson::array();
    for (int r = 0; r < m.rows(); ++r) col.push_back(complex_pair(m(r, c)));
    cols.push_back(col);
  }
  return cols;
}

inline ojson matrix_row_major(const CMat& m) {
  ojson flat = ojson::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) flat.push_back(complex_pair(m(r, c)));
  return flat;
}

inline ojson rational_json(const Rational& q) {
  return ojson{{"exact", q.str()}, {"value", q.to_double()}};
}

inline ojson graph_json(const InterferenceGraph& g, const ClusterPartition& part) {
  ojson j;
  j["r"] = g.r;
  j["vertices"] = ojson::array();
  for (const auto& z : g.vertices) j["vertices"].push_back(ojson{{"a", z.a}, {"b", z.b}});
  j["edges"] = g.undirected_edges;
  j["directed"] = g.directed_edges;
  j["triangles"] = g.triangles;
  j["v0"] = part.inactive;
  ojson clusters = ojson::object();
  for (const auto& c : part.clusters) {
    ojson entry;
    entry["full"] = c.full;
    entry["members"] = ojson{{"a", c.a()}, {"b", c.b()}, {"c", c.c()}, {"d", c.d()}, {"e", c.e()}};
    entry["edges"] = c.edges;
    clusters[c.center.str()] = entry;
  }
  j["clusters"] = clusters;
  j["v_in"] = g.internal_vertices;
  j["v_ex"] = g.external_vertices;
  j["counts"] = ojson{{"V", g.num_vertices()},
                      {"T", g.triangles.size()},
                      {"Vex", g.external_vertices.size()},
                      {"V0", part.inactive.size()}};
  return j;
}

inline ojson channel_json(const InterferenceGraph& g, const ChannelSet& ch) {
  ojson j;
  j["M"] = ch.M;
  j["N"] = ch.N;
  j["seed"] = ch.seed;
  j["power"] = ch.power;
  j["resamples"] = ch.resamples;
  j["direct"] = ojson::array();
  for (std::size_t v = 0; v < ch.direct.size(); ++v) {
    j["direct"].push_back(ojson{{"cell", v}, {"H", matrix_row_major(ch.direct[v])}});
  }
  j["cross"] = ojson::array();
  for (auto [tx, rx] : g.directed_edges) {
    j["cross"].push_back(ojson{{"tx", tx}, {"rx", rx}, {"H", matrix_row_major(ch.cross_at(tx, rx))}});
  }
  return j;
}

inline ojson certificate_json(const Certificate& c) {
  ojson j;
  j["pass"] = c.pass;
  j["tol"] = c.tol;
  j["min_gain_floor"] = c.min_gain_floor;
  j["max_residual"] = c.max_residual;
  j["min_direct_gain"] = c.min_direct_gain;
  j["edges_checked"] = c.edges_checked;
  j["cells_checked"] = c.cells_checked;
  j["failed_edges"] = ojson::array();
  for (const auto& e : c.failed_edges) {
    j["failed_edges"].push_back(ojson{{"tx", e.tx}, {"rx", e.rx}, {"residual", e.residual}});
  }
  j["failed_cells"] = ojson::array();
  for (const auto& f : c.failed_cells) {
    j["failed_cells"].push_back(ojson{{"cell", f.cell}, {"sigma_min", f.sigma_min}});
  }
  return j;
}

inline ojson solution_json(const InterferenceGraph& g, const BeamformerSolution& sol,
                           const Certificate& cert) {
  ojson j;
  j["scheme"] = sol.scheme;
  j["M"] = sol.M;
  j["N"] = sol.N;
  j["average_dof"] = rational_json(sol.average_dof());
  j["cells"] = ojson::array();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    ojson cell;
    cell["cell"] = v;
    cell["a"] = g.label(static_cast<int>(v)).a;
    cell["b"] = g.label(static_cast<int>(v)).b;
    cell["dof"] = sol.dof[v];
    cell["V"] = matrix_columns(sol.tx[v]);
    cell["U"] = matrix_columns(sol.rx[v]);
    j["cells"].push_back(cell);
  }
  j["certificate"] = certificate_json(cert);
  j["notes"] = sol.notes;
  return j;
}

inline ojson bound_json(const BoundReport& rep) {
  ojson j;
  j["M"] = rep.M;
  j["r"] = rep.r;
  j["V"] = rep.params.V;
  j["T"] = rep.params.T;
  j["Vex"] = rep.params.Vex;
  j["alpha"] = rational_json(rep.params.alpha);
  j["beta"] = rational_json(rep.params.beta);
  j["gamma"] = rational_json(rep.params.gamma);
  j["lambda"] = rational_json(rep.lambda);
  j["dual_bound"] = rational_json(rep.dual);
  j["lp_value"] = rational_json(rep.lp_value);
  j["lp_x"] = ojson::array();
  for (const auto& x : rep.lp_x) j["lp_x"].push_back(x.str());
  return j;
}

inline ojson table_json(int M) {
  ojson j;
  j["M"] = M;
  j["rows"] = ojson::array();
  for (const auto& row : f_m_table(M)) {
    j["rows"].push_back(ojson{{"config", {row.config.i, row.config.j, row.config.k}},
                              {"f", rational_json(row.f)},
                              {"max", row.maximal}});
  }
  j["cap"] = rational_json(Rational(2 * M, 5));
  j["cap_holds"] = max_bound_within_cap(M);
  return j;
}

inline std::string compact_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

inline std::string rates_csv(const InterferenceGraph& g, const BeamformerSolution& sol,
                             const RateReport& rep) {
  std::string csv = "cell,a,b,dof_assigned,dof_slope";
  for (double p : rep.powers) {
    csv += ",rate@" + compact_double(p);
  }
  csv += "\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    csv += std::to_string(v) + "," + std::to_string(g.label(static_cast<int>(v)).a) + "," +
           std::to_string(g.label(static_cast<int>(v)).b) + "," + std::to_string(sol.dof[v]) +
           "," + std::to_string(rep.dof_slope[v]);
    for (std::size_t pi = 0; pi < rep.powers.size(); ++pi) {
      csv += "," + std::to_string(rep.cell_rate[v][pi]);
    }
    csv += "\n";
  }
  return csv;
}

}  // namespace hexdof
