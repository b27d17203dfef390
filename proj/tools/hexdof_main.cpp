// hexdof: build hexagonal cellular interference graphs, synthesize one-shot
// interference-alignment beamformers (2x2, 2x3, 2x4), certify them
// numerically, and compute the matching DoF upper bounds.
//
// Exit codes: 0 ok / certified, 2 certification failure, 3 invalid
// configuration, 4 numerical degeneracy.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hexdof/beamforming.hpp"
#include "hexdof/channel.hpp"
#include "hexdof/clusters.hpp"
#include "hexdof/converse.hpp"
#include "hexdof/graph.hpp"
#include "hexdof/json_io.hpp"
#include "hexdof/scheme_2x2.hpp"
#include "hexdof/scheme_2x3.hpp"
#include "hexdof/scheme_2x4.hpp"
#include "hexdof/verifier.hpp"

namespace {

using namespace hexdof;

constexpr int kExitOk = 0;
constexpr int kExitCertificationFailure = 2;
constexpr int kExitInvalidConfig = 3;
constexpr int kExitNumericalDegeneracy = 4;

std::string resolve_out_path(const std::string& path) {
  namespace fs = std::filesystem;
  const char* dir = std::getenv("HEXDOF_OUT_DIR");
  if (dir && *dir && !fs::path(path).is_absolute()) {
    return (fs::path(dir) / path).string();
  }
  return path;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(resolve_out_path(out_path), std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output path: " + out_path);
  f << text << "\n";
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

BeamformerSolution run_scheme(const InterferenceGraph& g, const ChannelSet& ch) {
  if (ch.M == 2 && ch.N == 2) {
    auto part = inactive_set_and_clusters(g);
    return solve_2x2(g, part, ch);
  }
  if (ch.M == 2 && ch.N == 3) return solve_2x3(g, ch);
  if (ch.M == 2 && ch.N == 4) return solve_2x4(g, ch);
  throw std::invalid_argument("no scheme for M=" + std::to_string(ch.M) +
                              ", N=" + std::to_string(ch.N) + " (supported: 2x2, 2x3, 2x4)");
}

struct CommonArgs {
  int r = 3;
  int m = 2;
  int n = 2;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::vector<double> powers{1e3, 1e6};
  std::string out;
  std::string config;
};

// Fill options the user left at their defaults from a JSON config file.
void apply_config(CLI::App* cmd, CommonArgs& a) {
  if (a.config.empty()) return;
  std::ifstream f(a.config);
  if (!f) throw std::invalid_argument("cannot read config file: " + a.config);
  nlohmann::json j = nlohmann::json::parse(f);
  auto unset = [&](const std::string& name) {
    auto* opt = cmd->get_option_no_throw("--" + name);
    return opt != nullptr && opt->count() == 0;
  };
  if (j.contains("r") && unset("r")) a.r = j["r"];
  if (j.contains("m") && unset("m")) a.m = j["m"];
  if (j.contains("n") && unset("n")) a.n = j["n"];
  if (j.contains("seed") && unset("seed")) a.seed = j["seed"];
  if (j.contains("tol") && unset("tol")) a.tol = j["tol"];
  if (j.contains("powers") && unset("powers")) a.powers = j["powers"].get<std::vector<double>>();
  if (j.contains("out") && unset("out")) a.out = j["out"];
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexdof: cellular interference alignment schemes and DoF bounds"};
  app.require_subcommand(1);

  CommonArgs a;
  std::function<int()> action;

  auto add_common = [&](CLI::App* cmd, bool with_mn, bool with_seed) {
    cmd->add_option("--r", a.r, "region half-width (graph size)")->check(CLI::PositiveNumber);
    if (with_mn) {
      cmd->add_option("--m", a.m, "transmit antennas");
      cmd->add_option("--n", a.n, "receive antennas");
    }
    if (with_seed) cmd->add_option("--seed", a.seed, "channel RNG seed");
    cmd->add_option("--out", a.out, "output path ('-' or empty: stdout)");
    cmd->add_option("--config", a.config, "JSON file with default options");
    return cmd;
  };

  // graph: topology export
  {
    auto* cmd = add_common(app.add_subcommand("graph", "export the interference graph"), false, false);
    cmd->callback([&, cmd] {
      action = [&, cmd] {
        apply_config(cmd, a);
        auto g = build_graph(a.r);
        auto part = inactive_set_and_clusters(g);
        emit(graph_json(g, part).dump(2), a.out);
        return kExitOk;
      };
    });
  }

  // run: scheme + certificate + rates
  std::string rates_csv_path;
  {
    auto* cmd = add_common(app.add_subcommand("run", "run a scheme end to end"), true, true);
    cmd->add_option("--tol", a.tol, "certification tolerance (relative)");
    cmd->add_option("--powers", a.powers, "powers for rate measurement")->expected(-1);
    cmd->add_option("--rates-csv", rates_csv_path, "also write per-cell rates as CSV");
    cmd->callback([&, cmd] {
      action = [&, cmd] {
        apply_config(cmd, a);
        auto g = build_graph(a.r);
        auto ch = generate_channels(g, a.m, a.n, a.seed);
        auto sol = run_scheme(g, ch);
        auto cert = certify_alignment(g, ch, sol, a.tol);
        auto rates = measure_rates(g, ch, sol, a.powers);
        ojson j = solution_json(g, sol, cert);
        j["rates"] = ojson{{"powers", rates.powers},
                           {"average_rate", rates.average_rate},
                           {"average_slope", rates.average_slope}};
        emit(j.dump(2), a.out);
        if (!rates_csv_path.empty()) emit(rates_csv(g, sol, rates), rates_csv_path);
        return cert.pass ? kExitOk : kExitCertificationFailure;
      };
    });
  }

  // certify: certificate only
  {
    auto* cmd = add_common(app.add_subcommand("certify", "re-run and certify a configuration"),
                           true, true);
    cmd->add_option("--tol", a.tol, "certification tolerance (relative)");
    cmd->callback([&, cmd] {
      action = [&, cmd] {
        apply_config(cmd, a);
        auto g = build_graph(a.r);
        auto ch = generate_channels(g, a.m, a.n, a.seed);
        auto sol = run_scheme(g, ch);
        auto cert = certify_alignment(g, ch, sol, a.tol);
        emit(certificate_json(cert).dump(2), a.out);
        return cert.pass ? kExitOk : kExitCertificationFailure;
      };
    });
  }

  // bound: LP + dual bound report
  std::string lambda_str;
  {
    auto* cmd = add_common(app.add_subcommand("bound", "triangle-LP DoF upper bound"), false, false);
    cmd->add_option("--m", a.m, "antennas per side (M x M links)");
    cmd->add_option("--lambda", lambda_str, "dual multiplier as p/q (default: best breakpoint)");
    cmd->callback([&, cmd] {
      action = [&, cmd] {
        apply_config(cmd, a);
        std::optional<Rational> lambda;
        if (!lambda_str.empty()) lambda = parse_rational(lambda_str);
        auto g = build_graph(a.r);
        emit(bound_json(bound_report(g, a.m, lambda)).dump(2), a.out);
        return kExitOk;
      };
    });
  }

  // table: per-triangle bound table for one M
  {
    auto* cmd = add_common(app.add_subcommand("table", "triangle-configuration bound table"),
                           false, false);
    cmd->add_option("--m", a.m, "antennas per side");
    cmd->callback([&, cmd] {
      action = [&, cmd] {
        apply_config(cmd, a);
        emit(table_json(a.m).dump(2), a.out);
        return kExitOk;
      };
    });
  }

  // sweep: achieved DoF vs dual bound across graph sizes
  std::vector<int> r_list;
  {
    auto* cmd = app.add_subcommand("sweep", "achieved DoF and bound across graph sizes");
    cmd->add_option("--r-list", r_list, "graph sizes to sweep")->expected(-1)->required();
    cmd->add_option("--m", a.m, "transmit antennas");
    cmd->add_option("--n", a.n, "receive antennas");
    cmd->add_option("--seed", a.seed, "channel RNG seed");
    cmd->add_option("--out", a.out, "output path ('-' or empty: stdout)");
    cmd->callback([&] {
      action = [&] {
        std::string csv = "r,V,achieved_dof_exact,achieved_dof,dual_bound_exact,dual_bound\n";
        for (int r : r_list) {
          auto g = build_graph(r);
          auto ch = generate_channels(g, a.m, a.n, a.seed);
          auto sol = run_scheme(g, ch);
          Rational achieved = sol.average_dof();
          csv += std::to_string(r) + "," + std::to_string(g.num_vertices()) + "," +
                 achieved.str() + "," + compact_double(achieved.to_double());
          if (a.m == a.n) {
            auto rep = bound_report(g, a.m);
            csv += "," + rep.dual.str() + "," + compact_double(rep.dual.to_double());
          } else {
            csv += ",,";  // converse covers M x M links only
          }
          csv += "\n";
        }
        emit(csv, a.out);
        return kExitOk;
      };
    });
  }

  // oracle: exhaustive integer optimum on small graphs
  {
    auto* cmd = add_common(app.add_subcommand("oracle", "exhaustive integer DoF optimum"), false,
                           false);
    cmd->add_option("--m", a.m, "antennas per side");
    cmd->callback([&, cmd] {
      action = [&, cmd] {
        apply_config(cmd, a);
        auto g = build_graph(a.r);
        auto res = integer_oracle(g, a.m);
        ojson j;
        j["M"] = a.m;
        j["r"] = a.r;
        j["V"] = g.num_vertices();
        j["oracle_value"] = rational_json(res.best_average);
        j["best_dof"] = res.best_dof;
        j["leaves_checked"] = res.leaves_checked;
        emit(j.dump(2), a.out);
        return kExitOk;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    return action();
  } catch (const NumericalError& e) {
    ojson j;
    j["error"] = ojson{{"type", "numerical_degeneracy"}, {"what", e.what()}};
    std::cout << j.dump(2) << "\n";
    return kExitNumericalDegeneracy;
  } catch (const std::exception& e) {
    ojson j;
    j["error"] = ojson{{"type", "invalid_config"}, {"what", e.what()}};
    std::cout << j.dump(2) << "\n";
    return kExitInvalidConfig;
  }
}
