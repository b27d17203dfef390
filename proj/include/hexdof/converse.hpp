#pragma once

// DoF upper bounds for M x M links. The feasibility system
//
//   d_v in {0..M},   d_u + d_v <= M on every directed edge,
//   2 sum_v (M - d_v) d_v >= sum_edges d_u d_v
//
// is relaxed onto triangles: each triangle contributes s = d_a + d_b + d_c to
// the objective and g = (d_a+d_b)^2 + (d_a+d_c)^2 + (d_b+d_c)^2 + d_a d_b +
// d_a d_c + d_b d_c - 2M (d_a+d_b+d_c) to the constraint, and only the
// relative frequencies x of the finitely many sorted triangle configurations
// matter:
//
//   maximize alpha s^T x + beta   s.t.  g^T x <= gamma, 1^T x = 1, x >= 0
//
// with alpha = |T|/(3|V|), beta = M|V_ex|/|V|, gamma = 3 M^2 |V_ex| / (2|T|).
// With one inequality plus the simplex constraint an optimal vertex has at
// most two nonzero coordinates, so the LP is solved exactly in rationals by
// enumerating singletons and gamma-tight pair mixtures. The Lagrangian bound
// alpha max_i(s_i - lambda g_i) + lambda alpha gamma + beta dominates the LP
// for every lambda >= 0; the best lambda is found on the finitely many
// breakpoints of the piecewise-linear minimax. A brute-force integer search
// over the original system doubles as an oracle on small graphs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexdof/graph.hpp"
#include "hexdof/rational.hpp"

namespace hexdof {

struct TriangleConfig {
  int i = 0, j = 0, k = 0;  // sorted: i <= j <= k
  friend bool operator==(const TriangleConfig&, const TriangleConfig&) = default;
  std::string str() const {
    return "[" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "]";
  }
};

inline std::vector<TriangleConfig> enumerate_configs(int M) {
  if (M < 1) throw std::invalid_argument("enumerate_configs: M must be >= 1");
  std::vector<TriangleConfig> out;
  for (int i = 0; i <= M; ++i)
    for (int j = i; j <= M; ++j)
      for (int k = j; k <= M; ++k)
        if (i + j <= M && j + k <= M && k + i <= M) out.push_back({i, j, k});
  return out;
}

inline long long s_fn(const TriangleConfig& t) { return t.i + t.j + t.k; }

inline long long g_fn(const TriangleConfig& t, int M) {
  const long long i = t.i, j = t.j, k = t.k;
  return (i + j) * (i + j) + (i + k) * (i + k) + (j + k) * (j + k) + i * j + i * k + j * k -
         2LL * M * (i + j + k);
}

// f_M(i,j,k) = (s - g/(2M)) / 3, the per-triangle bound under lambda = 1/(2M).
inline Rational f_m(const TriangleConfig& t, int M) {
  return (Rational(s_fn(t)) - Rational(g_fn(t, M), 2 * M)) / Rational(3);
}

// Same quantity, expanded directly in (i, j, k); kept as a second algebraic
// route for consistency checks.
inline Rational f_m_expanded(const TriangleConfig& t, int M) {
  const long long i = t.i, j = t.j, k = t.k;
  const long long quad =
      (i + j) * (i + j) + i * j + (i + k) * (i + k) + i * k + (j + k) * (j + k) + j * k;
  return (Rational(2 * (i + j + k)) - Rational(quad, 2 * M)) / Rational(3);
}

struct TableRow {
  TriangleConfig config;
  Rational f;
  bool maximal = false;
};

inline std::vector<TableRow> f_m_table(int M) {
  auto configs = enumerate_configs(M);
  std::vector<TableRow> rows;
  Rational best(INT64_MIN);
  for (const auto& c : configs) {
    Rational f = f_m(c, M);
    if (f > best) best = f;
    rows.push_back({c, f, false});
  }
  for (auto& row : rows) row.maximal = (row.f == best);
  return rows;
}

inline Rational general_m_bound(int M) {
  Rational best(INT64_MIN);
  for (const auto& c : enumerate_configs(M)) best = std::max(best, f_m(c, M));
  return best;
}

// max_D f_M <= 2M/5: the unconstrained maximum of f_M sits at
// i = j = k = 2M/5.
inline bool max_bound_within_cap(int M) { return general_m_bound(M) <= Rational(2 * M, 5); }

struct LpOutcome {
  bool feasible = false;
  Rational value;             // alpha s^T x + beta at the optimum
  std::vector<Rational> x;    // optimal relative frequencies
};

inline LpOutcome lp_solve_exact(const std::vector<long long>& s, const std::vector<long long>& g,
                                Rational alpha, Rational beta, Rational gamma) {
  if (s.size() != g.size() || s.empty()) {
    throw std::invalid_argument("lp_solve_exact: s and g must be equal-sized and nonempty");
  }
  const int n = static_cast<int>(s.size());
  LpOutcome best;

  auto consider = [&](const std::vector<Rational>& x, Rational sx) {
    Rational val = alpha * sx + beta;
    if (!best.feasible || val > best.value) {
      best.feasible = true;
      best.value = val;
      best.x = x;
    }
  };

  for (int i = 0; i < n; ++i) {
    if (Rational(g[i]) <= gamma) {
      std::vector<Rational> x(n, Rational(0));
      x[i] = Rational(1);
      consider(x, Rational(s[i]));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g[i] == g[j]) continue;
      // g_i x_i + g_j (1 - x_i) = gamma
      Rational xi = (gamma - Rational(g[j])) / Rational(g[i] - g[j]);
      if (xi < Rational(0) || xi > Rational(1)) continue;
      Rational xj = Rational(1) - xi;
      std::vector<Rational> x(n, Rational(0));
      x[i] = xi;
      x[j] = xj;
      consider(x, Rational(s[i]) * xi + Rational(s[j]) * xj);
    }
  }
  return best;  // infeasible iff gamma < min_i g_i: no vertex qualified
}

inline Rational dual_bound(const std::vector<long long>& s, const std::vector<long long>& g,
                           Rational alpha, Rational beta, Rational gamma, Rational lambda) {
  if (lambda < Rational(0)) throw std::invalid_argument("dual_bound: lambda must be >= 0");
  Rational best(INT64_MIN);
  for (std::size_t i = 0; i < s.size(); ++i) {
    best = std::max(best, Rational(s[i]) - lambda * Rational(g[i]));
  }
  return alpha * best + lambda * alpha * gamma + beta;
}

struct LambdaChoice {
  Rational lambda;
  Rational value;  // min over lambda of max_i (s_i - lambda g_i) / 3
};

inline LambdaChoice best_lambda(const std::vector<long long>& s,
                                const std::vector<long long>& g) {
  auto envelope = [&](Rational lambda) {
    Rational m(INT64_MIN);
    for (std::size_t i = 0; i < s.size(); ++i) {
      m = std::max(m, Rational(s[i]) - lambda * Rational(g[i]));
    }
    return m;
  };

  std::vector<Rational> candidates{Rational(0)};
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g[i] == g[j]) continue;
      Rational l = Rational(s[i] - s[j]) / Rational(g[i] - g[j]);
      if (l >= Rational(0)) candidates.push_back(l);
    }
  }
  LambdaChoice out{Rational(0), envelope(Rational(0)) / Rational(3)};
  for (const auto& l : candidates) {
    Rational v = envelope(l) / Rational(3);
    if (v < out.value || (v == out.value && l < out.lambda)) {
      out.lambda = l;
      out.value = v;
    }
  }
  return out;
}

inline bool feasibility_check(const InterferenceGraph& g, const std::vector<int>& dof, int M) {
  if (dof.size() != g.num_vertices()) {
    throw std::invalid_argument("feasibility_check: dof map size mismatch");
  }
  long long lhs = 0, rhs = 0;
  for (std::size_t v = 0; v < dof.size(); ++v) {
    if (dof[v] < 0 || dof[v] > M) return false;
    lhs += 2LL * (M - dof[v]) * dof[v];
  }
  for (auto [tx, rx] : g.directed_edges) {
    if (dof[tx] + dof[rx] > M) return false;
    rhs += static_cast<long long>(dof[tx]) * dof[rx];
  }
  return lhs >= rhs;
}

// Per-graph LP data, from enumerated (not closed-form) cardinalities.
struct GraphLpParams {
  long V = 0, T = 0, Vex = 0;
  Rational alpha, beta, gamma;
};

inline GraphLpParams lp_params(const InterferenceGraph& g, int M) {
  GraphLpParams p;
  p.V = static_cast<long>(g.num_vertices());
  p.T = static_cast<long>(g.triangles.size());
  p.Vex = static_cast<long>(g.external_vertices.size());
  if (p.T == 0) throw std::invalid_argument("lp_params: graph has no triangles");
  p.alpha = Rational(p.T, 3 * p.V);
  p.beta = Rational(static_cast<std::int64_t>(M) * p.Vex, p.V);
  p.gamma = Rational(3LL * M * M * p.Vex, 2 * p.T);
  return p;
}

struct BoundReport {
  int M = 0;
  int r = 0;
  GraphLpParams params;
  Rational lambda;
  Rational dual;      // Lagrangian upper bound at `lambda`
  Rational lp_value;  // exact LP optimum
  std::vector<Rational> lp_x;
};

inline BoundReport bound_report(const InterferenceGraph& g, int M,
                                std::optional<Rational> lambda = std::nullopt) {
  BoundReport rep;
  rep.M = M;
  rep.r = g.r;
  rep.params = lp_params(g, M);
  auto configs = enumerate_configs(M);
  std::vector<long long> s, gv;
  for (const auto& c : configs) {
    s.push_back(s_fn(c));
    gv.push_back(g_fn(c, M));
  }
  rep.lambda = lambda ? *lambda : best_lambda(s, gv).lambda;
  rep.dual = dual_bound(s, gv, rep.params.alpha, rep.params.beta, rep.params.gamma, rep.lambda);
  LpOutcome lp = lp_solve_exact(s, gv, rep.params.alpha, rep.params.beta, rep.params.gamma);
  if (!lp.feasible) throw std::logic_error("bound_report: LP infeasible");
  rep.lp_value = lp.value;
  rep.lp_x = lp.x;
  return rep;
}

struct OracleResult {
  Rational best_average;       // optimum of the integer program
  std::vector<int> best_dof;   // one attaining assignment
  long long leaves_checked = 0;
};

// Exhaustive maximization of (1/|V|) sum d_v over the integer feasibility
// system, with edge-constraint pruning and an optimistic-completion cut.
// Enforces (M+1)^|V| <= 1e8 before starting.
inline OracleResult integer_oracle(const InterferenceGraph& g, int M) {
  const int n = static_cast<int>(g.num_vertices());
  if (std::pow(double(M + 1), double(n)) > 1e8) {
    throw std::invalid_argument("integer_oracle: search space exceeds 1e8 states");
  }

  // Neighbours with smaller index: each undirected pair checked once.
  std::vector<std::vector<int>> earlier(n);
  for (auto [i, j] : g.undirected_edges) earlier[std::max(i, j)].push_back(std::min(i, j));

  OracleResult out;
  std::vector<int> d(n, 0);
  std::vector<int> best(n, 0);
  long long best_sum = -1;

  std::function<void(int, long long)> dfs = [&](int v, long long sum) {
    if (sum + static_cast<long long>(M) * (n - v) <= best_sum) return;  // cannot improve
    if (v == n) {
      ++out.leaves_checked;
      long long lhs = 0, rhs = 0;
      for (int u = 0; u < n; ++u) lhs += 2LL * (M - d[u]) * d[u];
      for (auto [tx, rx] : g.directed_edges) rhs += static_cast<long long>(d[tx]) * d[rx];
      if (lhs >= rhs && sum > best_sum) {
        best_sum = sum;
        best = d;
      }
      return;
    }
    for (int val = M; val >= 0; --val) {
      bool ok = true;
      for (int u : earlier[v]) {
        if (d[u] + val > M) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      d[v] = val;
      dfs(v + 1, sum + val);
    }
    d[v] = 0;
  };
  dfs(0, 0);

  if (best_sum < 0) throw std::logic_error("integer_oracle: no feasible point (d = 0 is always feasible)");
  out.best_average = Rational(best_sum, n);
  out.best_dof = best;
  return out;
}

}  // namespace hexdof
