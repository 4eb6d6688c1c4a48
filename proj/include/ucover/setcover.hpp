#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/cutting_plane.hpp"
#include "ucover/distribution.hpp"
#include "ucover/elemset.hpp"
#include "ucover/instance.hpp"
#include "ucover/lp.hpp"
#include "ucover/submodular.hpp"

namespace ucover {

// A fractional solution of the configuration LP: weighted (set, subset)
// columns plus the per-element dual values from the separation master.
struct FracColumn {
  int set = -1;
  ElemSet subset;
  double y = 0.0;
};

struct FractionalCover {
  std::vector<FracColumn> columns;
  std::vector<double> duals;
  double value = 0.0;

  // Total column mass on (set s, subsets containing u).
  double mass(int u, int s) const {
    double m = 0.0;
    for (const auto& col : columns) {
      if (col.set == s && col.subset.contains(u)) m += col.y;
    }
    return m;
  }

  double coverage(int u) const {
    double m = 0.0;
    for (const auto& col : columns) {
      if (col.subset.contains(u)) m += col.y;
    }
    return m;
  }
};

// Exact expected cost of a mapping: each set is bought once if any element
// mapped to it activates, plus (for the facility-location extension) the
// activation-weighted connection costs.
inline double expected_cover_cost(const Instance& inst, const Mapping& phi,
                                  const Distribution& dist,
                                  const ConnectionCosts* conn = nullptr) {
  phi.validate(inst);
  std::vector<ElemSet> assigned(inst.num_sets(), ElemSet(inst.n));
  for (int u = 0; u < inst.n; ++u) {
    for (int s : phi.sets_of[u]) assigned[s].insert(u);
  }
  double cost = 0.0;
  for (int s = 0; s < inst.num_sets(); ++s) {
    if (!assigned[s].empty()) cost += inst.sets[s].cost * hit_prob(dist, assigned[s]);
  }
  if (conn) {
    for (int u = 0; u < inst.n; ++u) {
      for (int s : phi.sets_of[u]) cost += hit_prob(dist, u) * conn->at(u, s);
    }
  }
  return cost;
}

namespace detail {

// Activation-weighted connection cost of (u, s); zero without the extension.
inline double conn_weight(const Instance&, const Distribution& dist,
                          const ConnectionCosts* conn, int u, int s) {
  return conn ? hit_prob(dist, u) * conn->at(u, s) : 0.0;
}

inline double column_cost(const Instance& inst, const Distribution& dist,
                          const ConnectionCosts* conn, int s, const ElemSet& B) {
  double c = inst.sets[s].cost * hit_prob(dist, B);
  if (conn) {
    B.for_each([&](int u) { c += conn_weight(inst, dist, conn, u, s); });
  }
  return c;
}

}  // namespace detail

struct SeparatedCut {
  ElemSet subset;
  double violation = 0.0;
};

// Separation oracle for one set: minimizes the constraint slack
//   c(S) * hit_prob(B) + conn(B,S) + z_S - sum_{u in B} alpha_u
// over B contained in S (a submodular minimization) and reports the
// minimizer when the slack dips below -kCutTol.
inline std::optional<SeparatedCut> separate_set(const Instance& inst,
                                                const Distribution& dist, int s,
                                                const std::vector<double>& alpha,
                                                const ConnectionCosts* conn = nullptr,
                                                double z_s = 0.0) {
  const auto& set = inst.sets[s];
  SetFunction f{set.elements, [&](const ElemSet& B) {
                  double v = inst.sets[s].cost * hit_prob(dist, B);
                  B.for_each([&](int u) {
                    v += detail::conn_weight(inst, dist, conn, u, s);
                    v -= alpha[u];
                  });
                  return v;
                }};
  SfmResult res = minimize(f);
  // Re-evaluate the slack at the concrete minimizer so the reported
  // violation is exact regardless of minimizer tolerance.
  double slack = f.value(res.minimizer) + z_s;
  if (slack < -kCutTol && !res.minimizer.empty())
    return SeparatedCut{res.minimizer, -slack};
  return std::nullopt;
}

enum class CoverMode { auto_detect, plain, multicover };

struct ConfigLpOptions {
  CoverMode mode = CoverMode::auto_detect;
  const ConnectionCosts* conn = nullptr;
};

namespace detail {

// Moves excess per-element mass to shrunken columns until every element is
// covered with total mass exactly 1. Cost-neutral at an LP optimum.
inline void normalize_plain_cover(const Instance& inst, const Distribution& dist,
                                  const ConnectionCosts* conn, FractionalCover& frac) {
  for (int u = 0; u < inst.n; ++u) {
    double cov = frac.coverage(u);
    for (size_t i = 0; i < frac.columns.size() && cov > 1.0 + 1e-12; ++i) {
      auto& col = frac.columns[i];
      if (!col.subset.contains(u) || col.y <= 1e-15) continue;
      double delta = std::min(col.y, cov - 1.0);
      col.y -= delta;
      cov -= delta;
      ElemSet reduced = col.subset;
      reduced.erase(u);
      if (!reduced.empty()) {
        bool merged = false;
        for (auto& other : frac.columns) {
          if (other.set == col.set && other.subset == reduced) {
            other.y += delta;
            merged = true;
            break;
          }
        }
        if (!merged) frac.columns.push_back({col.set, reduced, delta});
      }
    }
  }
  std::erase_if(frac.columns, [](const FracColumn& c) { return c.y <= 1e-12; });
  double value = 0.0;
  for (const auto& col : frac.columns)
    value += col.y * column_cost(inst, dist, conn, col.set, col.subset);
  frac.value = value;
}

}  // namespace detail

// Solves the configuration LP by cutting planes on its dual (one submodular
// separation per set per round), then solves the restricted primal over the
// generated columns. In multicover mode the primal enforces coverage r(u)
// and the per-set capacity row.
inline FractionalCover solve_config_lp(const Instance& inst, const Distribution& dist,
                                       const ConfigLpOptions& opt = {}) {
  inst.validate();
  inst.check_feasible();
  if (opt.conn) opt.conn->validate(inst);
  const int n = inst.n;
  const int m = inst.num_sets();
  const bool multi = opt.mode == CoverMode::auto_detect ? inst.multicover()
                                                        : opt.mode == CoverMode::multicover;

  // Master: the dual LP. Variables w_u (and z_S in multicover mode), one
  // constraint per generated (S,B) pair.
  LinearProgram master;
  master.sense = Sense::maximize;
  for (int u = 0; u < n; ++u) master.add_var(static_cast<double>(inst.requirement(u)));
  if (multi) {
    for (int s = 0; s < m; ++s) master.add_var(-1.0);
  }
  const int nvars = master.num_vars();

  // Box rows keep the master bounded before cuts arrive; the margin keeps
  // them strictly slack at the true optimum.
  for (int u = 0; u < n; ++u) {
    double box = inst.max_cost() + 1.0;
    if (opt.conn) {
      for (int s = 0; s < m; ++s)
        box = std::max(box, inst.max_cost() + 1.0 +
                                detail::conn_weight(inst, dist, opt.conn, u, s));
    }
    std::vector<double> row(nvars, 0.0);
    row[u] = 1.0;
    master.add_row(std::move(row), Rel::le, box);
  }

  auto cut_for = [&](int s, const ElemSet& B) {
    Cut cut;
    cut.coeffs.assign(nvars, 0.0);
    B.for_each([&](int u) { cut.coeffs[u] = 1.0; });
    if (multi) cut.coeffs[n + s] = -1.0;
    cut.rel = Rel::le;
    cut.rhs = detail::column_cost(inst, dist, opt.conn, s, B);
    cut.set_id = inst.sets[s].id;
    cut.subset = B;
    return cut;
  };

  // Seed with the full column of every set: guarantees the restricted primal
  // is feasible in both modes.
  CutPool pool;
  std::set<std::pair<int, ElemSet>> generated;
  for (int s = 0; s < m; ++s) {
    Cut cut = cut_for(s, inst.sets[s].elements);
    master.add_row(cut.coeffs, cut.rel, cut.rhs);
    generated.insert({s, cut.subset});
    pool.cuts.push_back(std::move(cut));
  }

  auto separator = [&](const std::vector<double>& point) {
    std::vector<double> alpha(point.begin(), point.begin() + n);
    std::vector<Cut> cuts;
    for (int s = 0; s < m; ++s) {
      double z = multi ? point[n + s] : 0.0;
      if (auto sep = separate_set(inst, dist, s, alpha, opt.conn, z)) {
        if (generated.insert({s, sep->subset}).second)
          cuts.push_back(cut_for(s, sep->subset));
      }
    }
    return cuts;
  };

  const int cap = 10 * (1 << std::min(n, 16));
  CuttingPlaneResult cp = cutting_plane(std::move(master), separator, std::move(pool), cap);

  // Restricted primal over the pooled columns.
  LinearProgram primal;
  primal.sense = Sense::minimize;
  for (const auto& cut : cp.pool.cuts) primal.add_var(cut.rhs);
  for (int u = 0; u < n; ++u) {
    std::vector<double> row(primal.num_vars(), 0.0);
    for (size_t j = 0; j < cp.pool.cuts.size(); ++j) {
      if (cp.pool.cuts[j].subset.contains(u)) row[j] = 1.0;
    }
    primal.add_row(std::move(row), Rel::ge, static_cast<double>(inst.requirement(u)));
  }
  if (multi) {
    for (int s = 0; s < m; ++s) {
      std::vector<double> row(primal.num_vars(), 0.0);
      for (size_t j = 0; j < cp.pool.cuts.size(); ++j) {
        if (cp.pool.cuts[j].set_id == inst.sets[s].id) row[j] = 1.0;
      }
      primal.add_row(std::move(row), Rel::le, 1.0);
    }
  }
  LpSolution psol = solve_lp(primal);
  if (std::abs(psol.value - cp.value) > kValueTol * std::max(1.0, std::abs(cp.value)))
    throw SolveError("configuration LP: restricted primal and dual disagree");

  FractionalCover frac;
  frac.value = psol.value;
  frac.duals.assign(cp.point.begin(), cp.point.begin() + n);
  for (size_t j = 0; j < cp.pool.cuts.size(); ++j) {
    if (psol.x[j] > 1e-12) {
      int s = inst.set_index(cp.pool.cuts[j].set_id);
      frac.columns.push_back({s, cp.pool.cuts[j].subset, psol.x[j]});
    }
  }
  if (!multi) detail::normalize_plain_cover(inst, dist, opt.conn, frac);
  return frac;
}

struct RoundResult {
  Mapping mapping;
  int attempts = 1;  // total tries; retries = attempts - 1
  double cost = 0.0;
};

// Randomized rounding with the Las-Vegas retry loop: per set, draw
// ceil(2 ln n) columns, union them, dedupe multiply-assigned elements toward
// the earliest sampling round, and retry until the result covers everything
// at exact expected cost within max(4 ln n, 1) times the fractional value.
inline RoundResult round_randomized(const Instance& inst, const Distribution& dist,
                                    const FractionalCover& frac, uint64_t seed,
                                    const ConnectionCosts* conn = nullptr) {
  if (inst.multicover())
    throw ValidationError("round_randomized handles unit requirements only");
  const int n = inst.n;
  const int m = inst.num_sets();
  const int q = std::max(1, static_cast<int>(std::ceil(2.0 * std::log(n))));
  const double factor = std::max(4.0 * std::log(static_cast<double>(n)), 1.0);
  const double budget = factor * frac.value + kTol;

  std::vector<std::vector<const FracColumn*>> by_set(m);
  for (const auto& col : frac.columns) by_set[col.set].push_back(&col);
  std::vector<double> set_mass(m, 0.0);
  for (int s = 0; s < m; ++s) {
    for (auto* col : by_set[s]) set_mass[s] += col->y;
  }

  for (int attempt = 1; attempt <= 1000; ++attempt) {
    std::mt19937_64 gen(derive_seed(seed, "round-randomized", attempt));
    // sampled[i][s] = subset drawn for set s in round i
    std::vector<std::vector<ElemSet>> sampled(q, std::vector<ElemSet>(m, ElemSet(n)));
    for (int s = 0; s < m; ++s) {
      for (int i = 0; i < q; ++i) {
        double r = uniform01(gen) * std::max(1.0, set_mass[s]);
        for (auto* col : by_set[s]) {
          r -= col->y;
          if (r < 0.0) {
            sampled[i][s] = col->subset;
            break;
          }
        }
        // leftover mass maps to the empty column
      }
    }
    std::vector<int> assigned(n, -1);
    for (int i = 0; i < q; ++i) {
      for (int s = 0; s < m; ++s) {
        sampled[i][s].for_each([&](int u) {
          if (assigned[u] < 0) assigned[u] = s;
        });
      }
    }
    bool covered = std::all_of(assigned.begin(), assigned.end(),
                               [](int s) { return s >= 0; });
    if (!covered) continue;
    Mapping phi;
    phi.sets_of.resize(n);
    for (int u = 0; u < n; ++u) phi.sets_of[u] = {assigned[u]};
    double cost = expected_cover_cost(inst, phi, dist, conn);
    if (cost <= budget) return {std::move(phi), attempt, cost};
  }
  throw SolveError("randomized rounding: retry cap (1000) exhausted");
}

// Deterministic frequency rounding: each element picks the first set (in
// instance order) holding at least a 1/f share of its covering mass, where f
// is the maximum element frequency. Cost at most f times the LP value.
inline Mapping round_frequency(const Instance& inst, const FractionalCover& frac) {
  if (inst.multicover())
    throw ValidationError("round_frequency handles unit requirements only");
  const int f = inst.max_frequency();
  const double threshold = (1.0 - kValueTol) / f;
  Mapping phi;
  phi.sets_of.resize(inst.n);
  for (int u = 0; u < inst.n; ++u) {
    if (frac.coverage(u) < 1.0 - kValueTol)
      throw InfeasibleError("fractional cover leaves element " + std::to_string(u) +
                            " uncovered");
    int pick = -1;
    for (int s = 0; s < inst.num_sets() && pick < 0; ++s) {
      if (inst.sets[s].elements.contains(u) && frac.mass(u, s) >= threshold) pick = s;
    }
    if (pick < 0)
      throw InfeasibleError("no set holds a 1/f mass share for element " +
                            std::to_string(u));
    phi.sets_of[u] = {pick};
  }
  return phi;
}

struct GreedyResult {
  Mapping mapping;
  std::vector<double> alpha;  // price(u, r(u))
  std::vector<double> beta;   // per-set rebate
  double paid = 0.0;          // sum of all copy prices == r.alpha - sum beta
  double cost = 0.0;          // exact expected cost of the mapping
};

// Greedy multicover: repeatedly pick the (subset, set) pair with the best
// cost-effectiveness c(S)*hit_prob(B)/|B| (a submodular ratio minimization
// per set), charge every covered copy that price, and stop when each element
// is covered r(u) times. Returns the H_n dual-fitting certificate.
inline GreedyResult greedy_multicover(const Instance& inst, const Distribution& dist) {
  inst.validate();
  inst.check_feasible();
  const int n = inst.n;
  const int m = inst.num_sets();

  std::vector<ElemSet> remaining;
  remaining.reserve(m);
  for (const auto& s : inst.sets) remaining.push_back(s.elements);
  std::vector<int> covered(n, 0);
  std::vector<std::vector<double>> prices(n);       // per element, copy prices
  std::vector<std::vector<int>> chosen(n);          // per element, covering sets
  std::vector<std::vector<double>> price_by_set(n, std::vector<double>(m, -1.0));

  auto open_elements = [&]() {
    int c = 0;
    for (int u = 0; u < n; ++u) {
      if (covered[u] < inst.requirement(u)) ++c;
    }
    return c;
  };

  double paid = 0.0;
  while (open_elements() > 0) {
    int best_set = -1;
    RatioResult best;
    best.ratio = std::numeric_limits<double>::infinity();
    for (int s = 0; s < m; ++s) {
      if (remaining[s].empty()) continue;
      double cost_s = inst.sets[s].cost;
      SetFunction f{remaining[s], [&dist, cost_s](const ElemSet& B) {
                      return cost_s * hit_prob(dist, B);
                    }};
      RatioResult r = minimize_ratio(f);
      if (r.ratio < best.ratio - 1e-12) {
        best = r;
        best_set = s;
      }
    }
    if (best_set < 0)
      throw SolveError("greedy multicover: no candidate pair left");  // unreachable

    best.minimizer.for_each([&](int u) {
      prices[u].push_back(best.ratio);
      price_by_set[u][best_set] = best.ratio;
      chosen[u].push_back(best_set);
      covered[u] += 1;
      paid += best.ratio;
    });
    remaining[best_set] = remaining[best_set].minus(best.minimizer);
    best.minimizer.for_each([&](int u) {
      if (covered[u] == inst.requirement(u)) {
        for (int s = 0; s < m; ++s) {
          if (remaining[s].contains(u)) remaining[s].erase(u);
        }
      }
    });
  }

  GreedyResult res;
  res.mapping.sets_of = std::move(chosen);
  res.alpha.assign(n, 0.0);
  for (int u = 0; u < n; ++u) res.alpha[u] = prices[u].back();
  res.beta.assign(m, 0.0);
  for (int s = 0; s < m; ++s) {
    for (int u = 0; u < n; ++u) {
      if (price_by_set[u][s] >= 0.0) res.beta[s] += res.alpha[u] - price_by_set[u][s];
    }
  }
  res.paid = paid;
  res.cost = expected_cover_cost(inst, res.mapping, dist);
  return res;
}

enum class InnerSolver { lp_round, greedy };

struct SaaResult {
  Mapping mapping;
  Distribution empirical_dist;
  int samples = 0;
  double empirical_cost = 0.0;
};

// Chernoff sample bound for the sample-average approximation; natural logs,
// capped at 1e6 draws.
inline int saa_sample_bound(int n, int m, double cost_ratio, double eps,
                            bool* capped = nullptr) {
  if (n < 1 || m < 1 || eps <= 0.0) throw ValidationError("saa bound: bad parameters");
  double w = std::max(1.0, cost_ratio);
  double base = n * (n * std::log(static_cast<double>(m)) +
                     2.0 * std::log(static_cast<double>(n)));
  double rate = 6.0 / (eps * eps);
  double bound = (w > 1.0 + kTol) ? rate * w * (base + n * std::log(w)) : rate * base;
  bound = std::max(bound, 1.0);
  if (capped) *capped = bound > 1e6;
  return static_cast<int>(std::ceil(std::min(bound, 1e6)));
}

// Sample-average approximation for the oracle model: draw N request sets,
// build the empirical distribution, and run the chosen scenario-model solver
// on it. The inner solver assigns every element, including ones that never
// appeared in a draw.
inline SaaResult saa_solve(const Instance& inst, const Distribution& dist, int samples,
                           InnerSolver inner, uint64_t seed) {
  if (samples < 1) throw ValidationError("saa: sample count must be >= 1");
  std::vector<ElemSet> draws;
  draws.reserve(samples);
  for (int i = 0; i < samples; ++i)
    draws.push_back(sample_request(dist, derive_seed(seed, "saa-draw", i)));
  SaaResult res{Mapping{}, empirical(inst.n, draws), samples, 0.0};
  switch (inner) {
    case InnerSolver::lp_round: {
      FractionalCover frac = solve_config_lp(inst, res.empirical_dist);
      RoundResult rr =
          round_randomized(inst, res.empirical_dist, frac, derive_seed(seed, "saa-round"));
      res.mapping = std::move(rr.mapping);
      res.empirical_cost = rr.cost;
      break;
    }
    case InnerSolver::greedy: {
      GreedyResult gr = greedy_multicover(inst, res.empirical_dist);
      res.mapping = std::move(gr.mapping);
      res.empirical_cost = gr.cost;
      break;
    }
  }
  return res;
}

}  // namespace ucover
