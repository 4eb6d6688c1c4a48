#pragma once

// Shared test helpers: independent probability oracles computed by brute
// enumeration, tiny LP vertex enumeration, and canonical fixtures. These
// stay independent of the library code paths they check.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ucover/ucover.hpp"

namespace testsupport {

using namespace ucover;

// Oracle: hit probability of B under an independent activation model,
// computed by enumerating all 2^n activation outcomes.
inline double enum_hit_prob_independent(const std::vector<double>& probs,
                                        const ElemSet& B) {
  const int n = static_cast<int>(probs.size());
  double total = 0.0;
  for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double p = 1.0;
    ElemSet outcome(n);
    for (int u = 0; u < n; ++u) {
      if (mask & (1ULL << u)) {
        p *= probs[u];
        outcome.insert(u);
      } else {
        p *= 1.0 - probs[u];
      }
    }
    if (outcome.intersects(B)) total += p;
  }
  return total;
}

// Oracle: LP optimum by enumerating basic feasible points. Treats every row
// and every nonnegativity bound as a candidate active constraint, solves all
// square subsystems, and keeps the best feasible point. Exponential; only
// for tiny fixtures.
inline double enum_lp_value(const LinearProgram& lp) {
  const int n = lp.num_vars();
  struct Constraint {
    std::vector<double> a;
    double rhs;
  };
  std::vector<Constraint> cons;
  for (const auto& row : lp.rows) cons.push_back({row.coeffs, row.rhs});
  for (int j = 0; j < n; ++j) {
    std::vector<double> a(n, 0.0);
    a[j] = 1.0;
    cons.push_back({a, 0.0});
  }
  const int m = static_cast<int>(cons.size());
  double best = lp.sense == Sense::minimize ? std::numeric_limits<double>::infinity()
                                            : -std::numeric_limits<double>::infinity();

  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      // solve the active subsystem
      std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = cons[pick[i]].a[j];
        a[i][n] = cons[pick[i]].rhs;
      }
      for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r) {
          if (piv < 0 || std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) < 1e-10) return;
        std::swap(a[col], a[piv]);
        for (int r = 0; r < n; ++r) {
          if (r == col) continue;
          double f = a[r][col] / a[col][col];
          for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
      }
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
      // feasibility
      for (int j = 0; j < n; ++j) {
        if (x[j] < -1e-7) return;
        double hi = j < static_cast<int>(lp.upper.size())
                        ? lp.upper[j]
                        : std::numeric_limits<double>::infinity();
        if (x[j] > hi + 1e-7) return;
      }
      for (const auto& row : lp.rows) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * x[j];
        if (row.rel == Rel::le && lhs > row.rhs + 1e-7) return;
        if (row.rel == Rel::ge && lhs < row.rhs - 1e-7) return;
        if (row.rel == Rel::eq && std::abs(lhs - row.rhs) > 1e-7) return;
      }
      double v = 0.0;
      for (int j = 0; j < n; ++j) v += lp.objective[j] * x[j];
      if (lp.sense == Sense::minimize)
        best = std::min(best, v);
      else
        best = std::max(best, v);
      return;
    }
    for (int i = start; i <= m - (n - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

// The canonical 3-element fixture used across the LP and separation tests.
inline Instance fixture3_instance() {
  Instance inst;
  inst.n = 3;
  inst.sets.push_back({"S1", 1.0, ElemSet::of(3, {0, 1})});
  inst.sets.push_back({"S2", 1.2, ElemSet::of(3, {1, 2})});
  inst.sets.push_back({"S3", 2.0, ElemSet::of(3, {0, 1, 2})});
  inst.sets.push_back({"S4", 0.5, ElemSet::of(3, {2})});
  return inst;
}

inline Distribution fixture3_dist() {
  return Distribution::scenarios(3, {{0.4, ElemSet::of(3, {0})},
                                     {0.3, ElemSet::of(3, {1, 2})},
                                     {0.2, ElemSet::of(3, {2})},
                                     {0.1, ElemSet(3)}});
}

// Two-element fixture: singletons at cost 1 each versus a pair set at 1.5.
inline Instance fixture2_instance() {
  Instance inst;
  inst.n = 2;
  inst.sets.push_back({"S1", 1.0, ElemSet::of(2, {0})});
  inst.sets.push_back({"S2", 1.0, ElemSet::of(2, {1})});
  inst.sets.push_back({"S3", 1.5, ElemSet::of(2, {0, 1})});
  return inst;
}

// Full configuration LP with every (set, subset) column, solved directly.
// The independent route that certifies the cutting-plane path.
inline double full_column_lp_value(const Instance& inst, const Distribution& dist,
                                   bool multicover = false,
                                   const ConnectionCosts* conn = nullptr) {
  LinearProgram lp;
  lp.sense = Sense::minimize;
  struct Col {
    int set;
    ElemSet subset;
  };
  std::vector<Col> cols;
  for (int s = 0; s < inst.num_sets(); ++s) {
    auto ids = inst.sets[s].elements.to_vector();
    const int k = static_cast<int>(ids.size());
    for (uint64_t mask = 1; mask < (1ULL << k); ++mask) {
      ElemSet subset(inst.n);
      for (int i = 0; i < k; ++i) {
        if (mask & (1ULL << i)) subset.insert(ids[i]);
      }
      cols.push_back({s, subset});
      double cost = inst.sets[s].cost * hit_prob(dist, subset);
      if (conn) {
        subset.for_each([&](int u) { cost += hit_prob(dist, u) * conn->at(u, s); });
      }
      lp.add_var(cost);
    }
  }
  for (int u = 0; u < inst.n; ++u) {
    std::vector<double> row(lp.num_vars(), 0.0);
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].subset.contains(u)) row[j] = 1.0;
    }
    lp.add_row(std::move(row), Rel::ge, static_cast<double>(inst.requirement(u)));
  }
  if (multicover) {
    for (int s = 0; s < inst.num_sets(); ++s) {
      std::vector<double> row(lp.num_vars(), 0.0);
      for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].set == s) row[j] = 1.0;
      }
      lp.add_row(std::move(row), Rel::le, 1.0);
    }
  }
  return solve_lp(lp).value;
}

}  // namespace testsupport
