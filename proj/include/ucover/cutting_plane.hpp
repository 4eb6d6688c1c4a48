#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/elemset.hpp"
#include "ucover/lp.hpp"

namespace ucover {

// One generated constraint, tagged with the (set, subset) pair it came from
// so the restricted primal can rebuild the matching column.
struct Cut {
  std::vector<double> coeffs;
  Rel rel = Rel::le;
  double rhs = 0.0;
  std::string set_id;
  ElemSet subset;
};

struct CutPool {
  std::vector<Cut> cuts;

  bool contains(const std::string& set_id, const ElemSet& subset) const {
    for (const auto& c : cuts) {
      if (c.set_id == set_id && c.subset == subset) return true;
    }
    return false;
  }
};

struct CuttingPlaneResult {
  std::vector<double> point;  // final master solution (dual values)
  double value = 0.0;
  CutPool pool;
  int rounds = 0;
};

// Kelley-style cutting-plane loop: solve the master, ask the separator for
// constraints violated by more than kCutTol, add them, repeat until none
// come back. The master must be bounded before any cut arrives (box bounds
// are fine). `initial_pool` tags rows already present in the master.
inline CuttingPlaneResult cutting_plane(
    LinearProgram master,
    const std::function<std::vector<Cut>(const std::vector<double>&)>& separator,
    CutPool initial_pool = {}, int max_rounds = 10000) {
  CuttingPlaneResult result;
  result.pool = std::move(initial_pool);
  for (int round = 1; round <= max_rounds; ++round) {
    LpSolution sol = solve_lp(master);
    result.rounds = round;
    std::vector<Cut> cuts = separator ? separator(sol.x) : std::vector<Cut>{};
    bool added = false;
    for (auto& cut : cuts) {
      if (result.pool.contains(cut.set_id, cut.subset)) {
        // A pool constraint re-reported as violated means the master solve
        // drifted past the separation threshold; surface it.
        throw SolveError("cutting plane: separator re-reported pooled cut " +
                         cut.set_id);
      }
      master.add_row(cut.coeffs, cut.rel, cut.rhs);
      result.pool.cuts.push_back(std::move(cut));
      added = true;
    }
    if (!added) {
      result.point = std::move(sol.x);
      result.value = sol.value;
      return result;
    }
  }
  throw SolveError("cutting plane: round cap (" + std::to_string(max_rounds) +
                   ") exceeded with cuts still separating");
}

}  // namespace ucover
