#pragma once

#include <string>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/elemset.hpp"

namespace ucover {

struct CoverSet {
  std::string id;
  double cost = 0.0;
  ElemSet elements;
};

// A weighted covering instance over universe {0..n-1}. `requirements[u]` is
// the number of distinct sets element u must be mapped to (all 1 for plain
// set cover).
struct Instance {
  int n = 0;
  std::vector<CoverSet> sets;
  std::vector<int> requirements;

  int num_sets() const { return static_cast<int>(sets.size()); }

  int requirement(int u) const {
    return requirements.empty() ? 1 : requirements[u];
  }

  bool multicover() const {
    for (int u = 0; u < n; ++u) {
      if (requirement(u) > 1) return true;
    }
    return false;
  }

  int set_index(const std::string& id) const {
    for (int i = 0; i < num_sets(); ++i) {
      if (sets[i].id == id) return i;
    }
    return -1;
  }

  // Number of sets containing u.
  int frequency(int u) const {
    int f = 0;
    for (const auto& s : sets) {
      if (s.elements.contains(u)) ++f;
    }
    return f;
  }

  int max_frequency() const {
    int f = 0;
    for (int u = 0; u < n; ++u) f = std::max(f, frequency(u));
    return f;
  }

  double max_cost() const {
    double c = 0.0;
    for (const auto& s : sets) c = std::max(c, s.cost);
    return c;
  }

  // Structural validation: ids unique, elements in range, costs nonnegative.
  void validate() const {
    if (n < 0) throw ValidationError("instance: negative universe size");
    if (!requirements.empty() && static_cast<int>(requirements.size()) != n)
      throw ValidationError("instance: requirements length differs from n");
    for (int r : requirements) {
      if (r < 1) throw ValidationError("instance: requirement must be positive");
    }
    for (size_t i = 0; i < sets.size(); ++i) {
      const auto& s = sets[i];
      if (s.cost < 0.0) throw ValidationError("instance: negative set cost: " + s.id);
      if (s.elements.universe() != n)
        throw ValidationError("instance: set universe mismatch: " + s.id);
      for (size_t j = i + 1; j < sets.size(); ++j) {
        if (sets[j].id == s.id)
          throw ValidationError("instance: duplicate set id: " + s.id);
      }
    }
  }

  // Throws InfeasibleError naming the first element with fewer than r(u)
  // distinct sets containing it.
  void check_feasible() const {
    for (int u = 0; u < n; ++u) {
      if (frequency(u) < requirement(u))
        throw InfeasibleError("element " + std::to_string(u) + " is contained in " +
                              std::to_string(frequency(u)) + " sets but requires " +
                              std::to_string(requirement(u)));
    }
  }
};

// Optional per-(element, set) connection costs; turns set cover into
// non-metric facility location. Raw distances: the LP and the evaluator both
// weight d(u,S) by the activation probability of u.
struct ConnectionCosts {
  // d[u][set_index] >= 0
  std::vector<std::vector<double>> d;

  double at(int u, int s) const { return d[u][s]; }

  void validate(const Instance& inst) const {
    if (static_cast<int>(d.size()) != inst.n)
      throw ValidationError("connection costs: row count differs from n");
    for (const auto& row : d) {
      if (static_cast<int>(row.size()) != inst.num_sets())
        throw ValidationError("connection costs: column count differs from set count");
      for (double v : row) {
        if (!(v >= 0.0)) throw ValidationError("connection costs must be nonnegative");
      }
    }
  }
};

// An a-priori mapping: for each element, the indices of the r(u) distinct
// sets it is mapped to.
struct Mapping {
  std::vector<std::vector<int>> sets_of;  // per element, set indices

  void validate(const Instance& inst) const {
    if (static_cast<int>(sets_of.size()) != inst.n)
      throw InfeasibleError("mapping does not assign every element");
    for (int u = 0; u < inst.n; ++u) {
      const auto& chosen = sets_of[u];
      if (static_cast<int>(chosen.size()) != inst.requirement(u))
        throw InfeasibleError("element " + std::to_string(u) + " is assigned " +
                              std::to_string(chosen.size()) + " sets but requires " +
                              std::to_string(inst.requirement(u)));
      for (size_t i = 0; i < chosen.size(); ++i) {
        int s = chosen[i];
        if (s < 0 || s >= inst.num_sets())
          throw InfeasibleError("element " + std::to_string(u) + ": set index out of range");
        if (!inst.sets[s].elements.contains(u))
          throw InfeasibleError("element " + std::to_string(u) + " mapped to set " +
                                inst.sets[s].id + " which does not contain it");
        for (size_t j = i + 1; j < chosen.size(); ++j) {
          if (chosen[j] == s)
            throw InfeasibleError("element " + std::to_string(u) +
                                  " mapped twice to set " + inst.sets[s].id);
        }
      }
    }
  }
};

}  // namespace ucover
