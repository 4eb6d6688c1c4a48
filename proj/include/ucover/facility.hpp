#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/distribution.hpp"
#include "ucover/lp.hpp"

namespace ucover {

struct FlFacility {
  std::string id;
  double open_cost = 0.0;
};

// Uncapacitated facility location with independently activating clients.
struct FlInstance {
  std::vector<double> client_probs;
  std::vector<FlFacility> facilities;
  std::vector<std::vector<double>> dist;  // [client][facility]
  bool metric = false;

  int num_clients() const { return static_cast<int>(client_probs.size()); }
  int num_facilities() const { return static_cast<int>(facilities.size()); }
  double d(int c, int f) const { return dist[c][f]; }

  int facility_index(const std::string& id) const {
    for (int f = 0; f < num_facilities(); ++f) {
      if (facilities[f].id == id) return f;
    }
    return -1;
  }

  Distribution activation() const { return Distribution::independent(client_probs); }

  void validate() const {
    if (num_clients() == 0 || num_facilities() == 0)
      throw ValidationError("facility instance needs at least one client and facility");
    for (double p : client_probs) {
      if (p < -kTol || p > 1.0 + kTol)
        throw ValidationError("client activation probability outside [0,1]");
    }
    for (const auto& f : facilities) {
      if (f.open_cost < 0.0) throw ValidationError("negative opening cost: " + f.id);
    }
    if (static_cast<int>(dist.size()) != num_clients())
      throw ValidationError("distance matrix row count differs from client count");
    for (const auto& row : dist) {
      if (static_cast<int>(row.size()) != num_facilities())
        throw ValidationError("distance matrix column count differs from facility count");
      for (double v : row) {
        if (!(v >= 0.0) || !std::isfinite(v))
          throw ValidationError("distances must be finite and nonnegative");
      }
    }
    if (metric) {
      // Bipartite metric condition: d extends to a metric on clients and
      // facilities iff every client-facility zigzag obeys the triangle chain.
      for (int c = 0; c < num_clients(); ++c) {
        for (int c2 = 0; c2 < num_clients(); ++c2) {
          for (int f = 0; f < num_facilities(); ++f) {
            for (int f2 = 0; f2 < num_facilities(); ++f2) {
              if (d(c, f) > d(c, f2) + d(c2, f2) + d(c2, f) + kTol)
                throw ValidationError("distance matrix violates the metric flag");
            }
          }
        }
      }
    }
  }
};

// Fractional rent-or-buy solution: buy[c][f] covers c through jointly opened
// capacity, rent[c][f] through per-activation payments.
struct FlFractional {
  std::vector<std::vector<double>> buy;
  std::vector<std::vector<double>> rent;
  double value = 0.0;
};

struct FlMapping {
  std::vector<int> facility_of;

  void validate(const FlInstance& inst) const {
    if (static_cast<int>(facility_of.size()) != inst.num_clients())
      throw InfeasibleError("facility mapping does not assign every client");
    for (int c = 0; c < inst.num_clients(); ++c) {
      if (facility_of[c] < 0 || facility_of[c] >= inst.num_facilities())
        throw InfeasibleError("client " + std::to_string(c) +
                              " has no assigned facility");
    }
  }
};

// Exact expected cost: each facility opens if any client mapped to it
// activates; connections are paid per activated client.
inline double expected_fl_cost(const FlInstance& inst, const FlMapping& phi) {
  phi.validate(inst);
  Distribution act = inst.activation();
  double cost = 0.0;
  for (int f = 0; f < inst.num_facilities(); ++f) {
    ElemSet served(inst.num_clients());
    for (int c = 0; c < inst.num_clients(); ++c) {
      if (phi.facility_of[c] == f) served.insert(c);
    }
    if (!served.empty()) cost += inst.facilities[f].open_cost * hit_prob(act, served);
  }
  for (int c = 0; c < inst.num_clients(); ++c)
    cost += inst.client_probs[c] * inst.d(c, phi.facility_of[c]);
  return cost;
}

// The rent-or-buy relaxation with the per-facility max linearized through
// one auxiliary variable. Layout: aux_f | buy_cf | rent_cf.
inline LinearProgram build_lp_fl(const FlInstance& inst) {
  const int nc = inst.num_clients();
  const int nf = inst.num_facilities();
  LinearProgram lp;
  lp.sense = Sense::minimize;
  for (int f = 0; f < nf; ++f) lp.add_var(inst.facilities[f].open_cost);
  auto buy_var = [&](int c, int f) { return nf + c * nf + f; };
  auto rent_var = [&](int c, int f) { return nf + nc * nf + c * nf + f; };
  for (int c = 0; c < nc; ++c) {
    for (int f = 0; f < nf; ++f)
      lp.add_var(inst.client_probs[c] * inst.d(c, f));
  }
  for (int c = 0; c < nc; ++c) {
    for (int f = 0; f < nf; ++f)
      lp.add_var(inst.client_probs[c] *
                 (inst.facilities[f].open_cost + inst.d(c, f)));
  }
  for (int c = 0; c < nc; ++c) {
    std::vector<double> row(lp.num_vars(), 0.0);
    for (int f = 0; f < nf; ++f) {
      row[buy_var(c, f)] = 1.0;
      row[rent_var(c, f)] = 1.0;
    }
    lp.add_row(std::move(row), Rel::ge, 1.0);
  }
  for (int c = 0; c < nc; ++c) {
    for (int f = 0; f < nf; ++f) {
      std::vector<double> row(lp.num_vars(), 0.0);
      row[buy_var(c, f)] = 1.0;
      row[f] = -1.0;
      lp.add_row(std::move(row), Rel::le, 0.0);
    }
  }
  return lp;
}

inline FlFractional solve_lp_fl(const FlInstance& inst) {
  inst.validate();
  const int nc = inst.num_clients();
  const int nf = inst.num_facilities();
  LpSolution sol = solve_lp(build_lp_fl(inst));
  FlFractional frac;
  frac.value = sol.value;
  frac.buy.assign(nc, std::vector<double>(nf, 0.0));
  frac.rent.assign(nc, std::vector<double>(nf, 0.0));
  for (int c = 0; c < nc; ++c) {
    for (int f = 0; f < nf; ++f) {
      frac.buy[c][f] = sol.x[nf + c * nf + f];
      frac.rent[c][f] = sol.x[nf + nc * nf + c * nf + f];
    }
  }
  return frac;
}

struct ClientSplit {
  std::vector<int> big;
  std::vector<int> small;
};

// Threshold split: clients with buy mass >= 3/4 go big; the rest have rent
// mass > 1/4 by feasibility and go small. Qualifying for both means big.
inline ClientSplit split_clients(const FlFractional& frac) {
  ClientSplit split;
  for (int c = 0; c < static_cast<int>(frac.buy.size()); ++c) {
    double buy = 0.0, rent = 0.0;
    for (double v : frac.buy[c]) buy += v;
    for (double v : frac.rent[c]) rent += v;
    if (buy >= 0.75 - kTol)
      split.big.push_back(c);
    else if (rent > 0.25 - kTol)
      split.small.push_back(c);
    else
      throw SolveError("client " + std::to_string(c) +
                       " qualifies for neither side; fractional cover infeasible");
  }
  return split;
}

struct PrimalDualResult {
  std::vector<int> open_facilities;          // selected independent set
  std::vector<int> facility_of;              // -1 for clients outside the subset
};

// Jain-Vazirani primal-dual for facility location where client c's dual
// grows at speed p_c. Edge (c,f) goes tight at absolute time d(c,f)
// regardless of speed; payments toward opening accrue at rate p_c past that.
// Ties break by facility index, then client index.
inline PrimalDualResult primal_dual_distorted_fl(const FlInstance& inst,
                                                 const std::vector<int>& clients) {
  inst.validate();
  const int nf = inst.num_facilities();
  PrimalDualResult result;
  result.facility_of.assign(inst.num_clients(), -1);
  if (clients.empty()) return result;

  constexpr double kTime = 1e-9;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> frozen(inst.num_clients(), true);
  for (int c : clients) frozen[c] = false;
  std::vector<double> tau(inst.num_clients(), 0.0);
  std::vector<int> witness(inst.num_clients(), -1);
  std::vector<bool> open(nf, false);
  std::vector<double> paid(nf, 0.0);
  std::vector<int> open_order;

  double t = 0.0;
  auto unfrozen_left = [&]() {
    for (int c : clients) {
      if (!frozen[c]) return true;
    }
    return false;
  };

  while (unfrozen_left()) {
    // Instant cascade at the current time: open fully paid facilities, then
    // freeze clients touching an open facility; repeat to a fixed point.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int f = 0; f < nf; ++f) {
        if (!open[f] && paid[f] >= inst.facilities[f].open_cost - kTime) {
          open[f] = true;
          open_order.push_back(f);
          changed = true;
        }
      }
      for (int c : clients) {
        if (frozen[c]) continue;
        for (int f : open_order) {
          if (inst.d(c, f) <= t + kTime) {
            frozen[c] = true;
            tau[c] = t;
            witness[c] = f;
            changed = true;
            break;
          }
        }
      }
    }
    if (!unfrozen_left()) break;

    // Next event: an edge becomes tight, or a facility finishes paying.
    double t_next = inf;
    for (int c : clients) {
      if (frozen[c]) continue;
      for (int f = 0; f < nf; ++f) {
        if (inst.d(c, f) > t + kTime) t_next = std::min(t_next, inst.d(c, f));
      }
    }
    std::vector<double> rate(nf, 0.0);
    for (int f = 0; f < nf; ++f) {
      if (open[f]) continue;
      for (int c : clients) {
        if (!frozen[c] && inst.d(c, f) <= t + kTime) rate[f] += inst.client_probs[c];
      }
      if (rate[f] > 1e-15)
        t_next = std::min(t_next, t + (inst.facilities[f].open_cost - paid[f]) / rate[f]);
    }
    if (t_next == inf) break;  // only zero-speed clients remain
    for (int f = 0; f < nf; ++f) {
      if (!open[f]) paid[f] += rate[f] * (t_next - t);
    }
    t = t_next;
  }

  // Final payments of frozen clients; growth stopped at their freeze time.
  auto contribution = [&](int c, int f) {
    return inst.client_probs[c] * std::max(0.0, tau[c] - inst.d(c, f));
  };

  // Conflict graph on temporarily open facilities; greedy independent set in
  // opening order, remembering which selection killed each rejected node.
  std::vector<int> kill(nf, -1);
  std::vector<bool> selected(nf, false), removed(nf, false);
  for (int f : open_order) {
    if (removed[f]) continue;
    selected[f] = true;
    result.open_facilities.push_back(f);
    for (int g = 0; g < nf; ++g) {
      if (g == f || !open[g] || removed[g] || selected[g]) continue;
      bool conflict = false;
      for (int c : clients) {
        if (witness[c] < 0) continue;
        if (contribution(c, f) > kTime && contribution(c, g) > kTime) {
          conflict = true;
          break;
        }
      }
      if (conflict) {
        removed[g] = true;
        kill[g] = f;
      }
    }
  }

  for (int c : clients) {
    if (witness[c] >= 0) {
      int w = witness[c];
      result.facility_of[c] = selected[w] ? w : kill[w];
    } else {
      // Zero-speed straggler: cost-free wherever it goes.
      if (!result.open_facilities.empty()) {
        int best = result.open_facilities.front();
        for (int f : result.open_facilities) {
          if (inst.d(c, f) < inst.d(c, best)) best = f;
        }
        result.facility_of[c] = best;
      } else {
        result.facility_of[c] = 0;
      }
    }
  }
  return result;
}

// Open-and-connect price of serving c alone through f.
inline double open_connect_cost(const FlInstance& inst, int c, int f) {
  return inst.facilities[f].open_cost + inst.d(c, f);
}

// End-to-end rounding: big clients through the distorted primal-dual, small
// clients to their cheapest open-and-connect facility.
inline FlMapping round_fl(const FlInstance& inst, const FlFractional& frac) {
  ClientSplit split = split_clients(frac);
  PrimalDualResult pd = primal_dual_distorted_fl(inst, split.big);
  FlMapping phi;
  phi.facility_of.assign(inst.num_clients(), -1);
  for (int c : split.big) phi.facility_of[c] = pd.facility_of[c];
  for (int c : split.small) {
    int best = 0;
    double best_cost = open_connect_cost(inst, c, 0);
    for (int f = 1; f < inst.num_facilities(); ++f) {
      double v = open_connect_cost(inst, c, f);
      if (v < best_cost - kTol) {
        best = f;
        best_cost = v;
      }
    }
    phi.facility_of[c] = best;
  }
  return phi;
}

// Full pipeline: LP, split, distorted primal-dual, cheapest-facility rents.
inline FlMapping solve_facility(const FlInstance& inst) {
  FlFractional frac = solve_lp_fl(inst);
  return round_fl(inst, frac);
}

}  // namespace ucover
