#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/distribution.hpp"
#include "ucover/elemset.hpp"
#include "ucover/lp.hpp"

namespace ucover {

struct McEdge {
  int u = 0, v = 0;
  double cost = 0.0;
};

struct McPair {
  int s = 0, t = 0;
  double prob = 0.0;
};

// Multicut on a tree: terminal pairs activate independently; a universal
// solution commits, per pair, to a set of edges separating it.
struct McTreeInstance {
  int nodes = 0;
  std::vector<McEdge> edges;
  std::vector<McPair> pairs;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_pairs() const { return static_cast<int>(pairs.size()); }

  Distribution activation() const {
    std::vector<double> p;
    p.reserve(pairs.size());
    for (const auto& pr : pairs) p.push_back(pr.prob);
    return Distribution::independent(p);
  }

  void validate() const {
    if (nodes < 2) throw ValidationError("tree needs at least two nodes");
    if (num_edges() != nodes - 1)
      throw ValidationError("edge count differs from nodes-1; not a tree");
    for (const auto& e : edges) {
      if (e.u < 0 || e.u >= nodes || e.v < 0 || e.v >= nodes || e.u == e.v)
        throw ValidationError("edge endpoint out of range");
      if (e.cost < 0.0) throw ValidationError("negative edge cost");
    }
    for (const auto& p : pairs) {
      if (p.s < 0 || p.s >= nodes || p.t < 0 || p.t >= nodes)
        throw ValidationError("terminal out of range");
      if (p.s == p.t) throw ValidationError("terminal pair with equal endpoints");
      if (p.prob < -kTol || p.prob > 1.0 + kTol)
        throw ValidationError("pair activation probability outside [0,1]");
    }
    // Connectivity; with nodes-1 edges this certifies a tree.
    std::vector<std::vector<int>> adj(nodes);
    for (const auto& e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<bool> seen(nodes, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    if (reached != nodes) throw ValidationError("graph is not connected");
  }

  // Edge indices of the unique s-t path.
  std::vector<int> path_edges(int s, int t) const {
    std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // (neighbor, edge)
    for (int e = 0; e < num_edges(); ++e) {
      adj[edges[e].u].push_back({edges[e].v, e});
      adj[edges[e].v].push_back({edges[e].u, e});
    }
    std::vector<int> prev_edge(nodes, -1), prev_node(nodes, -1);
    std::vector<bool> seen(nodes, false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          prev_edge[w] = e;
          prev_node[w] = v;
          stack.push_back(w);
        }
      }
    }
    std::vector<int> path;
    for (int v = t; v != s; v = prev_node[v]) path.push_back(prev_edge[v]);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

struct McFractional {
  std::vector<double> buy;                // per edge
  std::vector<std::vector<double>> rent;  // [pair][edge], zero off the pair's path
  double value = 0.0;
};

struct McMapping {
  std::vector<std::vector<int>> cut_edges;  // per pair, edge indices

  void validate(const McTreeInstance& inst) const {
    if (static_cast<int>(cut_edges.size()) != inst.num_pairs())
      throw InfeasibleError("multicut mapping does not cover every pair");
    for (int c = 0; c < inst.num_pairs(); ++c) {
      auto path = inst.path_edges(inst.pairs[c].s, inst.pairs[c].t);
      bool cut = false;
      for (int e : cut_edges[c]) {
        if (e < 0 || e >= inst.num_edges())
          throw InfeasibleError("pair " + std::to_string(c) + ": edge index out of range");
        if (std::find(path.begin(), path.end(), e) != path.end()) cut = true;
      }
      if (!cut)
        throw InfeasibleError("pair " + std::to_string(c) +
                              " is not separated by its cut set");
    }
  }
};

// Exact expected cost: edge e is paid once if any pair whose cut set holds e
// activates.
inline double expected_mc_cost(const McTreeInstance& inst, const McMapping& phi) {
  phi.validate(inst);
  Distribution act = inst.activation();
  double cost = 0.0;
  for (int e = 0; e < inst.num_edges(); ++e) {
    ElemSet users(inst.num_pairs());
    for (int c = 0; c < inst.num_pairs(); ++c) {
      if (std::find(phi.cut_edges[c].begin(), phi.cut_edges[c].end(), e) !=
          phi.cut_edges[c].end())
        users.insert(c);
    }
    if (!users.empty()) cost += inst.edges[e].cost * hit_prob(act, users);
  }
  return cost;
}

// Rent-or-buy relaxation on a tree: one row per pair, polynomially many
// variables since each pair has a unique path. Layout: buy_e, then rent
// variables in (pair, path-position) order.
inline LinearProgram build_lp_mc_tree(const McTreeInstance& inst,
                                      std::vector<std::vector<int>>* rent_index = nullptr) {
  const int ne = inst.num_edges();
  const int np = inst.num_pairs();
  std::vector<std::vector<int>> paths(np);
  for (int c = 0; c < np; ++c) paths[c] = inst.path_edges(inst.pairs[c].s, inst.pairs[c].t);

  LinearProgram lp;
  lp.sense = Sense::minimize;
  for (int e = 0; e < ne; ++e) lp.add_var(inst.edges[e].cost);
  std::vector<std::vector<int>> rent_var(np, std::vector<int>(ne, -1));
  for (int c = 0; c < np; ++c) {
    for (int e : paths[c])
      rent_var[c][e] = lp.add_var(inst.edges[e].cost * inst.pairs[c].prob);
  }
  for (int c = 0; c < np; ++c) {
    std::vector<double> row(lp.num_vars(), 0.0);
    for (int e : paths[c]) {
      row[e] = 1.0;
      row[rent_var[c][e]] = 1.0;
    }
    lp.add_row(std::move(row), Rel::ge, 1.0);
  }
  if (rent_index) *rent_index = std::move(rent_var);
  return lp;
}

inline McFractional solve_lp_mc_tree(const McTreeInstance& inst) {
  inst.validate();
  const int ne = inst.num_edges();
  const int np = inst.num_pairs();
  std::vector<std::vector<int>> paths(np);
  for (int c = 0; c < np; ++c) paths[c] = inst.path_edges(inst.pairs[c].s, inst.pairs[c].t);
  std::vector<std::vector<int>> rent_var;
  LinearProgram lp = build_lp_mc_tree(inst, &rent_var);
  LpSolution sol = solve_lp(lp);
  McFractional frac;
  frac.value = sol.value;
  frac.buy.assign(ne, 0.0);
  for (int e = 0; e < ne; ++e) frac.buy[e] = sol.x[e];
  frac.rent.assign(np, std::vector<double>(ne, 0.0));
  for (int c = 0; c < np; ++c) {
    for (int e : paths[c]) frac.rent[c][e] = sol.x[rent_var[c][e]];
  }
  return frac;
}

// Classical multicut LP over a pair subset (deterministic costs); the
// benchmark for the primal-dual guarantee.
inline double classic_multicut_lp_value(const McTreeInstance& inst,
                                        const std::vector<int>& subset) {
  if (subset.empty()) return 0.0;
  LinearProgram lp;
  lp.sense = Sense::minimize;
  for (int e = 0; e < inst.num_edges(); ++e) lp.add_var(inst.edges[e].cost);
  for (int c : subset) {
    std::vector<double> row(lp.num_vars(), 0.0);
    for (int e : inst.path_edges(inst.pairs[c].s, inst.pairs[c].t)) row[e] = 1.0;
    lp.add_row(std::move(row), Rel::ge, 1.0);
  }
  return solve_lp(lp).value;
}

// Primal-dual 2-approximate multicut on trees: root at node 0, process
// vertices bottom-up, raise the dual of each uncut pair whose path tops out
// at the current vertex until an edge saturates, then reverse-delete.
inline std::vector<int> gvy_tree_multicut(const McTreeInstance& inst,
                                          const std::vector<int>& subset) {
  inst.validate();
  if (subset.empty()) return {};
  const int ne = inst.num_edges();

  std::vector<std::vector<std::pair<int, int>>> adj(inst.nodes);
  for (int e = 0; e < ne; ++e) {
    adj[inst.edges[e].u].push_back({inst.edges[e].v, e});
    adj[inst.edges[e].v].push_back({inst.edges[e].u, e});
  }
  std::vector<int> parent(inst.nodes, -1), depth(inst.nodes, 0);
  std::vector<int> order_bfs{0};
  std::vector<bool> seen(inst.nodes, false);
  seen[0] = true;
  for (size_t i = 0; i < order_bfs.size(); ++i) {
    int v = order_bfs[i];
    for (auto [w, e] : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        depth[w] = depth[v] + 1;
        order_bfs.push_back(w);
      }
    }
  }
  auto lca = [&](int a, int b) {
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      a = parent[a];
    }
    return a;
  };

  std::vector<std::vector<int>> paths;
  std::vector<int> tops;
  for (int c : subset) {
    paths.push_back(inst.path_edges(inst.pairs[c].s, inst.pairs[c].t));
    tops.push_back(lca(inst.pairs[c].s, inst.pairs[c].t));
  }

  std::vector<int> vertex_order(inst.nodes);
  std::iota(vertex_order.begin(), vertex_order.end(), 0);
  std::stable_sort(vertex_order.begin(), vertex_order.end(), [&](int a, int b) {
    if (depth[a] != depth[b]) return depth[a] > depth[b];
    return a < b;
  });

  std::vector<double> slack(ne);
  for (int e = 0; e < ne; ++e) slack[e] = inst.edges[e].cost;
  std::vector<int> tight_order;
  std::vector<bool> tight(ne, false);

  auto has_tight = [&](const std::vector<int>& path) {
    for (int e : path) {
      if (tight[e]) return true;
    }
    return false;
  };

  for (int v : vertex_order) {
    for (size_t i = 0; i < paths.size(); ++i) {
      if (tops[i] != v || has_tight(paths[i])) continue;
      double raise = std::numeric_limits<double>::infinity();
      for (int e : paths[i]) raise = std::min(raise, slack[e]);
      for (int e : paths[i]) slack[e] -= raise;
      for (int e : paths[i]) {  // edge-id order among simultaneous saturations
        if (!tight[e] && slack[e] <= kTol) {
          tight[e] = true;
          tight_order.push_back(e);
        }
      }
    }
  }

  std::vector<bool> in_cut(ne, false);
  for (int e : tight_order) in_cut[e] = true;
  auto all_cut = [&]() {
    for (const auto& path : paths) {
      bool cut = false;
      for (int e : path) {
        if (in_cut[e]) cut = true;
      }
      if (!cut) return false;
    }
    return true;
  };
  for (size_t i = tight_order.size(); i-- > 0;) {
    int e = tight_order[i];
    in_cut[e] = false;
    if (!all_cut()) in_cut[e] = true;
  }

  std::vector<int> result;
  for (int e = 0; e < ne; ++e) {
    if (in_cut[e]) result.push_back(e);
  }
  return result;
}

// Rent-or-buy rounding: pairs whose paths carry buy mass >= 2/3 are cut by
// the primal-dual edge set; the rest rent the cheapest edge on their path.
inline McMapping round_mc_tree(const McTreeInstance& inst, const McFractional& frac) {
  const int np = inst.num_pairs();
  std::vector<int> big;
  McMapping phi;
  phi.cut_edges.resize(np);
  std::vector<std::vector<int>> paths(np);
  for (int c = 0; c < np; ++c) {
    paths[c] = inst.path_edges(inst.pairs[c].s, inst.pairs[c].t);
    double bought = 0.0;
    for (int e : paths[c]) bought += frac.buy[e];
    if (bought >= 2.0 / 3.0 - kTol) big.push_back(c);
  }
  std::vector<int> cut = gvy_tree_multicut(inst, big);
  std::vector<bool> in_cut(inst.num_edges(), false);
  for (int e : cut) in_cut[e] = true;
  std::vector<bool> is_big(np, false);
  for (int c : big) is_big[c] = true;

  for (int c = 0; c < np; ++c) {
    if (is_big[c]) {
      for (int e : paths[c]) {
        if (in_cut[e]) phi.cut_edges[c].push_back(e);
      }
    } else {
      // cheapest path edge; lowest edge id among ties
      int best = paths[c].front();
      for (int e : paths[c]) {
        if (inst.edges[e].cost < inst.edges[best].cost - kTol ||
            (inst.edges[e].cost <= inst.edges[best].cost + kTol && e < best))
          best = e;
      }
      phi.cut_edges[c] = {best};
    }
  }
  return phi;
}

// Full pipeline: rent-or-buy LP plus the 3x rounding.
inline McMapping solve_multicut_tree(const McTreeInstance& inst) {
  McFractional frac = solve_lp_mc_tree(inst);
  return round_mc_tree(inst, frac);
}

}  // namespace ucover
