#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/distribution.hpp"
#include "ucover/edgecover.hpp"
#include "ucover/facility.hpp"
#include "ucover/instance.hpp"
#include "ucover/multicut.hpp"

namespace ucover {

// Seeded random instance generators for benchmarks and property suites. All
// outputs are feasible by construction.

inline Instance gen_cover_instance(std::mt19937_64& gen, int max_n, int max_m,
                                   int max_requirement = 1) {
  const int n = 2 + uniform_below(gen, std::max(1, max_n - 1));
  const int m = 2 + uniform_below(gen, std::max(1, max_m - 1));
  Instance inst;
  inst.n = n;
  for (int s = 0; s < m; ++s) {
    ElemSet elems(n);
    for (int u = 0; u < n; ++u) {
      if (uniform01(gen) < 0.5) elems.insert(u);
    }
    inst.sets.push_back({"S" + std::to_string(s), 0.1 + 2.0 * uniform01(gen), elems});
  }
  if (max_requirement > 1) {
    inst.requirements.assign(n, 1);
    for (int u = 0; u < n; ++u)
      inst.requirements[u] = 1 + uniform_below(gen, max_requirement);
  }
  // Patch coverage up to the requirement.
  for (int u = 0; u < n; ++u) {
    while (inst.frequency(u) < inst.requirement(u)) {
      int s = uniform_below(gen, m);
      if (!inst.sets[s].elements.contains(u)) inst.sets[s].elements.insert(u);
    }
  }
  return inst;
}

inline Distribution gen_scenario_dist(std::mt19937_64& gen, int n, int max_scenarios,
                                      bool allow_empty = true) {
  const int k = 1 + uniform_below(gen, max_scenarios);
  std::vector<Scenario> scs;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    ElemSet elems(n);
    for (int u = 0; u < n; ++u) {
      if (uniform01(gen) < 0.4) elems.insert(u);
    }
    if (!allow_empty && elems.empty()) elems.insert(uniform_below(gen, n));
    double w = 0.05 + uniform01(gen);
    total += w;
    scs.push_back({w, elems});
  }
  for (auto& sc : scs) sc.prob /= total;
  return Distribution::scenarios(n, std::move(scs));
}

inline Distribution gen_independent_dist(std::mt19937_64& gen, int n) {
  std::vector<double> p(n);
  for (double& v : p) v = uniform01(gen);
  return Distribution::independent(std::move(p));
}

// Connected simple graph with every vertex covered by at least one edge.
inline GraphInstance gen_graph(std::mt19937_64& gen, int max_nodes, int max_edges) {
  const int v = 2 + uniform_below(gen, std::max(1, max_nodes - 1));
  GraphInstance g;
  g.nodes = v;
  // random spanning tree first
  for (int w = 1; w < v; ++w)
    g.edges.push_back({uniform_below(gen, w), w, 0.1 + uniform01(gen)});
  int extra = uniform_below(gen, std::max(1, max_edges - v + 1));
  for (int i = 0; i < extra && g.num_edges() < max_edges; ++i) {
    int a = uniform_below(gen, v), b = uniform_below(gen, v);
    if (a == b) continue;
    g.edges.push_back({a, b, 0.1 + uniform01(gen)});
  }
  return g.simplified();
}

// Random metric instance: clients and facilities as points in the unit
// square, Euclidean distances.
inline FlInstance gen_metric_fl(std::mt19937_64& gen, int max_clients,
                                int max_facilities) {
  const int nc = 1 + uniform_below(gen, max_clients);
  const int nf = 1 + uniform_below(gen, max_facilities);
  std::vector<std::pair<double, double>> cpos(nc), fpos(nf);
  for (auto& p : cpos) p = {uniform01(gen), uniform01(gen)};
  for (auto& p : fpos) p = {uniform01(gen), uniform01(gen)};
  FlInstance inst;
  inst.metric = true;
  for (int c = 0; c < nc; ++c) inst.client_probs.push_back(uniform01(gen));
  for (int f = 0; f < nf; ++f)
    inst.facilities.push_back({"f" + std::to_string(f), 2.0 * uniform01(gen)});
  inst.dist.assign(nc, std::vector<double>(nf, 0.0));
  for (int c = 0; c < nc; ++c) {
    for (int f = 0; f < nf; ++f)
      inst.dist[c][f] = std::hypot(cpos[c].first - fpos[f].first,
                                   cpos[c].second - fpos[f].second);
  }
  return inst;
}

// Random tree with independently activating terminal pairs.
inline McTreeInstance gen_tree_multicut(std::mt19937_64& gen, int max_nodes,
                                        int max_pairs) {
  const int v = 2 + uniform_below(gen, std::max(1, max_nodes - 1));
  McTreeInstance inst;
  inst.nodes = v;
  for (int w = 1; w < v; ++w)
    inst.edges.push_back({uniform_below(gen, w), w, 0.1 + uniform01(gen)});
  const int k = 1 + uniform_below(gen, max_pairs);
  for (int i = 0; i < k; ++i) {
    int s = uniform_below(gen, v), t = uniform_below(gen, v);
    if (s == t) t = (t + 1) % v;
    inst.pairs.push_back({s, t, uniform01(gen)});
  }
  return inst;
}

}  // namespace ucover
