#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/distribution.hpp"
#include "ucover/instance.hpp"

namespace ucover {

struct GraphEdge {
  int u = 0, v = 0;
  double cost = 0.0;
};

// Undirected graph for vertex- and edge-cover problems.
struct GraphInstance {
  int nodes = 0;
  std::vector<GraphEdge> edges;

  int num_edges() const { return static_cast<int>(edges.size()); }

  int degree(int v) const {
    int d = 0;
    for (const auto& e : edges) {
      if (e.u == v || e.v == v) ++d;
    }
    return d;
  }

  void validate() const {
    if (nodes < 1) throw ValidationError("graph needs at least one node");
    for (const auto& e : edges) {
      if (e.u < 0 || e.u >= nodes || e.v < 0 || e.v >= nodes)
        throw ValidationError("edge endpoint out of range");
      if (e.u == e.v) throw ValidationError("self-loops are not allowed");
      if (e.cost < 0.0) throw ValidationError("negative edge cost");
    }
  }

  // Collapses parallel edges to the cheapest (first on ties).
  GraphInstance simplified() const {
    validate();
    GraphInstance out;
    out.nodes = nodes;
    for (const auto& e : edges) {
      int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
      bool dup = false;
      for (auto& kept : out.edges) {
        if (std::min(kept.u, kept.v) == a && std::max(kept.u, kept.v) == b) {
          dup = true;
          if (e.cost < kept.cost - kTol) kept.cost = e.cost;
          break;
        }
      }
      if (!dup) out.edges.push_back(e);
    }
    return out;
  }
};

// Lowers the graph to a covering instance: vertices are elements, each edge
// is a set covering its two endpoints. Edge ids follow input order.
inline Instance edge_cover_as_instance(const GraphInstance& g) {
  g.validate();
  Instance inst;
  inst.n = g.nodes;
  for (int e = 0; e < g.num_edges(); ++e) {
    ElemSet s(g.nodes);
    s.insert(g.edges[e].u);
    s.insert(g.edges[e].v);
    inst.sets.push_back({"e" + std::to_string(e), g.edges[e].cost, s});
  }
  return inst;
}

// Lowers the graph to the vertex-cover instance: edges are elements, each
// vertex is a set covering its incident edges.
inline Instance vertex_cover_as_instance(const GraphInstance& g,
                                         const std::vector<double>& vertex_costs) {
  g.validate();
  if (static_cast<int>(vertex_costs.size()) != g.nodes)
    throw ValidationError("vertex cost list length differs from node count");
  Instance inst;
  inst.n = g.num_edges();
  for (int v = 0; v < g.nodes; ++v) {
    ElemSet s(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edges[e].u == v || g.edges[e].v == v) s.insert(e);
    }
    inst.sets.push_back({"v" + std::to_string(v), vertex_costs[v], s});
  }
  return inst;
}

// The reduced deterministic edge-cover instance plus enough provenance to
// translate its solution back into a universal mapping.
struct ReducedEdgeCover {
  GraphInstance graph;  // nodes = original + 2 gadget vertices a, b
  struct Origin {
    enum class Kind { full, loop, gadget } kind = Kind::full;
    int orig_edge = -1;  // full: the edge itself; loop: cheapest incident edge
    int vertex = -1;     // loop: the covered vertex
  };
  std::vector<Origin> origins;  // parallel to graph.edges
  int gadget_a = -1, gadget_b = -1;
};

// Reduction to deterministic weighted edge cover: full edges keep cost
// c_e * hit({u,v}); covering a single endpoint v becomes an edge from v to
// gadget vertex a at the cheapest incident cost times hit({v}); a 0-cost
// edge a-b makes the gadget self-covering.
inline ReducedEdgeCover reduce_edge_cover(const GraphInstance& graph,
                                          const Distribution& dist) {
  GraphInstance g = graph.simplified();
  if (dist.universe() != g.nodes)
    throw ValidationError("distribution universe differs from node count");
  for (int v = 0; v < g.nodes; ++v) {
    if (g.degree(v) == 0)
      throw InfeasibleError("vertex " + std::to_string(v) + " has no incident edge");
  }
  ReducedEdgeCover red;
  red.gadget_a = g.nodes;
  red.gadget_b = g.nodes + 1;
  red.graph.nodes = g.nodes + 2;
  for (int e = 0; e < g.num_edges(); ++e) {
    ElemSet both(g.nodes);
    both.insert(g.edges[e].u);
    both.insert(g.edges[e].v);
    red.graph.edges.push_back(
        {g.edges[e].u, g.edges[e].v, g.edges[e].cost * hit_prob(dist, both)});
    red.origins.push_back({ReducedEdgeCover::Origin::Kind::full, e, -1});
  }
  for (int v = 0; v < g.nodes; ++v) {
    int cheapest = -1;
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edges[e].u != v && g.edges[e].v != v) continue;
      if (cheapest < 0 || g.edges[e].cost < g.edges[cheapest].cost - kTol) cheapest = e;
    }
    red.graph.edges.push_back({v, red.gadget_a, g.edges[cheapest].cost * hit_prob(dist, v)});
    red.origins.push_back({ReducedEdgeCover::Origin::Kind::loop, cheapest, v});
  }
  red.graph.edges.push_back({red.gadget_a, red.gadget_b, 0.0});
  red.origins.push_back({ReducedEdgeCover::Origin::Kind::gadget, -1, -1});
  return red;
}

inline constexpr int kEdgeCoverDpCap = 18;

// Exact minimum-cost edge cover by subset dynamic programming over covered
// vertex sets: O(2^V * E). Adequate at desk scale; the classical matching
// reduction would be needed beyond it.
inline std::vector<int> solve_edge_cover_exact(const GraphInstance& g) {
  g.validate();
  if (g.nodes > kEdgeCoverDpCap)
    throw SizeCapError("exact edge cover: node count exceeds the subset-DP cap");
  for (int v = 0; v < g.nodes; ++v) {
    if (g.degree(v) == 0)
      throw InfeasibleError("vertex " + std::to_string(v) + " has no incident edge");
  }
  const int full = (1 << g.nodes) - 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full + 1, inf);
  std::vector<int> via_edge(full + 1, -1), via_mask(full + 1, -1);
  dp[0] = 0.0;
  for (int mask = 0; mask <= full; ++mask) {
    if (dp[mask] == inf || mask == full) continue;
    int v = __builtin_ctz(~mask);  // lowest uncovered vertex
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.edges[e].u != v && g.edges[e].v != v) continue;
      int next = mask | (1 << g.edges[e].u) | (1 << g.edges[e].v);
      double cand = dp[mask] + g.edges[e].cost;
      if (cand < dp[next] - 1e-15) {
        dp[next] = cand;
        via_edge[next] = e;
        via_mask[next] = mask;
      }
    }
  }
  if (dp[full] == inf) throw InfeasibleError("no edge cover exists");
  std::vector<int> chosen;
  for (int mask = full; mask != 0; mask = via_mask[mask]) chosen.push_back(via_edge[mask]);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

struct EdgeCoverResult {
  std::vector<int> edge_of;  // per vertex, covering original edge index
  double cost = 0.0;         // exact expected cost == reduced optimum
  std::vector<int> reduced_edges;
};

// Exact universal edge cover: reduce, solve the deterministic instance, and
// read the mapping back (a chosen gadget edge covers its vertex through the
// cheapest incident original edge).
inline EdgeCoverResult universal_edge_cover(const GraphInstance& graph,
                                            const Distribution& dist) {
  GraphInstance g = graph.simplified();
  ReducedEdgeCover red = reduce_edge_cover(g, dist);
  std::vector<int> solution = solve_edge_cover_exact(red.graph);

  EdgeCoverResult res;
  res.reduced_edges = solution;
  res.edge_of.assign(g.nodes, -1);
  for (int re : solution) {
    const auto& origin = red.origins[re];
    if (origin.kind == ReducedEdgeCover::Origin::Kind::full) {
      const auto& e = g.edges[origin.orig_edge];
      if (res.edge_of[e.u] < 0) res.edge_of[e.u] = origin.orig_edge;
      if (res.edge_of[e.v] < 0) res.edge_of[e.v] = origin.orig_edge;
    }
  }
  for (int re : solution) {
    const auto& origin = red.origins[re];
    if (origin.kind == ReducedEdgeCover::Origin::Kind::loop &&
        res.edge_of[origin.vertex] < 0)
      res.edge_of[origin.vertex] = origin.orig_edge;
  }
  for (int v = 0; v < g.nodes; ++v) {
    if (res.edge_of[v] < 0)
      throw SolveError("edge cover interpretation left a vertex uncovered");
  }

  // Expected cost under cover semantics: an edge is bought once if any
  // vertex mapped to it activates.
  double cost = 0.0;
  for (int e = 0; e < g.num_edges(); ++e) {
    ElemSet assigned(g.nodes);
    for (int v = 0; v < g.nodes; ++v) {
      if (res.edge_of[v] == e) assigned.insert(v);
    }
    if (!assigned.empty()) cost += g.edges[e].cost * hit_prob(dist, assigned);
  }
  res.cost = cost;
  return res;
}

}  // namespace ucover
