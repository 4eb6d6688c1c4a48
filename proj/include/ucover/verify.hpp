#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/distribution.hpp"
#include "ucover/facility.hpp"
#include "ucover/instance.hpp"
#include "ucover/multicut.hpp"
#include "ucover/setcover.hpp"

namespace ucover {

inline constexpr uint64_t kBruteCap = 1ULL << 24;
inline constexpr int kMonteCarloSamples = 100000;

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

// Offline cost of a cover mapping on one revealed request set: buy the union
// of the chosen sets, plus raw connection costs for activated elements.
inline double offline_cover_cost(const Instance& inst, const Mapping& phi,
                                 const ElemSet& request,
                                 const ConnectionCosts* conn = nullptr) {
  std::vector<bool> bought(inst.num_sets(), false);
  double cost = 0.0;
  request.for_each([&](int u) {
    for (int s : phi.sets_of[u]) {
      if (!bought[s]) {
        bought[s] = true;
        cost += inst.sets[s].cost;
      }
    }
    if (conn) {
      for (int s : phi.sets_of[u]) cost += conn->at(u, s);
    }
  });
  return cost;
}

// Expected cost evaluated the slow way, one scenario at a time. Agrees with
// expected_cover_cost by linearity; kept as an independent route for audits.
inline double scenario_sum_cover_cost(const Instance& inst, const Mapping& phi,
                                      const Distribution& dist,
                                      const ConnectionCosts* conn = nullptr) {
  if (dist.kind() != Distribution::Kind::scenario)
    throw NotEvaluableError("scenario_sum_cover_cost needs a scenario distribution");
  phi.validate(inst);
  double cost = 0.0;
  for (const auto& sc : dist.scenario_list())
    cost += sc.prob * offline_cover_cost(inst, phi, sc.elements, conn);
  return cost;
}

// Monte Carlo estimate of a mapping's expected cost; the evaluator of last
// resort for sampler distributions.
inline MonteCarloEstimate estimate_cover_cost(const Instance& inst, const Mapping& phi,
                                              const Distribution& dist, uint64_t seed,
                                              int samples = kMonteCarloSamples,
                                              const ConnectionCosts* conn = nullptr) {
  phi.validate(inst);
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < samples; ++i) {
    ElemSet request = sample_request(dist, derive_seed(seed, "mc-eval", i));
    double c = offline_cover_cost(inst, phi, request, conn);
    sum += c;
    sumsq += c * c;
  }
  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = sum / samples;
  double var = std::max(0.0, sumsq / samples - est.mean * est.mean);
  est.std_error = std::sqrt(var / samples);
  return est;
}

struct BruteResult {
  Mapping mapping;
  double cost = 0.0;
};

// Exact optimal universal mapping by enumerating, per element, every
// r(u)-subset of the sets containing it. Lexicographically first optimum.
inline BruteResult brute_universal_cover(const Instance& inst, const Distribution& dist,
                                         const ConnectionCosts* conn = nullptr) {
  inst.validate();
  inst.check_feasible();
  const int n = inst.n;
  std::vector<std::vector<std::vector<int>>> choices(n);
  double space = 1.0;
  for (int u = 0; u < n; ++u) {
    std::vector<int> holders;
    for (int s = 0; s < inst.num_sets(); ++s) {
      if (inst.sets[s].elements.contains(u)) holders.push_back(s);
    }
    const int r = inst.requirement(u);
    // r-subsets of holders in lexicographic order
    std::vector<int> idx(r);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == r) {
        std::vector<int> subset;
        for (int i : idx) subset.push_back(holders[i]);
        choices[u].push_back(std::move(subset));
        return;
      }
      for (int i = start; i <= static_cast<int>(holders.size()) - (r - depth); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    space *= static_cast<double>(choices[u].size());
    if (space > static_cast<double>(kBruteCap))
      throw SizeCapError("brute universal cover: search space " +
                         std::to_string(space) + " exceeds cap");
  }

  BruteResult best;
  best.cost = std::numeric_limits<double>::infinity();
  Mapping current;
  current.sets_of.assign(n, {});
  std::function<void(int)> rec = [&](int u) {
    if (u == n) {
      double c = expected_cover_cost(inst, current, dist, conn);
      if (c < best.cost - kTol) best = {current, c};
      return;
    }
    for (const auto& subset : choices[u]) {
      current.sets_of[u] = subset;
      rec(u + 1);
    }
  };
  rec(0);
  return best;
}

struct BruteFlResult {
  FlMapping mapping;
  double cost = 0.0;
};

inline BruteFlResult brute_universal_fl(const FlInstance& inst) {
  inst.validate();
  const int nc = inst.num_clients();
  const int nf = inst.num_facilities();
  double space = std::pow(static_cast<double>(nf), nc);
  if (space > static_cast<double>(kBruteCap))
    throw SizeCapError("brute universal facility location: search space exceeds cap");
  BruteFlResult best;
  best.cost = std::numeric_limits<double>::infinity();
  FlMapping current;
  current.facility_of.assign(nc, 0);
  std::function<void(int)> rec = [&](int c) {
    if (c == nc) {
      double v = expected_fl_cost(inst, current);
      if (v < best.cost - kTol) best = {current, v};
      return;
    }
    for (int f = 0; f < nf; ++f) {
      current.facility_of[c] = f;
      rec(c + 1);
    }
  };
  rec(0);
  return best;
}

struct BruteMcResult {
  McMapping mapping;
  double cost = 0.0;
};

// Optimal universal tree multicut. Restricting each pair to a single path
// edge is lossless: dropping extra edges from a cut set keeps it a cut and,
// by monotonicity of the hit probability, never raises the cost.
inline BruteMcResult brute_universal_mc(const McTreeInstance& inst) {
  inst.validate();
  const int np = inst.num_pairs();
  std::vector<std::vector<int>> paths(np);
  double space = 1.0;
  for (int c = 0; c < np; ++c) {
    paths[c] = inst.path_edges(inst.pairs[c].s, inst.pairs[c].t);
    space *= static_cast<double>(paths[c].size());
    if (space > static_cast<double>(kBruteCap))
      throw SizeCapError("brute universal multicut: search space exceeds cap");
  }
  BruteMcResult best;
  best.cost = std::numeric_limits<double>::infinity();
  McMapping current;
  current.cut_edges.assign(np, {});
  std::function<void(int)> rec = [&](int c) {
    if (c == np) {
      double v = expected_mc_cost(inst, current);
      if (v < best.cost - kTol) best = {current, v};
      return;
    }
    for (int e : paths[c]) {
      current.cut_edges[c] = {e};
      rec(c + 1);
    }
  };
  rec(0);
  return best;
}

// The oracle-model hardness gadget: a dummy element under a cheap set, plus
// a block W coverable per-element (singletons at M/sqrt(n)) or wholesale
// (one set at M). The two adversary branches hide which commitment wins; a
// mapping committed to the wrong branch pays a Theta(sqrt(n)) factor.
struct GapInstance {
  Instance instance;
  Distribution branch_single;  // scenarios: dummy, or one uniformly random W element
  Distribution branch_whole;   // scenarios: dummy, or all of W at once
  Mapping singleton_mapping;   // every W element to its own singleton
  Mapping whole_mapping;       // every W element to the W set
  double singleton_cost_formula = 0.0;  // cost of singleton_mapping on branch_single
  double whole_cost_formula = 0.0;      // cost of whole_mapping on branch_whole
};

inline GapInstance gap_instance(int n, double big_cost) {
  if (n < 2) throw ValidationError("gap instance: need n >= 2");
  if (big_cost < 4.0) throw ValidationError("gap instance: need M >= 4");
  const double root_m = std::sqrt(big_cost);
  const int dummy = n - 1;  // elements 0..n-2 form W

  GapInstance gi;
  gi.instance.n = n;
  for (int w = 0; w < n - 1; ++w) {
    ElemSet s(n);
    s.insert(w);
    gi.instance.sets.push_back(
        {"S" + std::to_string(w), big_cost / std::sqrt(static_cast<double>(n)), s});
  }
  ElemSet whole(n);
  for (int w = 0; w < n - 1; ++w) whole.insert(w);
  gi.instance.sets.push_back({"SW", big_cost, whole});
  ElemSet dset(n);
  dset.insert(dummy);
  gi.instance.sets.push_back({"Sd", 1.0, dset});
  gi.instance.validate();

  std::vector<Scenario> single{{1.0 - 1.0 / root_m, dset}};
  for (int w = 0; w < n - 1; ++w) {
    ElemSet s(n);
    s.insert(w);
    single.push_back({(1.0 / root_m) / (n - 1), s});
  }
  gi.branch_single = Distribution::scenarios(n, std::move(single));
  gi.branch_whole = Distribution::scenarios(
      n, {{1.0 - 1.0 / root_m, dset}, {1.0 / root_m, whole}});

  const int sw = gi.instance.set_index("SW");
  const int sd = gi.instance.set_index("Sd");
  gi.singleton_mapping.sets_of.assign(n, {});
  gi.whole_mapping.sets_of.assign(n, {});
  for (int w = 0; w < n - 1; ++w) {
    gi.singleton_mapping.sets_of[w] = {w};
    gi.whole_mapping.sets_of[w] = {sw};
  }
  gi.singleton_mapping.sets_of[dummy] = {sd};
  gi.whole_mapping.sets_of[dummy] = {sd};

  gi.singleton_cost_formula =
      (1.0 - 1.0 / root_m) + (1.0 / root_m) * (big_cost / std::sqrt(static_cast<double>(n)));
  gi.whole_cost_formula = (1.0 - 1.0 / root_m) + (1.0 / root_m) * big_cost;
  return gi;
}

struct RatioRow {
  std::string instance_label;
  std::string algorithm;
  bool failed = false;
  std::string error;
  double cost = 0.0;
  double lp_value = 0.0;
  double brute_opt = 0.0;
  double ratio_vs_lp = 0.0;
  double ratio_vs_opt = 0.0;
};

struct RatioReport {
  std::vector<RatioRow> rows;

  double max_ratio_vs_lp() const { return aggregate(&RatioRow::ratio_vs_lp, true); }
  double mean_ratio_vs_lp() const { return aggregate(&RatioRow::ratio_vs_lp, false); }
  double max_ratio_vs_opt() const { return aggregate(&RatioRow::ratio_vs_opt, true); }
  double mean_ratio_vs_opt() const { return aggregate(&RatioRow::ratio_vs_opt, false); }

  void write_csv(std::ostream& os) const {
    os << "instance,algorithm,status,cost,lp_value,brute_opt,ratio_vs_lp,ratio_vs_opt\n";
    char buf[256];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                    r.instance_label.c_str(), r.algorithm.c_str(),
                    r.failed ? "failed" : "ok", r.cost, r.lp_value, r.brute_opt,
                    r.ratio_vs_lp, r.ratio_vs_opt);
      os << buf;
    }
    std::snprintf(buf, sizeof(buf), "aggregate,max,,,,,%.12g,%.12g\n",
                  max_ratio_vs_lp(), max_ratio_vs_opt());
    os << buf;
    std::snprintf(buf, sizeof(buf), "aggregate,mean,,,,,%.12g,%.12g\n",
                  mean_ratio_vs_lp(), mean_ratio_vs_opt());
    os << buf;
  }

 private:
  double aggregate(double RatioRow::*field, bool take_max) const {
    double acc = 0.0;
    int count = 0;
    for (const auto& r : rows) {
      if (r.failed) continue;
      double v = r.*field;
      if (take_max)
        acc = std::max(acc, v);
      else
        acc += v;
      ++count;
    }
    if (!take_max && count > 0) acc /= count;
    return acc;
  }
};

// Runs the named cover algorithms over a suite of (instance, distribution)
// problems and certifies each output against the LP value and the exact
// universal optimum. Per-row failures are recorded, not thrown.
inline RatioReport ratio_report(
    const std::vector<std::pair<Instance, Distribution>>& problems,
    const std::vector<std::string>& algorithms, uint64_t seed) {
  RatioReport report;
  for (size_t i = 0; i < problems.size(); ++i) {
    const auto& [inst, dist] = problems[i];
    for (const auto& algo : algorithms) {
      RatioRow row;
      row.instance_label = "i" + std::to_string(i);
      row.algorithm = algo;
      try {
        FractionalCover frac = solve_config_lp(inst, dist);
        row.lp_value = frac.value;
        row.brute_opt = brute_universal_cover(inst, dist).cost;
        if (algo == "lp-round") {
          row.cost = round_randomized(inst, dist, frac, derive_seed(seed, "bench", i)).cost;
        } else if (algo == "greedy") {
          row.cost = greedy_multicover(inst, dist).cost;
        } else if (algo == "freq-round") {
          row.cost = expected_cover_cost(inst, round_frequency(inst, frac), dist);
        } else {
          throw ValidationError("unknown algorithm: " + algo);
        }
        row.ratio_vs_lp = row.lp_value > kTol ? row.cost / row.lp_value : 1.0;
        row.ratio_vs_opt = row.brute_opt > kTol ? row.cost / row.brute_opt : 1.0;
      } catch (const Error& e) {
        row.failed = true;
        row.error = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace ucover
