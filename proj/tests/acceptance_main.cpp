// Acceptance suite: runs every guarantee the library promises at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ucover/io.hpp"
#include "ucover/ucover.hpp"

using namespace ucover;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail,
            double seconds) {
  std::printf("%s  %2d  %-28s  %s  [%.1fs]\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(id, name, ok, detail, secs);
}

char fmt_buf[256];
std::string fmt(const char* f, double a, double b = 0.0) {
  std::snprintf(fmt_buf, sizeof(fmt_buf), f, a, b);
  return fmt_buf;
}

// ---- criterion bodies ------------------------------------------------------

bool relaxation_soundness(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-relax"));
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    Instance inst = gen_cover_instance(gen, 6, 5);
    Distribution dist = gen_scenario_dist(gen, inst.n, 5);
    double lp = solve_config_lp(inst, dist).value;
    double opt = brute_universal_cover(inst, dist).cost;
    if (lp > opt + 1e-6) {
      detail = fmt("violated: lp %.9g > opt %.9g", lp, opt);
      return false;
    }
    worst = std::max(worst, lp - opt);
  }
  detail = fmt("200/200 instances, max lp-opt gap %.3g", worst);
  return true;
}

bool column_generation_exactness(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-colgen"));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Instance inst = gen_cover_instance(gen, 5, 5);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, inst.n, 5)
                                             : gen_independent_dist(gen, inst.n);
    double cut = solve_config_lp(inst, dist).value;

    // full enumeration of every (S, B) column
    LinearProgram lp;
    struct Col {
      int set;
      ElemSet subset;
    };
    std::vector<Col> cols;
    for (int s = 0; s < inst.num_sets(); ++s) {
      auto ids = inst.sets[s].elements.to_vector();
      for (uint64_t mask = 1; mask < (1ULL << ids.size()); ++mask) {
        ElemSet subset(inst.n);
        for (size_t k = 0; k < ids.size(); ++k) {
          if (mask & (1ULL << k)) subset.insert(ids[k]);
        }
        cols.push_back({s, subset});
        lp.add_var(inst.sets[s].cost * hit_prob(dist, subset));
      }
    }
    for (int u = 0; u < inst.n; ++u) {
      std::vector<double> row(lp.num_vars(), 0.0);
      for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].subset.contains(u)) row[j] = 1.0;
      }
      lp.add_row(std::move(row), Rel::ge, 1.0);
    }
    double full = solve_lp(lp).value;
    double rel = std::abs(cut - full) / std::max(1.0, std::abs(full));
    worst = std::max(worst, rel);
    if (rel > 1e-6) {
      detail = fmt("mismatch: cutting-plane %.9g vs full %.9g", cut, full);
      return false;
    }
  }
  detail = fmt("50/50 instances, max relative gap %.3g", worst);
  return true;
}

bool randomized_rounding_bound(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-round"));
  long total_retries = 0;
  int runs = 0;
  for (int i = 0; i < 25; ++i) {
    Instance inst = gen_cover_instance(gen, 6, 5);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, inst.n, 5)
                                             : gen_independent_dist(gen, inst.n);
    FractionalCover frac = solve_config_lp(inst, dist);
    const double budget = 4.0 * std::log(double(inst.n)) * frac.value + 1e-9;
    for (int seed = 0; seed < 20; ++seed) {
      RoundResult rr = round_randomized(inst, dist, frac, derive_seed(2, "acc-rr", seed));
      rr.mapping.validate(inst);
      if (rr.cost > budget) {
        detail = fmt("cost %.9g above budget %.9g", rr.cost, budget);
        return false;
      }
      total_retries += rr.attempts - 1;
      ++runs;
    }
  }
  double mean_retries = double(total_retries) / runs;
  detail = fmt("500 runs feasible within budget, mean retries %.3f", mean_retries);
  return mean_retries <= 2.0;
}

bool greedy_hn_bound(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-greedy"));
  double worst_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    Instance inst = gen_cover_instance(gen, 6, 5, 2);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, inst.n, 5)
                                             : gen_independent_dist(gen, inst.n);
    GreedyResult res = greedy_multicover(inst, dist);
    res.mapping.validate(inst);
    const double hn = harmonic(inst.n);
    double lp = solve_config_lp(inst, dist, {CoverMode::multicover, nullptr}).value;
    if (res.cost > hn * lp + 1e-6) {
      detail = fmt("cost %.9g above Hn x LP %.9g", res.cost, hn * lp);
      return false;
    }
    if (lp > kTol) worst_ratio = std::max(worst_ratio, res.cost / lp);
    for (int s = 0; s < inst.num_sets(); ++s) {
      auto ids = inst.sets[s].elements.to_vector();
      for (uint64_t mask = 1; mask < (1ULL << ids.size()); ++mask) {
        ElemSet b(inst.n);
        for (size_t k = 0; k < ids.size(); ++k) {
          if (mask & (1ULL << k)) b.insert(ids[k]);
        }
        double lhs = -res.beta[s];
        b.for_each([&](int u) { lhs += res.alpha[u]; });
        if (lhs > hn * inst.sets[s].cost * hit_prob(dist, b) + 1e-9) {
          detail = "dual certificate infeasible on a (S,B) pair";
          return false;
        }
      }
    }
  }
  detail = fmt("200/200 instances, max cost/LP %.3f (vs Hn)", worst_ratio);
  return true;
}

bool vertex_cover_bound(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-vc"));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    GraphInstance g = gen_graph(gen, 6, 8);
    std::vector<double> costs(g.nodes);
    for (double& c : costs) c = 0.2 + uniform01(gen);
    Instance inst = vertex_cover_as_instance(g, costs);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, inst.n, 5)
                                             : gen_independent_dist(gen, inst.n);
    FractionalCover frac = solve_config_lp(inst, dist);
    Mapping phi = round_frequency(inst, frac);
    double cost = expected_cover_cost(inst, phi, dist);
    if (cost > 2.0 * frac.value + 1e-6) {
      detail = fmt("cost %.9g above 2 x LP %.9g", cost, 2.0 * frac.value);
      return false;
    }
    if (frac.value > kTol) worst = std::max(worst, cost / frac.value);
  }
  detail = fmt("100/100 graphs, max cost/LP %.3f (vs 2)", worst);
  return true;
}

bool edge_cover_exactness(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-ec"));
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    GraphInstance g = gen_graph(gen, 6, 9);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, g.nodes, 5)
                                             : gen_independent_dist(gen, g.nodes);
    EdgeCoverResult res = universal_edge_cover(g, dist);
    double opt = brute_universal_cover(edge_cover_as_instance(g), dist).cost;
    double gap = std::abs(res.cost - opt);
    worst = std::max(worst, gap);
    if (gap > 1e-9) {
      detail = fmt("exactness gap %.3g (cost %.12g)", gap, res.cost);
      return false;
    }
  }
  detail = fmt("50/50 graphs exact, max |cost-opt| %.3g", worst);
  return true;
}

bool facility_constant(std::string& detail) {
  // 4e/(e-1) is about 6.3279; the stated 6.3058 is tighter, so passing it
  // certifies both.
  const double cap = 6.3058;
  std::mt19937_64 gen(derive_seed(1, "acc-fl"));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    FlInstance inst = gen_metric_fl(gen, 4, 4);
    FlFractional frac = solve_lp_fl(inst);
    FlMapping phi = round_fl(inst, frac);
    phi.validate(inst);
    double cost = expected_fl_cost(inst, phi);
    if (cost > 4.0 * frac.value + 1e-7) {
      detail = fmt("rounding cost %.9g above 4 x LP %.9g", cost, 4.0 * frac.value);
      return false;
    }
    double opt = brute_universal_fl(inst).cost;
    if (cost > cap * opt + 1e-7) {
      detail = fmt("pipeline cost %.9g above cap x opt %.9g", cost, cap * opt);
      return false;
    }
    if (opt > kTol) worst = std::max(worst, cost / opt);
  }
  detail = fmt("100/100 instances, max cost/opt %.3f (vs %.4f)", worst, cap);
  return true;
}

bool multicut_constant(std::string& detail) {
  // 3e/(e-1) is about 4.7459; the stated 4.7293 is tighter, so passing it
  // certifies both.
  const double cap = 4.7293;
  std::mt19937_64 gen(derive_seed(1, "acc-mc"));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    McTreeInstance inst = gen_tree_multicut(gen, 7, 4);
    McFractional frac = solve_lp_mc_tree(inst);
    McMapping phi = round_mc_tree(inst, frac);
    phi.validate(inst);
    double cost = expected_mc_cost(inst, phi);
    if (cost > 3.0 * frac.value + 1e-7) {
      detail = fmt("rounding cost %.9g above 3 x LP %.9g", cost, 3.0 * frac.value);
      return false;
    }
    double opt = brute_universal_mc(inst).cost;
    if (cost > cap * opt + 1e-7) {
      detail = fmt("pipeline cost %.9g above cap x opt %.9g", cost, cap * opt);
      return false;
    }
    if (opt > kTol) worst = std::max(worst, cost / opt);
  }
  detail = fmt("100/100 trees, max cost/opt %.3f (vs %.4f)", worst, cap);
  return true;
}

bool sfm_equivalence(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-sfm"));
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    int n = 2 + uniform_below(gen, 11);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, n, 4)
                                             : gen_independent_dist(gen, n);
    double scale = 0.5 + 3.0 * uniform01(gen);
    std::vector<double> w(n);
    for (double& x : w) x = 1.2 * uniform01(gen) - 0.6;
    SetFunction f{ElemSet::full(n), [&dist, scale, &w](const ElemSet& b) {
                    double v = scale * hit_prob(dist, b);
                    b.for_each([&](int u) { v += w[u]; });
                    return v;
                  }};
    double gap = std::abs(minimize(f).value - minimize_brute(f).value);
    worst = std::max(worst, gap);
    if (gap > 1e-7) {
      detail = fmt("minimize gap %.3g", gap);
      return false;
    }
    // nonnegative variant for the ratio objective
    SetFunction fr{ElemSet::full(n), [&dist, scale](const ElemSet& b) {
                     return scale * hit_prob(dist, b);
                   }};
    double rgap = std::abs(minimize_ratio(fr).ratio - minimize_ratio_brute(fr).ratio);
    worst = std::max(worst, rgap);
    if (rgap > 1e-7) {
      detail = fmt("ratio gap %.3g", rgap);
      return false;
    }
  }
  detail = fmt("500/500 functions, max value gap %.3g", worst);
  return true;
}

bool saa_chernoff(std::string& detail) {
  // all-subset empirical accuracy on n <= 10 fixtures
  for (int n : {6, 10}) {
    std::vector<double> probs(n);
    std::mt19937_64 pg(derive_seed(3, "acc-saa-p", n));
    for (double& p : probs) p = 0.05 + 0.9 * uniform01(pg);
    Distribution exact = Distribution::independent(probs);
    const int m = 5;
    const int samples = saa_sample_bound(n, m, 1.0, 0.5);
    int good = 0;
    for (int rerun = 0; rerun < 100; ++rerun) {
      std::vector<ElemSet> draws;
      draws.reserve(samples);
      for (int i = 0; i < samples; ++i)
        draws.push_back(sample_request(exact, derive_seed(rerun, "acc-saa", i)));
      Distribution emp = empirical(n, draws);
      bool ok = true;
      for (uint64_t mask = 1; mask < (1ULL << n) && ok; ++mask) {
        ElemSet b(n);
        for (int u = 0; u < n; ++u) {
          if (mask & (1ULL << u)) b.insert(u);
        }
        double g = hit_prob(exact, b), ghat = hit_prob(emp, b);
        if (std::abs(ghat - g) > 0.5 * std::max(g, 1.0 / n)) ok = false;
      }
      if (ok) ++good;
    }
    if (good < 99) {
      detail = fmt("n=%.0f: only %.0f/100 reruns inside the envelope", n, good);
      return false;
    }
  }
  // saa_solve with the lp-round inner solver always returns feasible mappings
  std::mt19937_64 gen(derive_seed(1, "acc-saa-solve"));
  for (int i = 0; i < 30; ++i) {
    Instance inst = gen_cover_instance(gen, 5, 4);
    Distribution base = gen_independent_dist(gen, inst.n);
    Distribution sampler = Distribution::sampler(
        inst.n, [base](uint64_t s) { return sample_request(base, s); });
    SaaResult res = saa_solve(inst, sampler, 120, InnerSolver::lp_round,
                              derive_seed(4, "acc-saa-seed", i));
    res.mapping.validate(inst);  // throws on any uncovered element
  }
  detail = "envelope held in >= 99/100 reruns (n=6 and n=10); 30/30 solves feasible";
  return true;
}

bool gap_generator(std::string& detail) {
  GapInstance gi = gap_instance(4, 100.0);
  if (std::abs(gi.singleton_cost_formula - 5.9) > 1e-12 ||
      std::abs(gi.whole_cost_formula - 10.9) > 1e-12) {
    detail = "closed forms differ from 5.9 / 10.9";
    return false;
  }
  double ev_single =
      expected_cover_cost(gi.instance, gi.singleton_mapping, gi.branch_single);
  double ev_whole =
      expected_cover_cost(gi.instance, gi.whole_mapping, gi.branch_whole);
  if (std::abs(ev_single - gi.singleton_cost_formula) > 1e-9 ||
      std::abs(ev_whole - gi.whole_cost_formula) > 1e-9) {
    detail = "evaluator disagrees with the closed forms";
    return false;
  }
  double last = 0.0;
  for (int n : {4, 16, 64}) {
    GapInstance g = gap_instance(n, 100.0);
    double wrong = expected_cover_cost(g.instance, g.singleton_mapping, g.branch_whole);
    double right = expected_cover_cost(g.instance, g.whole_mapping, g.branch_whole);
    double ratio = wrong / right;
    if (ratio <= last) {
      detail = fmt("gap ratio not increasing at n=%.0f (ratio %.3f)", n, ratio);
      return false;
    }
    last = ratio;
  }
  detail = fmt("closed forms exact; cross-branch ratio grows to %.2f at n=64", last);
  return true;
}

bool hit_prob_properties(std::string& detail) {
  std::mt19937_64 gen(derive_seed(1, "acc-props"));
  for (int i = 0; i < 500; ++i) {
    int n = 2 + uniform_below(gen, 11);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, n, 5)
                                             : gen_independent_dist(gen, n);
    ElemSet a(n), b(n);
    for (int u = 0; u < n; ++u) {
      if (uniform01(gen) < 0.5) a.insert(u);
      if (uniform01(gen) < 0.5) b.insert(u);
    }
    double ga = hit_prob(dist, a), gb = hit_prob(dist, b);
    double gu = hit_prob(dist, a.united(b)), gi = hit_prob(dist, a.intersected(b));
    if (ga + gb < gu + gi - 1e-12) {
      detail = "submodularity violated";
      return false;
    }
    if (ga > gu + 1e-12 || gb > gu + 1e-12) {
      detail = "monotonicity violated";
      return false;
    }
    if (gu > ga + gb + 1e-12) {
      detail = "subadditivity violated";
      return false;
    }
  }
  detail = "500/500 random triples within 1e-12";
  return true;
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args, const fs::path& dir) {
  fs::path out_file = dir / "stdout.txt";
  std::string cmd = std::string(UCOVER_CLI_PATH) + " " + args + " > " +
                    out_file.string() + " 2> " + (dir / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WEXITSTATUS(status);
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool cli_determinism(std::string& detail) {
  fs::path dir = fs::temp_directory_path() / "ucover_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);

  std::ofstream(dir / "i.json") << R"({"n": 3, "sets": [
    {"id": "S1", "cost": 1.0, "elements": [0, 1]},
    {"id": "S2", "cost": 1.2, "elements": [1, 2]},
    {"id": "S3", "cost": 2.0, "elements": [0, 1, 2]},
    {"id": "S4", "cost": 0.5, "elements": [2]}]})";
  std::ofstream(dir / "im.json") << R"({"n": 2, "requirements": [2, 1], "sets": [
    {"id": "S1", "cost": 1.0, "elements": [0, 1]},
    {"id": "S2", "cost": 1.0, "elements": [0]},
    {"id": "S3", "cost": 3.0, "elements": [1]}]})";
  std::ofstream(dir / "d.json") << R"({"type": "scenario", "scenarios": [
    {"prob": 0.4, "elements": [0]}, {"prob": 0.3, "elements": [1, 2]},
    {"prob": 0.2, "elements": [2]}, {"prob": 0.1, "elements": []}]})";
  std::ofstream(dir / "dm.json") << R"({"type": "independent", "probs": [0.7, 0.6]})";
  std::ofstream(dir / "g.json") << R"({"nodes": 4, "edges": [
    {"u":0,"v":1,"cost":0.8},{"u":1,"v":2,"cost":1.1},{"u":2,"v":3,"cost":0.9}],
    "vertex_costs": [1.0, 0.7, 0.9, 1.1]})";
  std::ofstream(dir / "de.json") << R"({"type": "independent", "probs": [0.5,0.2,0.9]})";
  std::ofstream(dir / "dg.json")
      << R"({"type": "independent", "probs": [0.3,0.5,0.2,0.9]})";
  std::ofstream(dir / "fl.json") << R"({"clients": [{"p": 0.6}, {"p": 0.3}],
    "facilities": [{"id": "f0", "open_cost": 0.8}, {"id": "f1", "open_cost": 0.4}],
    "dist": [[0.1, 0.7], [0.8, 0.2]], "metric": true})";
  std::ofstream(dir / "mc.json") << R"({"nodes": 4, "edges": [
    {"u":0,"v":1,"cost":1.0},{"u":1,"v":2,"cost":0.4},{"u":1,"v":3,"cost":0.7}],
    "pairs": [{"s":0,"t":2,"p":0.5},{"s":2,"t":3,"p":0.8}]})";

  auto path = [&](const char* f) { return (dir / f).string(); };
  struct Cmd {
    std::string args;
    std::string artifact;
  };
  std::vector<Cmd> commands = {
      {"solve --problem setcover --algo lp-round --instance " + path("i.json") +
           " --dist " + path("d.json") + " --seed 11 --out " + path("m1.json"),
       "m1.json"},
      {"solve --problem setcover --algo greedy --instance " + path("i.json") +
           " --dist " + path("d.json") + " --seed 11 --out " + path("m2.json"),
       "m2.json"},
      {"solve --problem multicover --algo greedy --instance " + path("im.json") +
           " --dist " + path("dm.json") + " --seed 4 --out " + path("m3.json"),
       "m3.json"},
      {"solve --problem vertexcover --algo freq-round --instance " + path("g.json") +
           " --dist " + path("de.json") + " --seed 3 --out " + path("m4.json"),
       "m4.json"},
      {"solve --problem edgecover --algo exact --instance " + path("g.json") +
           " --dist " + path("dg.json") + " --seed 3 --out " + path("m5.json"),
       "m5.json"},
      {"solve --problem facility --algo pd-round --instance " + path("fl.json") +
           " --seed 9 --out " + path("m6.json"),
       "m6.json"},
      {"solve --problem multicut-tree --algo lp-round --instance " + path("mc.json") +
           " --seed 2 --out " + path("m7.json"),
       "m7.json"},
      {"saa --problem setcover --algo lp-round --instance " + path("i.json") +
           " --dist " + path("d.json") + " --samples 80 --seed 5 --out " +
           path("m8.json"),
       "m8.json"},
      {"brute --problem setcover --instance " + path("i.json") + " --dist " +
           path("d.json") + " --out " + path("m9.json"),
       "m9.json"},
      {"bench --problem setcover --algos lp-round,greedy --count 4 --seed 6 --out " +
           path("r.csv"),
       "r.csv"},
      {"lb-gen --n 4 --M 100 --out-dir " + dir.string(), "instance.json"},
  };
  for (size_t i = 0; i < commands.size(); ++i) {
    CliRun first = cli(commands[i].args, dir);
    if (first.code != 0) {
      detail = "command " + std::to_string(i) + " exited " + std::to_string(first.code);
      return false;
    }
    std::string snapshot = slurp(dir / commands[i].artifact);
    CliRun second = cli(commands[i].args, dir);
    if (second.code != 0 || first.out != second.out ||
        snapshot != slurp(dir / commands[i].artifact)) {
      detail = "command " + std::to_string(i) + " is not byte-deterministic";
      return false;
    }
  }
  // solve -> eval round trip on the first mapping
  CliRun ev = cli("eval --problem setcover --instance " + path("i.json") + " --dist " +
                      path("d.json") + " --mapping " + path("m1.json"),
                  dir);
  if (ev.code != 0) {
    detail = "eval round trip failed";
    return false;
  }
  fs::remove_all(dir);
  detail = std::to_string(commands.size()) + " invocations byte-identical across reruns";
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n----------------\n");
  criterion(1, "relaxation-soundness", relaxation_soundness);
  criterion(2, "column-generation-exactness", column_generation_exactness);
  criterion(3, "randomized-rounding-4ln-n", randomized_rounding_bound);
  criterion(4, "greedy-harmonic-bound", greedy_hn_bound);
  criterion(5, "vertex-cover-2x", vertex_cover_bound);
  criterion(6, "edge-cover-exactness", edge_cover_exactness);
  criterion(7, "facility-4e-over-e-1", facility_constant);
  criterion(8, "multicut-3e-over-e-1", multicut_constant);
  criterion(9, "sfm-oracle-equivalence", sfm_equivalence);
  criterion(10, "saa-chernoff-envelope", saa_chernoff);
  criterion(11, "gap-generator-closed-forms", gap_generator);
  criterion(12, "hit-prob-property-suite", hit_prob_properties);
  criterion(13, "cli-determinism", cli_determinism);
  std::printf("----------------\n%s (%d failure%s)\n",
              g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT", g_failures,
              g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}
