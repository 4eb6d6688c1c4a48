// Command-line front end: universal stochastic covering solvers over JSON
// files. Exit codes: 0 success, 1 usage error, 2 infeasible, 3 solver
// failure. All randomness flows from --seed through named streams, so a
// fixed command line is byte-reproducible.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ucover/io.hpp"
#include "ucover/ucover.hpp"
#include "ucover/verify.hpp"

using namespace ucover;

namespace {

struct Options {
  std::string problem;
  std::string algo;
  std::string instance_path;
  std::string dist_path;
  std::string mapping_path;
  std::string out_path;
  std::string emit_lp_path;
  std::string dump_lp_path;
  std::string out_dir;
  std::string csv_path;
  std::string json_path;
  std::string algos = "lp-round";
  uint64_t seed = 0;
  int samples = 0;
  double eps = 0.5;
  int gap_n = 4;
  double gap_m = 100.0;
  int count = 20;
};

void print_cost(double cost) { std::printf("cost %.12g\n", cost); }

void emit_json(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    io::write_file(out_path, text);
}

// ---- problem bundles -------------------------------------------------------

struct CoverProblem {
  Instance instance;
  Distribution dist = Distribution::independent({});
  ConnectionCosts conn;
  bool has_conn = false;
  FlInstance fl;        // original facility data for nmfl output ids
  GraphInstance graph;  // original graph for vertex/edge cover
  bool is_vertex_cover = false;
  bool is_edge_cover = false;
};

Distribution load_dist(const Options& opt, int universe) {
  if (opt.dist_path.empty())
    throw ValidationError("--dist is required for this problem");
  return distribution_from_json(io::read_json_file(opt.dist_path), universe);
}

CoverProblem load_cover_problem(const Options& opt) {
  CoverProblem p;
  if (opt.problem == "setcover" || opt.problem == "multicover") {
    p.instance = instance_from_json(io::read_json_file(opt.instance_path));
    p.dist = load_dist(opt, p.instance.n);
    return p;
  }
  if (opt.problem == "vertexcover") {
    Json j = io::read_json_file(opt.instance_path);
    p.graph = graph_from_json(j);
    p.instance = vertex_cover_as_instance(p.graph,
                                          vertex_costs_from_json(j, p.graph.nodes));
    p.dist = load_dist(opt, p.instance.n);  // universe: edge indices
    p.is_vertex_cover = true;
    return p;
  }
  if (opt.problem == "edgecover") {
    p.graph = graph_from_json(io::read_json_file(opt.instance_path)).simplified();
    p.instance = edge_cover_as_instance(p.graph);
    p.dist = load_dist(opt, p.graph.nodes);
    p.is_edge_cover = true;
    return p;
  }
  if (opt.problem == "nmfl") {
    p.fl = fl_from_json(io::read_json_file(opt.instance_path));
    const int nc = p.fl.num_clients();
    p.instance.n = nc;
    for (int f = 0; f < p.fl.num_facilities(); ++f) {
      p.instance.sets.push_back(
          {p.fl.facilities[f].id, p.fl.facilities[f].open_cost, ElemSet::full(nc)});
    }
    p.conn.d.assign(nc, std::vector<double>(p.fl.num_facilities(), 0.0));
    for (int c = 0; c < nc; ++c) {
      for (int f = 0; f < p.fl.num_facilities(); ++f) p.conn.d[c][f] = p.fl.d(c, f);
    }
    p.has_conn = true;
    p.dist = load_dist(opt, nc);
    return p;
  }
  throw ValidationError("not a covering problem: " + opt.problem);
}

FlInstance load_facility(const Options& opt) {
  FlInstance inst = fl_from_json(io::read_json_file(opt.instance_path));
  if (!inst.metric)
    throw ValidationError(
        "facility requires a metric instance; use --problem nmfl otherwise");
  if (!opt.dist_path.empty()) {
    Json j = io::read_json_file(opt.dist_path);
    if (j.at("type").get<std::string>() != "independent")
      throw ValidationError(
          "metric facility location supports the independent activation model "
          "only; rounding the scenario-model configuration LP is open");
    Distribution d = distribution_from_json(j, inst.num_clients());
    inst.client_probs = d.activation_probs();
  }
  inst.validate();
  return inst;
}

McTreeInstance load_multicut(const Options& opt) {
  Json j = io::read_json_file(opt.instance_path);
  McTreeInstance inst;
  inst.nodes = j.at("nodes").get<int>();
  for (const auto& je : j.at("edges"))
    inst.edges.push_back(
        {je.at("u").get<int>(), je.at("v").get<int>(), je.at("cost").get<double>()});
  for (const auto& jp : j.at("pairs"))
    inst.pairs.push_back(
        {jp.at("s").get<int>(), jp.at("t").get<int>(), jp.at("p").get<double>()});
  if (inst.num_edges() != inst.nodes - 1)
    throw ValidationError(
        "general-graph multicut is out of scope (needs a decomposition-tree "
        "embedding); provide a tree instance");
  inst.validate();
  if (!opt.dist_path.empty()) {
    Json jd = io::read_json_file(opt.dist_path);
    if (jd.at("type").get<std::string>() != "independent")
      throw ValidationError(
          "tree multicut supports the independent activation model only");
    Distribution d = distribution_from_json(jd, inst.num_pairs());
    for (int c = 0; c < inst.num_pairs(); ++c)
      inst.pairs[c].prob = d.activation_probs()[c];
  }
  return inst;
}

void check_algo(const Options& opt, const std::vector<std::string>& allowed) {
  for (const auto& a : allowed) {
    if (opt.algo == a) return;
  }
  std::string msg = "algorithm '" + opt.algo + "' is not valid for --problem " +
                    opt.problem + " (valid:";
  for (const auto& a : allowed) msg += " " + a;
  throw ValidationError(msg + ")");
}

// ---- subcommands -----------------------------------------------------------

int run_solve(const Options& opt) {
  if (opt.problem == "facility") {
    check_algo(opt, {"pd-round"});
    FlInstance inst = load_facility(opt);
    if (!opt.dump_lp_path.empty()) {
      std::ostringstream os;
      write_lp_text(build_lp_fl(inst), os);
      io::write_file(opt.dump_lp_path, os.str());
    }
    FlFractional frac = solve_lp_fl(inst);
    FlMapping phi = round_fl(inst, frac);
    emit_json(fl_mapping_to_json(inst, phi), opt.out_path);
    print_cost(expected_fl_cost(inst, phi));
    return 0;
  }
  if (opt.problem == "multicut-tree") {
    check_algo(opt, {"lp-round"});
    McTreeInstance inst = load_multicut(opt);
    if (!opt.dump_lp_path.empty()) {
      std::ostringstream os;
      write_lp_text(build_lp_mc_tree(inst), os);
      io::write_file(opt.dump_lp_path, os.str());
    }
    McFractional frac = solve_lp_mc_tree(inst);
    McMapping phi = round_mc_tree(inst, frac);
    emit_json(mc_mapping_to_json(inst, phi), opt.out_path);
    print_cost(expected_mc_cost(inst, phi));
    return 0;
  }

  CoverProblem p = load_cover_problem(opt);
  const ConnectionCosts* conn = p.has_conn ? &p.conn : nullptr;
  Mapping phi;
  double cost = 0.0;
  if (opt.problem == "setcover" || opt.problem == "nmfl") {
    check_algo(opt, opt.problem == "setcover"
                        ? std::vector<std::string>{"lp-round", "greedy"}
                        : std::vector<std::string>{"lp-round"});
  } else if (opt.problem == "multicover") {
    check_algo(opt, {"greedy"});
  } else if (opt.problem == "vertexcover") {
    check_algo(opt, {"freq-round"});
  } else if (opt.problem == "edgecover") {
    check_algo(opt, {"exact"});
  }

  if (opt.algo == "lp-round" || opt.algo == "freq-round") {
    ConfigLpOptions lpopt;
    lpopt.conn = conn;
    FractionalCover frac = solve_config_lp(p.instance, p.dist, lpopt);
    if (!opt.emit_lp_path.empty())
      emit_json(fractional_to_json(p.instance, frac), opt.emit_lp_path);
    if (opt.algo == "lp-round") {
      RoundResult rr = round_randomized(p.instance, p.dist, frac, opt.seed, conn);
      phi = std::move(rr.mapping);
      cost = rr.cost;
    } else {
      phi = round_frequency(p.instance, frac);
      cost = expected_cover_cost(p.instance, phi, p.dist, conn);
    }
  } else if (opt.algo == "greedy") {
    GreedyResult gr = greedy_multicover(p.instance, p.dist);
    phi = std::move(gr.mapping);
    cost = gr.cost;
  } else if (opt.algo == "exact") {
    EdgeCoverResult ec = universal_edge_cover(p.graph, p.dist);
    phi.sets_of.assign(p.graph.nodes, {});
    for (int v = 0; v < p.graph.nodes; ++v) phi.sets_of[v] = {ec.edge_of[v]};
    cost = ec.cost;
  }
  emit_json(mapping_to_json(p.instance, phi), opt.out_path);
  print_cost(cost);
  return 0;
}

int run_eval(const Options& opt) {
  if (opt.problem == "facility") {
    FlInstance inst = load_facility(opt);
    FlMapping phi = fl_mapping_from_json(inst, io::read_json_file(opt.mapping_path));
    print_cost(expected_fl_cost(inst, phi));
    return 0;
  }
  if (opt.problem == "multicut-tree") {
    McTreeInstance inst = load_multicut(opt);
    McMapping phi = mc_mapping_from_json(inst, io::read_json_file(opt.mapping_path));
    print_cost(expected_mc_cost(inst, phi));
    return 0;
  }
  CoverProblem p = load_cover_problem(opt);
  Mapping phi = mapping_from_json(p.instance, io::read_json_file(opt.mapping_path));
  print_cost(expected_cover_cost(p.instance, phi, p.dist,
                                 p.has_conn ? &p.conn : nullptr));
  return 0;
}

int run_brute(const Options& opt) {
  if (opt.problem == "facility") {
    FlInstance inst = load_facility(opt);
    auto res = brute_universal_fl(inst);
    emit_json(fl_mapping_to_json(inst, res.mapping), opt.out_path);
    print_cost(res.cost);
    return 0;
  }
  if (opt.problem == "multicut-tree") {
    McTreeInstance inst = load_multicut(opt);
    auto res = brute_universal_mc(inst);
    emit_json(mc_mapping_to_json(inst, res.mapping), opt.out_path);
    print_cost(res.cost);
    return 0;
  }
  CoverProblem p = load_cover_problem(opt);
  auto res = brute_universal_cover(p.instance, p.dist, p.has_conn ? &p.conn : nullptr);
  emit_json(mapping_to_json(p.instance, res.mapping), opt.out_path);
  print_cost(res.cost);
  return 0;
}

int run_saa(const Options& opt) {
  if (opt.problem != "setcover" && opt.problem != "multicover")
    throw ValidationError("saa supports --problem setcover or multicover");
  CoverProblem p = load_cover_problem(opt);
  InnerSolver inner;
  if (opt.algo == "lp-round")
    inner = InnerSolver::lp_round;
  else if (opt.algo == "greedy")
    inner = InnerSolver::greedy;
  else
    throw ValidationError("saa inner solver must be lp-round or greedy");
  if (opt.problem == "multicover" && inner != InnerSolver::greedy)
    throw ValidationError("multicover requires --algo greedy");

  int samples = opt.samples;
  if (samples <= 0) {
    bool capped = false;
    double max_cost = p.instance.max_cost();
    double min_cost = max_cost;
    for (const auto& s : p.instance.sets)
      if (s.cost > 0) min_cost = std::min(min_cost, s.cost);
    double ratio = min_cost > 0 ? max_cost / min_cost : 1.0;
    samples = saa_sample_bound(p.instance.n, p.instance.num_sets(), ratio,
                               opt.eps, &capped);
    if (capped)
      std::fprintf(stderr,
                   "warning: sample bound exceeds 1000000; capped (eps=%g)\n",
                   opt.eps);
    std::fprintf(stderr, "samples %d (from bound, eps=%g)\n", samples, opt.eps);
  }
  // The given distribution is treated as a black box reachable only through
  // draws.
  Distribution exact = p.dist;
  Distribution sampler = Distribution::sampler(
      p.instance.n, [exact](uint64_t s) { return sample_request(exact, s); });
  SaaResult res = saa_solve(p.instance, sampler, samples, inner, opt.seed);
  emit_json(mapping_to_json(p.instance, res.mapping), opt.out_path);
  print_cost(res.empirical_cost);
  return 0;
}

int run_lb_gen(const Options& opt) {
  GapInstance gi = gap_instance(opt.gap_n, opt.gap_m);
  std::string dir = opt.out_dir.empty() ? "." : opt.out_dir;
  emit_json(instance_to_json(gi.instance), dir + "/instance.json");
  emit_json(distribution_to_json(gi.branch_single), dir + "/branch_single.json");
  emit_json(distribution_to_json(gi.branch_whole), dir + "/branch_whole.json");
  emit_json(mapping_to_json(gi.instance, gi.singleton_mapping),
            dir + "/mapping_singleton.json");
  emit_json(mapping_to_json(gi.instance, gi.whole_mapping), dir + "/mapping_whole.json");
  std::printf("singleton_cost %.12g\n", gi.singleton_cost_formula);
  std::printf("whole_cost %.12g\n", gi.whole_cost_formula);
  return 0;
}

int run_bench(const Options& opt) {
  std::vector<std::string> algos;
  std::stringstream ss(opt.algos);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) algos.push_back(item);
  }
  RatioReport report;
  std::mt19937_64 gen(derive_seed(opt.seed, "bench-gen"));

  if (opt.problem == "setcover" || opt.problem == "multicover") {
    std::vector<std::pair<Instance, Distribution>> problems;
    for (int i = 0; i < opt.count; ++i) {
      Instance inst =
          gen_cover_instance(gen, 6, 5, opt.problem == "multicover" ? 2 : 1);
      Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, inst.n, 5)
                                               : gen_independent_dist(gen, inst.n);
      problems.emplace_back(std::move(inst), std::move(dist));
    }
    report = ratio_report(problems, algos, opt.seed);
  } else if (opt.problem == "vertexcover") {
    std::vector<std::pair<Instance, Distribution>> problems;
    for (int i = 0; i < opt.count; ++i) {
      GraphInstance g = gen_graph(gen, 6, 8);
      std::vector<double> costs(g.nodes);
      for (double& c : costs) c = 0.2 + uniform01(gen);
      Instance inst = vertex_cover_as_instance(g, costs);
      Distribution dist = gen_scenario_dist(gen, inst.n, 5);
      problems.emplace_back(std::move(inst), std::move(dist));
    }
    report = ratio_report(problems, {"freq-round"}, opt.seed);
  } else if (opt.problem == "edgecover") {
    for (int i = 0; i < opt.count; ++i) {
      GraphInstance g = gen_graph(gen, 6, 9);
      Distribution dist = gen_independent_dist(gen, g.nodes);
      RatioRow row;
      row.instance_label = "i" + std::to_string(i);
      row.algorithm = "exact";
      try {
        auto res = universal_edge_cover(g, dist);
        auto brute = brute_universal_cover(edge_cover_as_instance(g), dist);
        row.cost = res.cost;
        row.lp_value = res.cost;
        row.brute_opt = brute.cost;
        row.ratio_vs_lp = 1.0;
        row.ratio_vs_opt = brute.cost > kTol ? res.cost / brute.cost : 1.0;
      } catch (const Error& e) {
        row.failed = true;
        row.error = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  } else if (opt.problem == "facility") {
    for (int i = 0; i < opt.count; ++i) {
      FlInstance inst = gen_metric_fl(gen, 4, 4);
      RatioRow row;
      row.instance_label = "i" + std::to_string(i);
      row.algorithm = "pd-round";
      try {
        FlFractional frac = solve_lp_fl(inst);
        FlMapping phi = round_fl(inst, frac);
        row.cost = expected_fl_cost(inst, phi);
        row.lp_value = frac.value;
        row.brute_opt = brute_universal_fl(inst).cost;
        row.ratio_vs_lp = frac.value > kTol ? row.cost / frac.value : 1.0;
        row.ratio_vs_opt = row.brute_opt > kTol ? row.cost / row.brute_opt : 1.0;
      } catch (const Error& e) {
        row.failed = true;
        row.error = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  } else if (opt.problem == "multicut-tree") {
    for (int i = 0; i < opt.count; ++i) {
      McTreeInstance inst = gen_tree_multicut(gen, 7, 4);
      RatioRow row;
      row.instance_label = "i" + std::to_string(i);
      row.algorithm = "lp-round";
      try {
        McFractional frac = solve_lp_mc_tree(inst);
        McMapping phi = round_mc_tree(inst, frac);
        row.cost = expected_mc_cost(inst, phi);
        row.lp_value = frac.value;
        row.brute_opt = brute_universal_mc(inst).cost;
        row.ratio_vs_lp = frac.value > kTol ? row.cost / frac.value : 1.0;
        row.ratio_vs_opt = row.brute_opt > kTol ? row.cost / row.brute_opt : 1.0;
      } catch (const Error& e) {
        row.failed = true;
        row.error = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  } else {
    throw ValidationError("bench does not support --problem " + opt.problem);
  }

  std::ostringstream os;
  report.write_csv(os);
  if (opt.csv_path.empty())
    std::fputs(os.str().c_str(), stdout);
  else
    io::write_file(opt.csv_path, os.str());
  if (!opt.json_path.empty()) {
    Json j;
    j["rows"] = Json::array();
    for (const auto& r : report.rows) {
      Json jr;
      jr["instance"] = r.instance_label;
      jr["algorithm"] = r.algorithm;
      jr["status"] = r.failed ? "failed" : "ok";
      if (r.failed) {
        jr["error"] = r.error;
      } else {
        jr["cost"] = r.cost;
        jr["lp_value"] = r.lp_value;
        jr["brute_opt"] = r.brute_opt;
        jr["ratio_vs_lp"] = r.ratio_vs_lp;
        jr["ratio_vs_opt"] = r.ratio_vs_opt;
      }
      j["rows"].push_back(std::move(jr));
    }
    j["aggregate"] = {{"max_ratio_vs_lp", report.max_ratio_vs_lp()},
                      {"mean_ratio_vs_lp", report.mean_ratio_vs_lp()},
                      {"max_ratio_vs_opt", report.max_ratio_vs_opt()},
                      {"mean_ratio_vs_opt", report.mean_ratio_vs_opt()}};
    emit_json(j, opt.json_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ucover - universal stochastic covering solvers\n"
      "Problem/algorithm matrix: setcover: lp-round, greedy | multicover: "
      "greedy | vertexcover: freq-round | edgecover: exact | nmfl: lp-round | "
      "facility: pd-round | multicut-tree: lp-round"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_algo) {
    sub->add_option("--problem", opt.problem, "problem kind")->required();
    sub->add_option("--instance", opt.instance_path, "instance JSON file")->required();
    sub->add_option("--dist", opt.dist_path, "distribution JSON file");
    sub->add_option("--seed", opt.seed, "root random seed");
    sub->add_option("--out", opt.out_path, "output mapping path (default stdout)");
    if (needs_algo) {
      sub->add_option("--algo", opt.algo, "algorithm")->required();
      sub->add_option("--emit-lp", opt.emit_lp_path, "dump the fractional cover JSON");
      sub->add_option("--dump-lp", opt.dump_lp_path,
                      "dump the solved LP in CPLEX-LP text form (facility, "
                      "multicut-tree)");
    }
  };

  CLI::App* solve = app.add_subcommand("solve", "solve an instance a priori");
  add_common(solve, true);

  CLI::App* eval = app.add_subcommand("eval", "expected cost of a mapping");
  add_common(eval, false);
  eval->add_option("--mapping", opt.mapping_path, "mapping JSON file")->required();

  CLI::App* brute = app.add_subcommand("brute", "optimal universal mapping");
  add_common(brute, false);

  CLI::App* saa = app.add_subcommand("saa", "sample-average approximation");
  add_common(saa, true);
  saa->add_option("--samples", opt.samples,
                  "number of draws (omit to use the Chernoff bound)");
  saa->add_option("--eps", opt.eps, "accuracy parameter for the sample bound");
  saa->get_option("--seed")->required();

  CLI::App* lbgen = app.add_subcommand("lb-gen", "emit the oracle-model gap gadget");
  lbgen->add_option("--n", opt.gap_n, "universe size")->required();
  lbgen->add_option("--M", opt.gap_m, "big set cost")->required();
  lbgen->add_option("--out-dir", opt.out_dir, "output directory")->required();

  CLI::App* bench = app.add_subcommand("bench", "ratio report over random instances");
  bench->add_option("--problem", opt.problem, "problem kind")->required();
  bench->add_option("--algos", opt.algos, "comma-separated algorithm list");
  bench->add_option("--count", opt.count, "number of instances");
  bench->add_option("--seed", opt.seed, "root random seed");
  bench->add_option("--out", opt.csv_path, "CSV output path (default stdout)");
  bench->add_option("--json", opt.json_path, "JSON twin output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(opt);
    if (eval->parsed()) return run_eval(opt);
    if (brute->parsed()) return run_brute(opt);
    if (saa->parsed()) return run_saa(opt);
    if (lbgen->parsed()) return run_lb_gen(opt);
    if (bench->parsed()) return run_bench(opt);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 1;
}
