#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "support.hpp"
#include "ucover/ucover.hpp"

using namespace ucover;
using Catch::Approx;

namespace {

// Complete optimality certificate: primal feasibility, dual feasibility, and
// matching objective values. Only valid for programs without upper bounds.
void check_certificate(const LinearProgram& lp, const LpSolution& sol) {
  const int n = lp.num_vars();
  for (int j = 0; j < n; ++j) CHECK(sol.x[j] >= -1e-7);
  double dual_obj = 0.0;
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * sol.x[j];
    if (row.rel == Rel::le) CHECK(lhs <= row.rhs + 1e-7);
    if (row.rel == Rel::ge) CHECK(lhs >= row.rhs - 1e-7);
    if (row.rel == Rel::eq) CHECK(lhs == Approx(row.rhs).margin(1e-7));
    // dual sign conventions
    double y = sol.duals[i];
    if (lp.sense == Sense::minimize) {
      if (row.rel == Rel::le) CHECK(y <= 1e-7);
      if (row.rel == Rel::ge) CHECK(y >= -1e-7);
    } else {
      if (row.rel == Rel::le) CHECK(y >= -1e-7);
      if (row.rel == Rel::ge) CHECK(y <= 1e-7);
    }
    // complementary slackness on rows
    CHECK(std::abs(y * (lhs - row.rhs)) <= 1e-6 * std::max(1.0, std::abs(row.rhs)));
    dual_obj += y * row.rhs;
  }
  // reduced-cost dual feasibility + complementary slackness on columns
  for (int j = 0; j < n; ++j) {
    double reduced = lp.objective[j];
    for (size_t i = 0; i < lp.rows.size(); ++i)
      reduced -= sol.duals[i] * lp.rows[i].coeffs[j];
    if (lp.sense == Sense::minimize)
      CHECK(reduced >= -1e-6);
    else
      CHECK(reduced <= 1e-6);
    CHECK(std::abs(reduced * sol.x[j]) <= 1e-6 * std::max(1.0, std::abs(sol.value)));
  }
  CHECK(dual_obj == Approx(sol.value).margin(1e-6 * std::max(1.0, std::abs(sol.value))));
}

}  // namespace

TEST_CASE("one-variable maximization") {
  LinearProgram lp;
  lp.sense = Sense::maximize;
  lp.add_var(1.0);
  lp.add_row({1.0}, Rel::le, 3.0);
  auto sol = solve_lp(lp);
  CHECK(sol.x[0] == Approx(3.0));
  CHECK(sol.value == Approx(3.0));
  check_certificate(lp, sol);
}

TEST_CASE("two-variable covering minimum") {
  LinearProgram lp;
  lp.add_var(1.0);
  lp.add_var(1.0);
  lp.add_row({1.0, 1.0}, Rel::ge, 1.0);
  auto sol = solve_lp(lp);
  CHECK(sol.value == Approx(1.0));
  check_certificate(lp, sol);
}

TEST_CASE("infeasible and unbounded detection") {
  LinearProgram bad;
  bad.add_var(1.0);
  bad.add_row({1.0}, Rel::le, 1.0);
  bad.add_row({1.0}, Rel::ge, 2.0);
  CHECK_THROWS_AS(solve_lp(bad), InfeasibleError);

  LinearProgram unb;
  unb.sense = Sense::maximize;
  unb.add_var(1.0);
  unb.add_row({-1.0}, Rel::le, 0.0);
  CHECK_THROWS_AS(solve_lp(unb), UnboundedError);
}

TEST_CASE("equality rows and shifted lower bounds") {
  LinearProgram lp;
  lp.add_var(2.0, 1.0);  // x >= 1
  lp.add_var(3.0);
  lp.add_row({1.0, 1.0}, Rel::eq, 4.0);
  auto sol = solve_lp(lp);
  // best: x as large as possible (cheaper), y fills: x=4, y=0
  CHECK(sol.x[0] == Approx(4.0));
  CHECK(sol.x[1] == Approx(0.0).margin(1e-9));
  CHECK(sol.value == Approx(8.0));
}

TEST_CASE("upper bounds enforced") {
  LinearProgram lp;
  lp.sense = Sense::maximize;
  lp.add_var(1.0, 0.0, 2.5);
  auto sol = solve_lp(lp);
  CHECK(sol.value == Approx(2.5));
}

TEST_CASE("random covering programs match the vertex-enumeration oracle") {
  std::mt19937_64 gen(77001);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + uniform_below(gen, 4);   // <= 5 vars
    int m = 1 + uniform_below(gen, 5);   // <= 5 rows
    LinearProgram lp;
    for (int j = 0; j < n; ++j) lp.add_var(0.1 + uniform01(gen));
    for (int i = 0; i < m; ++i) {
      std::vector<double> row(n, 0.0);
      bool nonzero = false;
      for (int j = 0; j < n; ++j) {
        if (uniform01(gen) < 0.7) {
          row[j] = 0.2 + uniform01(gen);
          nonzero = true;
        }
      }
      if (!nonzero) row[uniform_below(gen, n)] = 1.0;
      lp.add_row(std::move(row), Rel::ge, 0.5 + uniform01(gen));
    }
    auto sol = solve_lp(lp);
    double oracle = testsupport::enum_lp_value(lp);
    CAPTURE(trial);
    CHECK(sol.value == Approx(oracle).margin(1e-6 * std::max(1.0, oracle)));
    check_certificate(lp, sol);
  }
}

TEST_CASE("LP-FL fixture value matches the vertex-enumeration oracle") {
  FlInstance inst;
  inst.client_probs = {0.1, 0.1};
  inst.facilities = {{"f1", 10.0}, {"f2", 0.5}};
  inst.dist = {{0.0, 0.0}, {0.0, 0.0}};
  inst.metric = true;
  auto frac = solve_lp_fl(inst);

  // rebuild the same LP for the oracle
  LinearProgram lp;
  lp.sense = Sense::minimize;
  const int nf = 2, nc = 2;
  for (int f = 0; f < nf; ++f) lp.add_var(inst.facilities[f].open_cost);
  for (int c = 0; c < nc; ++c)
    for (int f = 0; f < nf; ++f) lp.add_var(inst.client_probs[c] * inst.d(c, f));
  for (int c = 0; c < nc; ++c)
    for (int f = 0; f < nf; ++f)
      lp.add_var(inst.client_probs[c] * (inst.facilities[f].open_cost + inst.d(c, f)));
  for (int c = 0; c < nc; ++c) {
    std::vector<double> row(lp.num_vars(), 0.0);
    for (int f = 0; f < nf; ++f) {
      row[nf + c * nf + f] = 1.0;
      row[nf + nc * nf + c * nf + f] = 1.0;
    }
    lp.add_row(std::move(row), Rel::ge, 1.0);
  }
  for (int c = 0; c < nc; ++c) {
    for (int f = 0; f < nf; ++f) {
      std::vector<double> row(lp.num_vars(), 0.0);
      row[nf + c * nf + f] = 1.0;
      row[f] = -1.0;
      lp.add_row(std::move(row), Rel::le, 0.0);
    }
  }
  double oracle = testsupport::enum_lp_value(lp);
  CHECK(frac.value == Approx(oracle).margin(1e-6));
  CHECK(frac.value == Approx(0.1).margin(1e-9));  // rent the cheap facility
}

TEST_CASE("cutting plane with no separator solves the master directly") {
  LinearProgram master;
  master.sense = Sense::maximize;
  master.add_var(1.0);
  master.add_row({1.0}, Rel::le, 2.0);
  auto res = cutting_plane(master, nullptr);
  CHECK(res.value == Approx(2.0));
  CHECK(res.rounds == 1);
  CHECK(res.pool.cuts.empty());
}

TEST_CASE("cutting plane on the single-element dual") {
  // one element, one set of cost 1, scenario prob 1
  Instance inst;
  inst.n = 1;
  inst.sets.push_back({"S1", 1.0, ElemSet::of(1, {0})});
  auto dist = Distribution::scenarios(1, {{1.0, ElemSet::of(1, {0})}});
  auto frac = solve_config_lp(inst, dist);
  CHECK(frac.value == Approx(1.0).margin(1e-9));
  CHECK(frac.duals[0] == Approx(1.0).margin(1e-9));
}

TEST_CASE("cutting-plane dual equals the full-column LP on fixtures") {
  auto inst = testsupport::fixture3_instance();
  auto dist = testsupport::fixture3_dist();
  auto frac = solve_config_lp(inst, dist);
  double full = testsupport::full_column_lp_value(inst, dist);
  CHECK(frac.value == Approx(full).margin(1e-6 * std::max(1.0, full)));
}

TEST_CASE("termination certificate: no violated dual constraint remains") {
  std::mt19937_64 gen(313131);
  for (int trial = 0; trial < 25; ++trial) {
    Instance inst = gen_cover_instance(gen, 6, 5);
    Distribution dist = uniform01(gen) < 0.5 ? gen_scenario_dist(gen, inst.n, 5)
                                             : gen_independent_dist(gen, inst.n);
    auto frac = solve_config_lp(inst, dist);
    // brute-force scan of all (S, B) pairs
    for (int s = 0; s < inst.num_sets(); ++s) {
      auto ids = inst.sets[s].elements.to_vector();
      for (uint64_t mask = 1; mask < (1ULL << ids.size()); ++mask) {
        ElemSet b(inst.n);
        for (size_t i = 0; i < ids.size(); ++i) {
          if (mask & (1ULL << i)) b.insert(ids[i]);
        }
        double lhs = 0.0;
        b.for_each([&](int u) { lhs += frac.duals[u]; });
        double rhs = inst.sets[s].cost * hit_prob(dist, b);
        CAPTURE(trial, s, mask);
        CHECK(lhs <= rhs + 1e-6);
      }
    }
  }
}

TEST_CASE("cut pool rejects duplicate tags") {
  CutPool pool;
  Cut c;
  c.set_id = "S1";
  c.subset = ElemSet::of(2, {0});
  pool.cuts.push_back(c);
  CHECK(pool.contains("S1", ElemSet::of(2, {0})));
  CHECK_FALSE(pool.contains("S1", ElemSet::of(2, {1})));
}

TEST_CASE("LP text dump is well formed") {
  LinearProgram lp;
  lp.add_var(1.0);
  lp.add_var(-2.0, 0.0, 5.0);
  lp.add_row({1.0, 1.0}, Rel::le, 3.0);
  std::ostringstream os;
  write_lp_text(lp, os);
  std::string text = os.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("cycling-prone degenerate program terminates at the optimum") {
  // Beale's classic cycling example; Bland's rule must finish it.
  LinearProgram lp;
  lp.add_var(-0.75);
  lp.add_var(150.0);
  lp.add_var(-0.02);
  lp.add_var(6.0);
  lp.add_row({0.25, -60.0, -1.0 / 25.0, 9.0}, Rel::le, 0.0);
  lp.add_row({0.5, -90.0, -1.0 / 50.0, 3.0}, Rel::le, 0.0);
  lp.add_row({0.0, 0.0, 1.0, 0.0}, Rel::le, 1.0);
  auto sol = solve_lp(lp);
  CHECK(sol.value == Approx(-0.05).margin(1e-9));
}

TEST_CASE("wider configuration LP: many cutting rounds stay certified") {
  std::mt19937_64 gen(778899);
  Instance inst = gen_cover_instance(gen, 14, 8);
  Distribution dist = gen_independent_dist(gen, inst.n);
  auto frac = solve_config_lp(inst, dist);
  for (int u = 0; u < inst.n; ++u) CHECK(frac.coverage(u) >= 1.0 - 1e-6);
  // full (S,B) termination certificate: 8 * 2^14 subset evaluations
  for (int s = 0; s < inst.num_sets(); ++s) {
    auto ids = inst.sets[s].elements.to_vector();
    double worst = 0.0;
    for (uint64_t mask = 1; mask < (1ULL << ids.size()); ++mask) {
      ElemSet b(inst.n);
      for (size_t i = 0; i < ids.size(); ++i) {
        if (mask & (1ULL << i)) b.insert(ids[i]);
      }
      double lhs = 0.0;
      b.for_each([&](int u) { lhs += frac.duals[u]; });
      worst = std::max(worst, lhs - inst.sets[s].cost * hit_prob(dist, b));
    }
    CHECK(worst <= 1e-6);
  }
  auto rr = round_randomized(inst, dist, frac, 3);
  rr.mapping.validate(inst);
  CHECK(rr.cost <= 4.0 * std::log(double(inst.n)) * frac.value + 1e-9);
}
