#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "ucover/common.hpp"
#include "ucover/elemset.hpp"

namespace ucover {

// A set function given as an evaluation oracle over a ground set. Callers
// promise submodularity; it is spot-checked in tests, never enforced here.
struct SetFunction {
  ElemSet ground;
  std::function<double(const ElemSet&)> value;
};

struct SfmResult {
  ElemSet minimizer;
  double value = 0.0;
};

// Thrown when the minimum-norm-point loop hits its iteration cap; carries the
// best point seen so far.
class SfmConvergenceError : public SolveError {
 public:
  SfmConvergenceError(std::string msg, SfmResult best)
      : SolveError(std::move(msg)), best_so_far(std::move(best)) {}
  SfmResult best_so_far;
};

inline constexpr int kBruteGroundCap = 22;
inline constexpr int kWolfeFallbackCap = 18;

namespace detail {

// Keeps the better of two candidates; ties (within 1e-12 of each other) break
// toward smaller cardinality, then lexicographic element order.
inline void keep_better(SfmResult& best, const ElemSet& cand, double val) {
  constexpr double tie = 1e-12;
  if (val < best.value - tie) {
    best = {cand, val};
  } else if (val <= best.value + tie && smaller_then_lex(cand, best.minimizer)) {
    best = {cand, val};
  }
}

}  // namespace detail

// Exact minimization by enumerating all 2^|ground| subsets. The testing
// oracle for the minimum-norm-point path; |ground| capped at 22.
inline SfmResult minimize_brute(const SetFunction& f) {
  const auto ids = f.ground.to_vector();
  const int k = static_cast<int>(ids.size());
  if (k > kBruteGroundCap)
    throw SizeCapError("minimize_brute: ground set larger than 2^22 enumeration cap");
  const int universe = f.ground.universe();
  SfmResult best{ElemSet(universe), f.value(ElemSet(universe))};
  for (uint64_t mask = 1; mask < (1ULL << k); ++mask) {
    ElemSet cand(universe);
    for (int i = 0; i < k; ++i) {
      if (mask & (1ULL << i)) cand.insert(ids[i]);
    }
    detail::keep_better(best, cand, f.value(cand));
  }
  return best;
}

namespace detail {

// Fujishige-Wolfe minimum-norm-point minimizer, working in the compact index
// space [0,k) of the ground set. Operates on the normalized function
// F(X) = f(X) - f(empty), whose base polytope vertices come from the greedy
// (Edmonds) ordering rule.
class WolfeSfm {
 public:
  WolfeSfm(const SetFunction& f, const std::vector<int>& ids)
      : f_(f), ids_(ids), k_(static_cast<int>(ids.size())) {
    empty_value_ = f.value(ElemSet(f.ground.universe()));
  }

  // Returns the minimizer of F plus a convergence flag.
  bool run(SfmResult& out, int max_iter) {
    ElemSet universe_empty(f_.ground.universe());
    best_ = {universe_empty, 0.0};  // F(empty) = 0

    std::vector<int> order(k_);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<double>> atoms{vertex(order)};
    std::vector<double> lambda{1.0};
    std::vector<double> x = atoms[0];
    scan_candidates(x);

    for (int iter = 0; iter < max_iter; ++iter) {
      // Linear oracle: vertex minimizing <x, q>, elements ordered by
      // ascending x (ties by index, for reproducibility).
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return x[a] < x[b]; });
      auto q = vertex(order);

      // Certified gap: sum of negative coordinates of any base-polytope point
      // lower-bounds min F; best_ holds the incumbent upper bound.
      double lower = 0.0;
      for (double v : x) lower += std::min(v, 0.0);
      const double scale = std::max(1.0, std::abs(best_.value));
      if (best_.value - lower <= 1e-9 * scale) {
        out = finish();
        return true;
      }
      if (dot(x, x) - dot(x, q) <= 1e-12 * std::max(1.0, dot(x, x))) {
        // No descent direction left; accept the incumbent.
        out = finish();
        return best_.value - lower <= 1e-7 * scale;
      }

      atoms.push_back(std::move(q));
      lambda.push_back(0.0);

      // Minor cycle: pull x to the min-norm point of the affine hull of the
      // atoms, dropping atoms whose weight would go negative.
      for (int minor = 0; minor <= 4 * (k_ + 2); ++minor) {
        std::vector<double> mu;
        if (!affine_min_norm(atoms, mu)) {
          // Affinely dependent atom set: drop the lightest atom and retry.
          drop_atom(atoms, lambda, lightest(lambda));
          continue;
        }
        bool interior = true;
        for (double m : mu) {
          if (m < -1e-12) {
            interior = false;
            break;
          }
        }
        if (interior) {
          lambda = mu;
          break;
        }
        double theta = 1.0;
        for (size_t i = 0; i < mu.size(); ++i) {
          if (mu[i] < -1e-12 && lambda[i] > mu[i])
            theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
        }
        for (size_t i = 0; i < mu.size(); ++i)
          lambda[i] = theta * mu[i] + (1.0 - theta) * lambda[i];
        // Remove atoms squeezed to (numerically) zero weight.
        for (size_t i = lambda.size(); i-- > 0;) {
          if (lambda[i] <= 1e-12) drop_atom(atoms, lambda, i);
        }
        double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
        for (double& l : lambda) l /= total;
      }

      // x must remain a convex combination or the lower bound above is void.
      double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
      for (double& l : lambda) l /= total;
      x.assign(k_, 0.0);
      for (size_t a = 0; a < atoms.size(); ++a) {
        for (int i = 0; i < k_; ++i) x[i] += lambda[a] * atoms[a][i];
      }
      scan_candidates(x);
    }
    out = finish();
    return false;
  }

 private:
  double norm_value(const ElemSet& s) const { return f_.value(s) - empty_value_; }

  std::vector<double> vertex(const std::vector<int>& order) {
    std::vector<double> q(k_, 0.0);
    ElemSet prefix(f_.ground.universe());
    double prev = 0.0;
    for (int idx : order) {
      prefix.insert(ids_[idx]);
      double cur = norm_value(prefix);
      q[idx] = cur - prev;
      prev = cur;
    }
    return q;
  }

  // Evaluates F on every prefix of the ascending-x order; the minimal
  // minimizer of F is always among these level sets at the exact min-norm
  // point, and scanning keeps us robust to its numerical wobble.
  void scan_candidates(const std::vector<double>& x) {
    std::vector<int> order(k_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return x[a] < x[b]; });
    ElemSet prefix(f_.ground.universe());
    for (int idx : order) {
      prefix.insert(ids_[idx]);
      keep_better(best_, prefix, norm_value(prefix));
    }
  }

  SfmResult finish() const {
    return {best_.minimizer, best_.value + empty_value_};
  }

  static double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  static size_t lightest(const std::vector<double>& lambda) {
    size_t j = 0;
    for (size_t i = 1; i < lambda.size(); ++i) {
      if (lambda[i] < lambda[j]) j = i;
    }
    return j;
  }

  static void drop_atom(std::vector<std::vector<double>>& atoms,
                        std::vector<double>& lambda, size_t i) {
    atoms.erase(atoms.begin() + static_cast<long>(i));
    lambda.erase(lambda.begin() + static_cast<long>(i));
  }

  // Solves min ||sum mu_i s_i||^2 subject to sum mu_i = 1 via the KKT system
  // [2G 1; 1^T 0]. Returns false when the system is numerically singular.
  bool affine_min_norm(const std::vector<std::vector<double>>& atoms,
                       std::vector<double>& mu) const {
    const int m = static_cast<int>(atoms.size());
    std::vector<std::vector<double>> a(m + 1, std::vector<double>(m + 2, 0.0));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) a[i][j] = 2.0 * dot(atoms[i], atoms[j]);
      a[i][m] = 1.0;
      a[i][m + 1] = 0.0;
    }
    for (int j = 0; j < m; ++j) a[m][j] = 1.0;
    a[m][m] = 0.0;
    a[m][m + 1] = 1.0;

    const int dim = m + 1;
    for (int col = 0; col < dim; ++col) {
      int piv = col;
      for (int r = col + 1; r < dim; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      }
      if (std::abs(a[piv][col]) < 1e-12) return false;
      std::swap(a[col], a[piv]);
      for (int r = 0; r < dim; ++r) {
        if (r == col) continue;
        double factor = a[r][col] / a[col][col];
        if (factor == 0.0) continue;
        for (int c = col; c <= dim; ++c) a[r][c] -= factor * a[col][c];
      }
    }
    mu.assign(m, 0.0);
    for (int i = 0; i < m; ++i) mu[i] = a[i][dim] / a[i][i];
    return true;
  }

  const SetFunction& f_;
  const std::vector<int>& ids_;
  int k_;
  double empty_value_ = 0.0;
  SfmResult best_;
};

}  // namespace detail

// Minimizes a submodular function over all subsets of its ground set
// (including the empty set) with the Fujishige-Wolfe minimum-norm-point
// method. Falls back to exhaustive enumeration when the loop fails to
// certify a 1e-9 gap and the ground set is small enough; otherwise throws
// SfmConvergenceError carrying the best point found.
inline SfmResult minimize(const SetFunction& f) {
  const auto ids = f.ground.to_vector();
  const int k = static_cast<int>(ids.size());
  if (k == 0) return {ElemSet(f.ground.universe()), f.value(ElemSet(f.ground.universe()))};

  detail::WolfeSfm wolfe(f, ids);
  SfmResult result;
  const int max_iter = 200 * k + 400;
  if (wolfe.run(result, max_iter)) return result;
  if (k <= kWolfeFallbackCap) return minimize_brute(f);
  throw SfmConvergenceError("minimum-norm-point loop hit its iteration cap", result);
}

struct RatioResult {
  ElemSet minimizer;  // nonempty
  double ratio = 0.0;
};

// Minimizes f(X)/|X| over nonempty X via Dinkelbach iteration: repeatedly
// minimize f(X) - c|X| (still submodular) and tighten c. Requires f >= 0.
// Finite termination: each round strictly lowers c over finitely many
// support sets.
inline RatioResult minimize_ratio(const SetFunction& f) {
  const auto ids = f.ground.to_vector();
  if (ids.empty()) throw ValidationError("minimize_ratio: empty ground set");
  const int universe = f.ground.universe();

  // Start from the best singleton.
  RatioResult best;
  best.ratio = std::numeric_limits<double>::infinity();
  for (int id : ids) {
    ElemSet s(universe);
    s.insert(id);
    double v = f.value(s);
    if (v < best.ratio - 1e-15) best = {s, v};
  }

  for (int round = 0; round < 10000; ++round) {
    const double c = best.ratio;
    SetFunction shifted{f.ground, [&f, c](const ElemSet& x) {
                          return f.value(x) - c * x.count();
                        }};
    SfmResult inner = minimize(shifted);
    const double scale = std::max(1.0, std::abs(c));
    if (inner.value >= -1e-12 * scale || inner.minimizer.empty()) return best;
    double next = f.value(inner.minimizer) / inner.minimizer.count();
    if (next >= best.ratio) return best;  // no strict progress; converged
    best = {inner.minimizer, next};
  }
  throw SolveError("minimize_ratio: Dinkelbach iteration cap exceeded");
}

// Exhaustive ratio minimization over nonempty subsets; testing oracle.
inline RatioResult minimize_ratio_brute(const SetFunction& f) {
  const auto ids = f.ground.to_vector();
  const int k = static_cast<int>(ids.size());
  if (k == 0) throw ValidationError("minimize_ratio_brute: empty ground set");
  if (k > kBruteGroundCap) throw SizeCapError("minimize_ratio_brute: ground too large");
  const int universe = f.ground.universe();
  RatioResult best;
  best.ratio = std::numeric_limits<double>::infinity();
  bool have = false;
  for (uint64_t mask = 1; mask < (1ULL << k); ++mask) {
    ElemSet cand(universe);
    for (int i = 0; i < k; ++i) {
      if (mask & (1ULL << i)) cand.insert(ids[i]);
    }
    double r = f.value(cand) / cand.count();
    if (!have || r < best.ratio - 1e-12 ||
        (r <= best.ratio + 1e-12 && smaller_then_lex(cand, best.minimizer))) {
      best = {cand, r};
      have = true;
    }
  }
  return best;
}

}  // namespace ucover
