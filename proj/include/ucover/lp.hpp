#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "ucover/common.hpp"

namespace ucover {

enum class Rel { le, ge, eq };
enum class Sense { minimize, maximize };

struct LpRow {
  std::vector<double> coeffs;
  Rel rel = Rel::le;
  double rhs = 0.0;
};

// A dense linear program over nonnegative (by default) variables. Small by
// design: every LP in this library has at most a few thousand rows.
struct LinearProgram {
  Sense sense = Sense::minimize;
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<double> lower;  // default 0
  std::vector<double> upper;  // default +inf

  int num_vars() const { return static_cast<int>(objective.size()); }

  int add_var(double cost, double lo = 0.0,
              double hi = std::numeric_limits<double>::infinity()) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    return num_vars() - 1;
  }

  void add_row(std::vector<double> coeffs, Rel rel, double rhs) {
    if (static_cast<int>(coeffs.size()) != num_vars())
      throw ValidationError("lp row dimension mismatch");
    rows.push_back({std::move(coeffs), rel, rhs});
  }

  void validate() const {
    for (double c : objective) {
      if (!std::isfinite(c)) throw ValidationError("lp: non-finite objective");
    }
    for (const auto& r : rows) {
      if (static_cast<int>(r.coeffs.size()) != num_vars())
        throw ValidationError("lp: row dimension mismatch");
      if (!std::isfinite(r.rhs)) throw ValidationError("lp: non-finite rhs");
      for (double a : r.coeffs) {
        if (!std::isfinite(a)) throw ValidationError("lp: non-finite coefficient");
      }
    }
  }
};

struct LpSolution {
  std::vector<double> x;
  double value = 0.0;
  // One dual per user row. Convention: value == duals . rhs when no finite
  // upper bounds are present; signs satisfy the usual min/max conventions
  // (min: y >= 0 on >= rows, y <= 0 on <= rows; max: flipped).
  std::vector<double> duals;
};

namespace detail {

inline constexpr double kPivotTol = 1e-10;
inline constexpr double kReducedTol = 1e-9;

class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) {
    lp.validate();
    nvar_ = lp.num_vars();
    lo_.assign(nvar_, 0.0);
    for (int j = 0; j < nvar_ && j < static_cast<int>(lp.lower.size()); ++j) {
      double l = lp.lower[j];
      if (!std::isfinite(l) || l < 0.0)
        throw ValidationError("lp: lower bounds must be finite and nonnegative");
      lo_[j] = l;
    }
    cost_.assign(nvar_, 0.0);
    for (int j = 0; j < nvar_; ++j)
      cost_[j] = (lp.sense == Sense::maximize) ? -lp.objective[j] : lp.objective[j];
    build();
  }

  LpSolution solve() {
    if (nart_ > 0) {
      std::vector<double> phase1(ncols_, 0.0);
      for (int j = art_begin_; j < ncols_; ++j) phase1[j] = 1.0;
      run(phase1, /*allow_artificials=*/true);
      double infeas = 0.0;
      for (int r = 0; r < m_; ++r) {
        if (basis_[r] >= art_begin_) infeas += rhs_[r];
      }
      if (infeas > 1e-7) throw InfeasibleError("lp infeasible (phase 1 residual)");
      evict_artificials();
    }
    std::vector<double> phase2(ncols_, 0.0);
    for (int j = 0; j < nvar_; ++j) phase2[j] = cost_[j];
    run(phase2, /*allow_artificials=*/false);

    LpSolution sol;
    sol.x.assign(nvar_, 0.0);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < nvar_) sol.x[basis_[r]] = rhs_[r];
    }
    for (int j = 0; j < nvar_; ++j) sol.x[j] += lo_[j];
    double v = 0.0;
    for (int j = 0; j < nvar_; ++j) v += lp_.objective[j] * sol.x[j];
    sol.value = v;

    // Duals from the final basis: y^T = c_B^T B^{-1}; the tableau columns of
    // the initial identity columns hold B^{-1}.
    sol.duals.assign(num_user_rows_, 0.0);
    for (int i = 0; i < num_user_rows_; ++i) {
      double y = 0.0;
      for (int r = 0; r < m_; ++r) {
        int b = basis_[r];
        if (b < nvar_) y += cost_[b] * tab_[r][unit_col_[i]];
      }
      if (flipped_[i]) y = -y;
      if (lp_.sense == Sense::maximize) y = -y;
      sol.duals[i] = y;
    }
    return sol;
  }

 private:
  void build() {
    // Internal rows: user rows (with lower-bound shift), then upper bounds.
    std::vector<LpRow> rows;
    num_user_rows_ = static_cast<int>(lp_.rows.size());
    for (const auto& r : lp_.rows) {
      LpRow row = r;
      for (int j = 0; j < nvar_; ++j) row.rhs -= row.coeffs[j] * lo_[j];
      rows.push_back(std::move(row));
    }
    for (int j = 0; j < nvar_ && j < static_cast<int>(lp_.upper.size()); ++j) {
      if (std::isfinite(lp_.upper[j])) {
        LpRow row;
        row.coeffs.assign(nvar_, 0.0);
        row.coeffs[j] = 1.0;
        row.rel = Rel::le;
        row.rhs = lp_.upper[j] - lo_[j];
        if (row.rhs < 0.0) throw InfeasibleError("lp: empty variable bound interval");
        rows.push_back(std::move(row));
      }
    }

    m_ = static_cast<int>(rows.size());
    flipped_.assign(m_, false);
    for (int i = 0; i < m_; ++i) {
      if (rows[i].rhs < 0.0) {
        flipped_[i] = true;
        rows[i].rhs = -rows[i].rhs;
        for (double& a : rows[i].coeffs) a = -a;
        if (rows[i].rel == Rel::le)
          rows[i].rel = Rel::ge;
        else if (rows[i].rel == Rel::ge)
          rows[i].rel = Rel::le;
      }
    }

    int nslack = 0, nart = 0;
    for (const auto& r : rows) {
      if (r.rel != Rel::eq) ++nslack;
      if (r.rel != Rel::le) ++nart;
    }
    nart_ = nart;
    int slack_begin = nvar_;
    art_begin_ = nvar_ + nslack;
    ncols_ = art_begin_ + nart;

    tab_.assign(m_, std::vector<double>(ncols_, 0.0));
    rhs_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    unit_col_.assign(m_, -1);

    int s = slack_begin, a = art_begin_;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < nvar_; ++j) tab_[i][j] = rows[i].coeffs[j];
      rhs_[i] = rows[i].rhs;
      if (rows[i].rel == Rel::le) {
        tab_[i][s] = 1.0;
        basis_[i] = s;
        unit_col_[i] = s;
        ++s;
      } else if (rows[i].rel == Rel::ge) {
        tab_[i][s] = -1.0;
        ++s;
        tab_[i][a] = 1.0;
        basis_[i] = a;
        unit_col_[i] = a;
        ++a;
      } else {
        tab_[i][a] = 1.0;
        basis_[i] = a;
        unit_col_[i] = a;
        ++a;
      }
    }
  }

  void run(const std::vector<double>& c, bool allow_artificials) {
    const long bland_after = 2000;
    const long cap = 200000;
    for (long iter = 0; iter < cap; ++iter) {
      const bool bland = iter >= bland_after;
      int enter = -1;
      double best = -kReducedTol;
      for (int j = 0; j < ncols_; ++j) {
        if (!allow_artificials && j >= art_begin_) continue;
        double d = c[j];
        for (int r = 0; r < m_; ++r) {
          double t = tab_[r][j];
          if (t != 0.0) d -= c[basis_[r]] * t;
        }
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return;  // optimal

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        double t = tab_[r][enter];
        if (t > kPivotTol) {
          double ratio = rhs_[r] / t;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && (leave < 0 || basis_[r] < basis_[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) throw UnboundedError("lp unbounded");
      pivot(leave, enter);
    }
    throw SolveError("simplex iteration cap exceeded");
  }

  void pivot(int r, int j) {
    double p = tab_[r][j];
    for (double& v : tab_[r]) v /= p;
    rhs_[r] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double f = tab_[i][j];
      if (f == 0.0) continue;
      for (int k = 0; k < ncols_; ++k) tab_[i][k] -= f * tab_[r][k];
      tab_[i][j] = 0.0;  // kill float dust on the pivot column
      rhs_[i] -= f * rhs_[r];
      if (std::abs(rhs_[i]) < 1e-12) rhs_[i] = 0.0;
    }
    basis_[r] = j;
  }

  // After phase 1, pivot basic artificials out where a nonzero structural or
  // slack entry exists; rows without one are redundant and keep a harmless
  // zero-valued artificial.
  void evict_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art_begin_) continue;
      int j = -1;
      for (int k = 0; k < art_begin_; ++k) {
        if (std::abs(tab_[r][k]) > 1e-7) {
          j = k;
          break;
        }
      }
      if (j >= 0) pivot(r, j);
    }
  }

  const LinearProgram& lp_;
  int nvar_ = 0;
  int m_ = 0;
  int ncols_ = 0;
  int nart_ = 0;
  int art_begin_ = 0;
  int num_user_rows_ = 0;
  std::vector<double> lo_;
  std::vector<double> cost_;
  std::vector<std::vector<double>> tab_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  std::vector<int> unit_col_;
  std::vector<bool> flipped_;
};

}  // namespace detail

// Solves a dense LP with a two-phase primal simplex (Dantzig pricing,
// Bland's rule after 2000 iterations to break cycling). Throws
// InfeasibleError / UnboundedError / SolveError.
inline LpSolution solve_lp(const LinearProgram& lp) {
  detail::Simplex solver(lp);
  return solver.solve();
}

// Writes the program in CPLEX-LP text format (debugging aid, not bit-exact).
inline void write_lp_text(const LinearProgram& lp, std::ostream& os) {
  os << (lp.sense == Sense::maximize ? "Maximize" : "Minimize") << "\n obj:";
  for (int j = 0; j < lp.num_vars(); ++j) {
    double c = lp.objective[j];
    if (c == 0.0) continue;
    os << (c >= 0 ? " + " : " - ") << std::abs(c) << " x" << j;
  }
  os << "\nSubject To\n";
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& r = lp.rows[i];
    os << " c" << i << ":";
    for (int j = 0; j < lp.num_vars(); ++j) {
      double a = r.coeffs[j];
      if (a == 0.0) continue;
      os << (a >= 0 ? " + " : " - ") << std::abs(a) << " x" << j;
    }
    os << (r.rel == Rel::le ? " <= " : r.rel == Rel::ge ? " >= " : " = ") << r.rhs << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    double lo = j < static_cast<int>(lp.lower.size()) ? lp.lower[j] : 0.0;
    double hi = j < static_cast<int>(lp.upper.size())
                    ? lp.upper[j]
                    : std::numeric_limits<double>::infinity();
    if (std::isfinite(hi))
      os << " " << lo << " <= x" << j << " <= " << hi << "\n";
    else if (lo != 0.0)
      os << " x" << j << " >= " << lo << "\n";
  }
  os << "End\n";
}

}  // namespace ucover
