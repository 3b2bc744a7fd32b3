#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mcs/errors.hpp"
#include "mcs/lp.hpp"

namespace mcs {

namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tableau {
  int rows = 0;
  int cols = 0;  // structural + slack + artificial columns
  std::vector<std::vector<double>> a;  // rows x (cols + 1), last entry = rhs
  std::vector<int> basis;              // basic column per row
  std::vector<bool> blocked;           // columns barred from entering

  void pivot(int r, int c) {
    const double p = a[r][c];
    for (int j = 0; j <= cols; ++j) a[r][j] /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0.0) continue;
      const double f = a[i][c];
      for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    basis[r] = c;
  }
};

// Bland's rule minimization over the priced-out cost row. Returns false on
// unbounded direction.
bool run_simplex(Tableau& t, std::vector<double>& cost) {
  for (;;) {
    int enter = -1;
    for (int j = 0; j < t.cols; ++j) {
      if (!t.blocked[j] && cost[j] < -kTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best_ratio = kInf;
    for (int i = 0; i < t.rows; ++i) {
      if (t.a[i][enter] > kTol) {
        const double ratio = t.a[i][t.cols] / t.a[i][enter];
        if (ratio < best_ratio - kTol ||
            (ratio < best_ratio + kTol &&
             (leave < 0 || t.basis[i] < t.basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;
    t.pivot(leave, enter);
    const double f = cost[enter];
    for (int j = 0; j <= t.cols; ++j) cost[j] -= f * t.a[leave][j];
  }
}

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
  const int nv = static_cast<int>(lp.objective.size());
  if (static_cast<int>(lp.lower.size()) != nv ||
      static_cast<int>(lp.upper.size()) != nv) {
    throw ParameterError("bound vectors must match variable count");
  }
  for (int j = 0; j < nv; ++j) {
    if (!std::isfinite(lp.lower[j])) {
      throw ParameterError("lower bounds must be finite");
    }
    if (lp.lower[j] > lp.upper[j]) {
      return {LpStatus::infeasible, {}, 0.0};
    }
  }

  // Shift to y = x - lo >= 0 and turn finite upper bounds into rows.
  struct Row {
    std::vector<double> coeffs;
    Relation rel;
    double rhs;
  };
  std::vector<Row> rows;
  for (const ConstraintRow& r : lp.rows) {
    if (static_cast<int>(r.coeffs.size()) != nv) {
      throw ParameterError("constraint width must match variable count");
    }
    double rhs = r.rhs;
    for (int j = 0; j < nv; ++j) rhs -= r.coeffs[j] * lp.lower[j];
    rows.push_back({r.coeffs, r.rel, rhs});
  }
  for (int j = 0; j < nv; ++j) {
    if (std::isfinite(lp.upper[j])) {
      std::vector<double> c(nv, 0.0);
      c[j] = 1.0;
      rows.push_back({std::move(c), Relation::le, lp.upper[j] - lp.lower[j]});
    }
  }

  const int m = static_cast<int>(rows.size());
  int nslack = 0, nart = 0;
  for (const Row& r : rows) {
    Relation rel = r.rel;
    const bool flip = r.rhs < 0.0;
    if (flip) rel = (rel == Relation::le) ? Relation::ge
                    : (rel == Relation::ge) ? Relation::le
                                            : Relation::eq;
    if (rel == Relation::le) {
      ++nslack;
    } else if (rel == Relation::ge) {
      ++nslack;
      ++nart;
    } else {
      ++nart;
    }
  }

  Tableau t;
  t.rows = m;
  t.cols = nv + nslack + nart;
  t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
  t.basis.assign(m, -1);
  t.blocked.assign(t.cols, false);
  std::vector<bool> artificial(t.cols, false);

  int slack_at = nv;
  int art_at = nv + nslack;
  for (int i = 0; i < m; ++i) {
    const Row& r = rows[i];
    const double sign = r.rhs < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) t.a[i][j] = sign * r.coeffs[j];
    t.a[i][t.cols] = sign * r.rhs;
    Relation rel = r.rel;
    if (sign < 0.0) {
      rel = (rel == Relation::le) ? Relation::ge
            : (rel == Relation::ge) ? Relation::le
                                    : Relation::eq;
    }
    if (rel == Relation::le) {
      t.a[i][slack_at] = 1.0;
      t.basis[i] = slack_at++;
    } else if (rel == Relation::ge) {
      t.a[i][slack_at++] = -1.0;
      t.a[i][art_at] = 1.0;
      artificial[art_at] = true;
      t.basis[i] = art_at++;
    } else {
      t.a[i][art_at] = 1.0;
      artificial[art_at] = true;
      t.basis[i] = art_at++;
    }
  }

  if (nart > 0) {
    // Phase 1: minimize the artificial total.
    std::vector<double> cost(t.cols + 1, 0.0);
    for (int j = 0; j < t.cols; ++j) {
      if (artificial[j]) cost[j] = 1.0;
    }
    for (int i = 0; i < m; ++i) {
      if (artificial[t.basis[i]]) {
        for (int j = 0; j <= t.cols; ++j) cost[j] -= t.a[i][j];
      }
    }
    run_simplex(t, cost);
    if (-cost[t.cols] > 1e-7) {
      return {LpStatus::infeasible, {}, 0.0};
    }
    // Drive remaining artificials out of the basis; a row with no eligible
    // pivot is redundant and gets dropped.
    for (int i = 0; i < t.rows;) {
      if (!artificial[t.basis[i]]) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < t.cols; ++j) {
        if (!artificial[j] && std::abs(t.a[i][j]) > kTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        t.pivot(i, col);
        ++i;
      } else {
        t.a.erase(t.a.begin() + i);
        t.basis.erase(t.basis.begin() + i);
        --t.rows;
      }
    }
    for (int j = 0; j < t.cols; ++j) {
      if (artificial[j]) t.blocked[j] = true;
    }
  }

  // Phase 2: price out the original objective over the current basis.
  std::vector<double> cost(t.cols + 1, 0.0);
  for (int j = 0; j < nv; ++j) cost[j] = lp.objective[j];
  for (int i = 0; i < t.rows; ++i) {
    const double cb = t.basis[i] < nv ? lp.objective[t.basis[i]] : 0.0;
    if (cb != 0.0) {
      for (int j = 0; j <= t.cols; ++j) cost[j] -= cb * t.a[i][j];
    }
  }
  if (!run_simplex(t, cost)) {
    return {LpStatus::unbounded, {}, 0.0};
  }

  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.values.assign(nv, 0.0);
  for (int i = 0; i < t.rows; ++i) {
    if (t.basis[i] < nv) sol.values[t.basis[i]] = t.a[i][t.cols];
  }
  sol.objective = 0.0;
  for (int j = 0; j < nv; ++j) {
    sol.values[j] += lp.lower[j];
    sol.objective += lp.objective[j] * sol.values[j];
  }
  return sol;
}

}  // namespace mcs
