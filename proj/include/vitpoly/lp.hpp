#pragma once

#include "vitpoly/rational.hpp"

#include <stdexcept>
#include <vector>

namespace vitpoly::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rational value;  // c.x at the optimum
  RVec x;          // structural variables
  RVec dual;       // y = c_B B^-1, in original row orientation
  RVec farkas;     // infeasible case: y with y.A <= 0 and y.b > 0
};

// Two-phase primal simplex with Bland's rule on a dense rational tableau.
//
//   maximize c.x   subject to   A x = b,  x >= 0.
//
// Exact arithmetic makes every comparison decidable, and Bland's rule rules
// out cycling, so the solve always terminates. Problem sizes in this library
// stay tiny (rows <= dim+2, columns <= a few hundred), which is why a dense
// tableau is the right tool.
class SimplexSolver {
 public:
  Result solve(RMat A, RVec b, const RVec& c) {
    const int m = static_cast<int>(A.size());
    const int n = m ? static_cast<int>(A[0].size()) : static_cast<int>(c.size());
    if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n)
      throw std::invalid_argument("SimplexSolver: shape mismatch");

    // Normalize to b >= 0, remembering row orientation for dual extraction.
    flip_.assign(m, 1);
    for (int i = 0; i < m; ++i) {
      if (b[i] < 0) {
        flip_[i] = -1;
        b[i] = -b[i];
        for (auto& a : A[i]) a = -a;
      }
    }

    // Tableau columns: n structural, then m artificial, then the rhs.
    n_ = n;
    m_ = m;
    tab_.assign(m, RVec(n + m + 1, Rational(0)));
    basis_.assign(m, 0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) tab_[i][j] = A[i][j];
      tab_[i][n + i] = 1;
      tab_[i][n + m] = b[i];
      basis_[i] = n + i;
    }

    // Phase 1: maximize -(sum of artificials).
    RVec cost1(n + m, Rational(0));
    for (int i = 0; i < m; ++i) cost1[n + i] = -1;
    set_objective(cost1);
    run(/*allow_artificial=*/true);
    Result res;
    if (objval_ < 0) {
      res.status = Status::infeasible;
      res.farkas.assign(m, Rational(0));
      // y = c_B B^-1 read from the artificial reduced costs; the certificate
      // -y satisfies (-y).A <= 0 and (-y).b > 0 for the normalized system.
      for (int i = 0; i < m; ++i) {
        Rational y_i = Rational(-1) - red_[n + i];
        res.farkas[i] = Rational(flip_[i]) * (-y_i);
      }
      return res;
    }

    // Degenerate basic artificials: pivot them out where possible; rows
    // with no structural pivot stay at level zero for good.
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < n) continue;
      for (int j = 0; j < n; ++j) {
        if (tab_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }

    // Phase 2 with the real objective; artificials may not re-enter.
    RVec cost2(n + m, Rational(0));
    for (int j = 0; j < n; ++j) cost2[j] = c[j];
    set_objective(cost2);
    if (!run(/*allow_artificial=*/false)) {
      res.status = Status::unbounded;
      return res;
    }

    res.status = Status::optimal;
    res.value = objval_;
    res.x.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
      if (basis_[i] < n) res.x[basis_[i]] = tab_[i][n + m];
    res.dual.assign(m, Rational(0));
    for (int i = 0; i < m; ++i)
      res.dual[i] = Rational(flip_[i]) * (Rational(0) - red_[n + i]);
    return res;
  }

 private:
  void set_objective(const RVec& cost) {
    cost_ = cost;
    red_ = cost;
    objval_ = 0;
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < n_ + m_; ++j) red_[j] -= cb * tab_[i][j];
      objval_ += cb * tab_[i][n_ + m_];
    }
  }

  // Bland: entering column is the lowest-index improving one, leaving row is
  // the ratio-test winner with the lowest basic index.
  bool run(bool allow_artificial) {
    for (;;) {
      int enter = -1;
      int limit = allow_artificial ? n_ + m_ : n_;
      for (int j = 0; j < limit; ++j) {
        if (red_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][enter] <= 0) continue;
        Rational ratio = tab_[i][n_ + m_] / tab_[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    const int w = n_ + m_ + 1;
    Rational inv = tab_[row][col];
    for (int j = 0; j < w; ++j) tab_[row][j] /= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || tab_[i][col] == 0) continue;
      Rational f = tab_[i][col];
      for (int j = 0; j < w; ++j) tab_[i][j] -= f * tab_[row][j];
    }
    if (red_[col] != 0) {
      Rational f = red_[col];
      for (int j = 0; j < w - 1; ++j) red_[j] -= f * tab_[row][j];
      objval_ += f * tab_[row][w - 1];
    }
    basis_[row] = col;
  }

  int n_ = 0, m_ = 0;
  RMat tab_;
  RVec red_, cost_;
  Rational objval_;
  std::vector<int> basis_;
  std::vector<int> flip_;
};

inline Result solve_eq(RMat A, RVec b, const RVec& c) {
  SimplexSolver solver;
  return solver.solve(std::move(A), std::move(b), c);
}

}  // namespace vitpoly::lp
