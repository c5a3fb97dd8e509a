#include "graphlp/simplex.hpp"

#include <stdexcept>

namespace graphlp {

namespace {

struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // variable columns, rhs stored separately
  std::vector<RationalVector> a;
  RationalVector rhs;
  std::vector<std::size_t> basis;
  RationalVector cost_row;  // reduced costs c_j - z_j for a maximization
  Rational value = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = 0; j < cols; ++j) {
      if (!a[r][j].is_zero()) a[r][j] *= inv;
    }
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      }
      rhs[i] -= f * rhs[r];
    }
    if (!cost_row[c].is_zero()) {
      const Rational f = cost_row[c];
      for (std::size_t j = 0; j < cols; ++j) {
        if (!a[r][j].is_zero()) cost_row[j] -= f * a[r][j];
      }
      value += f * rhs[r];
    }
    basis[r] = c;
  }

  void set_objective(const RationalVector& c) {
    cost_row = c;
    value = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      const Rational& cb = c[basis[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!a[i][j].is_zero()) cost_row[j] -= cb * a[i][j];
      }
      value += cb * rhs[i];
    }
  }

  // Returns false when unbounded.  `allowed` masks columns that may enter.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (allowed[j] && cost_row[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return true;
      std::size_t leave = rows;
      Rational best;
      for (std::size_t i = 0; i < rows; ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = rhs[i] / a[i][enter];
        if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  if (lp.objective.size() != n) throw std::invalid_argument("solve_lp: objective dimension mismatch");
  std::size_t slack_count = 0;
  std::size_t art_count = 0;
  for (const auto& con : lp.constraints) {
    if (con.coeffs.size() != n) throw std::invalid_argument("solve_lp: constraint dimension mismatch");
    const bool flip = con.rhs < 0;
    Relation rel = con.relation;
    if (flip && rel == Relation::LessEq) rel = Relation::GreaterEq;
    else if (flip && rel == Relation::GreaterEq) rel = Relation::LessEq;
    if (rel != Relation::Equal) ++slack_count;
    if (rel != Relation::LessEq) ++art_count;
  }

  Tableau t;
  t.rows = lp.constraints.size();
  t.cols = n + slack_count + art_count;
  t.a.assign(t.rows, RationalVector(t.cols));
  t.rhs.assign(t.rows, 0);
  t.basis.assign(t.rows, 0);

  std::size_t next_slack = n;
  std::size_t next_art = n + slack_count;
  for (std::size_t i = 0; i < t.rows; ++i) {
    const auto& con = lp.constraints[i];
    const bool flip = con.rhs < 0;
    Relation rel = con.relation;
    if (flip && rel == Relation::LessEq) rel = Relation::GreaterEq;
    else if (flip && rel == Relation::GreaterEq) rel = Relation::LessEq;
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = flip ? -con.coeffs[j] : con.coeffs[j];
    t.rhs[i] = flip ? -con.rhs : con.rhs;
    if (rel == Relation::LessEq) {
      t.a[i][next_slack] = 1;
      t.basis[i] = next_slack++;
    } else if (rel == Relation::GreaterEq) {
      t.a[i][next_slack++] = -1;
      t.a[i][next_art] = 1;
      t.basis[i] = next_art++;
    } else {
      t.a[i][next_art] = 1;
      t.basis[i] = next_art++;
    }
  }

  const std::size_t first_art = n + slack_count;
  std::vector<bool> allowed(t.cols, true);

  if (art_count > 0) {
    RationalVector phase1(t.cols, 0);
    for (std::size_t j = first_art; j < t.cols; ++j) phase1[j] = -1;
    t.set_objective(phase1);
    t.optimize(allowed);
    if (t.value < 0) return LpResult{LpStatus::Infeasible, {}, 0};
    // Drive remaining (zero-valued) artificials out of the basis.
    for (std::size_t i = 0; i < t.rows;) {
      if (t.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t col = first_art;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (!t.a[i][j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col < first_art) {
        t.pivot(i, col);
        ++i;
      } else {
        // Redundant row.
        t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
        t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        --t.rows;
      }
    }
    for (std::size_t j = first_art; j < t.cols; ++j) allowed[j] = false;
  }

  RationalVector phase2(t.cols, 0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  t.set_objective(phase2);
  if (!t.optimize(allowed)) return LpResult{LpStatus::Unbounded, {}, 0};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0);
  for (std::size_t i = 0; i < t.rows; ++i) {
    if (t.basis[i] < n) res.x[t.basis[i]] = t.rhs[i];
  }
  res.objective = dot(lp.objective, res.x);
  return res;
}

LpResult solve_lexicographic(LinearProgram lp, const std::vector<RationalVector>& objectives) {
  LpResult res;
  for (const auto& obj : objectives) {
    lp.objective = obj;
    res = solve_lp(lp);
    if (res.status != LpStatus::Optimal) return res;
    lp.constraints.push_back(LinearConstraint{obj, Relation::Equal, res.objective});
  }
  return res;
}

}  // namespace graphlp
