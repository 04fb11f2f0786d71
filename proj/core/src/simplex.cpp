#include "preserver/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "preserver/errors.hpp"

namespace preserver {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}
  double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_, cols_;
  std::vector<double> data_;
};

struct Program {
  Tableau t;          // constraint rows only
  std::vector<int> basis;
  std::vector<char> is_artificial;  // per column
  int num_cols;       // without rhs
  int rhs;            // rhs column index
  int iterations = 0;
};

void pivot(Program& p, std::vector<double>& cost_row, int row, int col) {
  double piv = p.t.at(row, col);
  for (int c = 0; c <= p.num_cols; ++c) p.t.at(row, c) /= piv;
  for (int r = 0; r < p.t.rows(); ++r) {
    if (r == row) continue;
    double factor = p.t.at(r, col);
    if (std::fabs(factor) < 1e-14) continue;
    for (int c = 0; c <= p.num_cols; ++c) p.t.at(r, c) -= factor * p.t.at(row, c);
  }
  double factor = cost_row[col];
  if (std::fabs(factor) >= 1e-14)
    for (int c = 0; c <= p.num_cols; ++c) cost_row[c] -= factor * p.t.at(row, c);
  p.basis[row] = col;
}

// Runs simplex iterations on the already priced-out cost row. Columns with
// `blocked` set never enter the basis.
void optimize(Program& p, std::vector<double>& cost_row, const std::vector<char>& blocked) {
  const int max_iterations = 50000 + 200 * (p.t.rows() + p.num_cols);
  int stall = 0;
  bool bland = false;
  double last_value = cost_row[p.num_cols];
  while (true) {
    if (++p.iterations > max_iterations)
      throw LpNumericalError("simplex iteration limit exceeded");

    int entering = -1;
    if (bland) {
      for (int c = 0; c < p.num_cols; ++c)
        if (!blocked[c] && cost_row[c] > kCostTol) {
          entering = c;
          break;
        }
    } else {
      double best = kCostTol;
      for (int c = 0; c < p.num_cols; ++c)
        if (!blocked[c] && cost_row[c] > best) {
          best = cost_row[c];
          entering = c;
        }
    }
    if (entering < 0) return;

    int leaving = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < p.t.rows(); ++r) {
      double a = p.t.at(r, entering);
      if (a <= kPivotTol) continue;
      double ratio = p.t.at(r, p.rhs) / a;
      if (leaving < 0 || ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && p.basis[r] < p.basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) throw LpNumericalError("unbounded pivot direction");

    pivot(p, cost_row, leaving, entering);

    // The rhs entry of the cost row carries the negated objective value, so
    // progress means it decreases.
    double value = cost_row[p.num_cols];
    if (value < last_value - 1e-12) {
      stall = 0;
      last_value = value;
    } else if (!bland && ++stall > 100 + 10 * p.t.rows()) {
      bland = true;
    }
  }
}

// cost_row = c - z over the current basis; last entry carries the negated
// objective value, kept consistent by pivoting.
std::vector<double> price_out(const Program& p, const std::vector<double>& costs) {
  std::vector<double> row(p.num_cols + 1, 0.0);
  for (int c = 0; c < p.num_cols; ++c) row[c] = costs[c];
  row[p.num_cols] = 0.0;
  for (int r = 0; r < p.t.rows(); ++r) {
    double cb = costs[p.basis[r]];
    if (cb == 0.0) continue;
    for (int c = 0; c <= p.num_cols; ++c) row[c] -= cb * p.t.at(r, c);
  }
  return row;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = lp.num_vars;

  // Normalize to rhs >= 0; count extra columns.
  std::vector<double> rhs(m);
  std::vector<int> sign(m, 1);
  int num_slack = 0, num_art = 0;
  std::vector<int> slack_of(m, -1), art_of(m, -1);
  for (int r = 0; r < m; ++r) {
    rhs[r] = lp.rows[r].rhs;
    if (rhs[r] < 0) {
      sign[r] = -1;
      rhs[r] = -rhs[r];
    }
    bool less_equal = lp.rows[r].relation == LinearProgram::Relation::kLessEqual;
    if (less_equal && sign[r] == 1) {
      slack_of[r] = num_slack++;
    } else if (less_equal && sign[r] == -1) {
      slack_of[r] = num_slack++;  // becomes a surplus column
      art_of[r] = num_art++;
    } else {
      art_of[r] = num_art++;
    }
  }

  Program p{Tableau(m, n + num_slack + num_art + 1), {}, {}, n + num_slack + num_art,
            n + num_slack + num_art, 0};
  p.basis.assign(m, -1);
  p.is_artificial.assign(p.num_cols, 0);

  for (int r = 0; r < m; ++r) {
    for (auto [var, coeff] : lp.rows[r].coeffs) {
      if (var < 0 || var >= n) throw DimensionMismatchError("LP variable out of range");
      p.t.at(r, var) += sign[r] * coeff;
    }
    p.t.at(r, p.rhs) = rhs[r];
    if (slack_of[r] >= 0) p.t.at(r, n + slack_of[r]) = sign[r] == 1 ? 1.0 : -1.0;
    if (art_of[r] >= 0) {
      int col = n + num_slack + art_of[r];
      p.t.at(r, col) = 1.0;
      p.is_artificial[col] = 1;
      p.basis[r] = col;
    } else {
      p.basis[r] = n + slack_of[r];
    }
  }

  std::vector<char> no_block(p.num_cols, 0);
  if (num_art > 0) {
    std::vector<double> phase1_costs(p.num_cols, 0.0);
    for (int c = 0; c < p.num_cols; ++c)
      if (p.is_artificial[c]) phase1_costs[c] = -1.0;
    std::vector<double> cost_row = price_out(p, phase1_costs);
    optimize(p, cost_row, no_block);

    double infeasibility = 0.0;
    for (int r = 0; r < m; ++r)
      if (p.is_artificial[p.basis[r]]) infeasibility += p.t.at(r, p.rhs);
    if (infeasibility > kFeasTol)
      throw LpInfeasibleError("no feasible point (residual " +
                              std::to_string(infeasibility) + ")");

    // Drive leftover artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (!p.is_artificial[p.basis[r]]) continue;
      int col = -1;
      for (int c = 0; c < p.num_cols; ++c)
        if (!p.is_artificial[c] && std::fabs(p.t.at(r, c)) > kPivotTol) {
          col = c;
          break;
        }
      if (col >= 0) pivot(p, cost_row, r, col);
    }
  }

  std::vector<double> phase2_costs(p.num_cols, 0.0);
  for (int c = 0; c < n; ++c)
    phase2_costs[c] = c < static_cast<int>(lp.objective.size()) ? lp.objective[c] : 0.0;
  std::vector<double> cost_row = price_out(p, phase2_costs);
  optimize(p, cost_row, p.is_artificial);

  LpResult result;
  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (p.basis[r] < n) result.x[p.basis[r]] = p.t.at(r, p.rhs);
  result.objective = 0.0;
  for (int c = 0; c < n && c < static_cast<int>(lp.objective.size()); ++c)
    result.objective += lp.objective[c] * result.x[c];
  result.iterations = p.iterations;
  return result;
}

}  // namespace preserver
