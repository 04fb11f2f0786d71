#pragma once

#include <utility>
#include <vector>

namespace preserver {

// Dense linear program: maximize objective . x over x >= 0 subject to the
// rows. Intended for the restricted flow relaxations built by this library:
// coefficients are small integers and the scale stays modest, so a dense
// two-phase tableau with an anti-cycling fallback is deterministic and
// accurate enough (relative error well below 1e-7 at the sizes used).
struct LinearProgram {
  enum class Relation { kLessEqual, kEqual };
  struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
    Relation relation = Relation::kLessEqual;
    double rhs = 0.0;
  };
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Row> rows;
};

struct LpResult {
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

// Two-phase primal simplex, Dantzig pricing with a Bland fallback after a
// stall. Throws LpInfeasibleError / LpNumericalError.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace preserver
