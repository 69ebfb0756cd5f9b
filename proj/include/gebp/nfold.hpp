#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "gebp/model.hpp"

namespace gebp {

// Block-structured integer program in the shape produced by the per-block
// assignment formulation:
//
//   minimize    sum_b cost(column chosen in brick b)
//   subject to  sum_b eq[p](chosen_b) + y_p = demand[p]          (per row p)
//               sum_p slack_weight[p] * y_p + slack_var = slack_rhs
//               exactly one column per brick; y_p in [0, y_bound];
//               slack_var >= 0; all integers.
//
// All matrix data is required to be nonnegative, which the exact solver
// exploits for pruning.
struct NfoldColumn {
  std::vector<long long> eq;  // contribution to each equality row
  Rational cost;
};

struct NfoldBrick {
  std::vector<NfoldColumn> columns;
};

struct NfoldProgram {
  std::vector<NfoldBrick> bricks;
  std::vector<long long> demand;        // right-hand side of the equality rows
  std::vector<long long> slack_weight;  // per-row weight of y in the slack row
  long long slack_rhs = 0;
  long long y_bound = 0;

  int row_count() const { return static_cast<int>(demand.size()); }
  // Structural checks (sizes line up, everything nonnegative); throws
  // std::invalid_argument on violation.
  void validate() const;
  // Largest entry of the constraint matrix (column entries, slack weights,
  // and the implicit 1s of the y block).
  long long max_entry() const;
  // Plain-text dump: header, demand/slack rows, then per brick one line per
  // column with cost and equality-row entries.  Meant for eyeballing and
  // external re-verification, parse-stable.
  void dump(std::ostream& os) const;
};

struct NfoldSolution {
  std::vector<int> chosen;     // column index per brick
  std::vector<long long> y;    // unassigned count per equality row
  long long slack_var = 0;     // slack_rhs minus the used slack weight
  Rational objective{0};
  bool exact = true;
};

// Checks Eqs. (one-column-per-brick, equality rows, slack row, bounds)
// against the program; returns false with no side effects on violation.
bool verify_solution(const NfoldProgram& program, const NfoldSolution& solution);

// Exact optimum by dynamic programming over bricks; the state is the vector
// of accumulated equality-row contributions, dominated states (same vector,
// higher cost) are dropped.  Returns nullopt when infeasible.  Throws
// BudgetExceeded when more than state_budget states would be expanded.
std::optional<NfoldSolution> solve_exact(const NfoldProgram& program,
                                         long long state_budget = 10'000'000);

// Local search from a feasible starting point: first-improvement scan over
// single-brick column changes, then over column changes in pairs of bricks,
// until neither finds an improving feasible move.  Result is flagged
// non-exact.  Throws std::invalid_argument when `initial` is infeasible.
NfoldSolution solve_augmentation(const NfoldProgram& program, const NfoldSolution& initial);

}  // namespace gebp
