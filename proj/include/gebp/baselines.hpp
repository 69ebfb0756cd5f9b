#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gebp/aux_solver.hpp"
#include "gebp/model.hpp"

namespace gebp {

enum class InstanceClassTag { unit_bins, uniform_overtime, general };

InstanceClassTag classify_instance(const Instance& instance);
std::string to_string(InstanceClassTag tag);

struct HeuristicResult {
  Assignment assignment;
  Rational cost{0};
  std::string name;
  InstanceClassTag tag = InstanceClassTag::general;
};

// Greedy in the given job order: each job goes to the machine whose cost
// increases the least (ties to the lowest machine index).
HeuristicResult list_scheduling(const Instance& instance, const std::vector<int>& job_order);
// Natural job order.
HeuristicResult list_scheduling(const Instance& instance);

// Same greedy on jobs sorted by descending size (ties keep original order).
HeuristicResult lpt(const Instance& instance);

// Exact optimum by depth-first enumeration of all machine choices with
// branch-and-bound pruning; the partial cost already contains every fixed
// cost, so it is a valid lower bound.  Requires m^n <= budget, otherwise
// throws BudgetExceeded.  Returns the lexicographically smallest optimal
// assignment.
std::pair<Assignment, Rational> brute_force(const Instance& instance,
                                            long long budget = 10'000'000);

// Exact optimum of a block subproblem by enumerating every job target
// (machine or unassigned) and every split of the sand grains over machines,
// filtered by the load cap and the unassigned-volume guarantee.  Meant as an
// independent oracle for the program-based solver; enumerates the same
// solution space.  Throws BudgetExceeded when the space exceeds the budget.
std::optional<AuxSolution> brute_force_aux(const AuxProblem& problem,
                                           long long budget = 10'000'000);

}  // namespace gebp
