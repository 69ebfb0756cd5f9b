#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gebp/model.hpp"

namespace gebp {

// Machine-type variant: every type is available in unlimited copies, a
// machine costs only when opened, and the solver decides how many of each
// type to open.
struct TypedInstance {
  std::vector<MachineSpec> types;
  std::vector<Rational> jobs;

  int type_count() const { return static_cast<int>(types.size()); }
  int job_count() const { return static_cast<int>(jobs.size()); }
};

ValidationReport validate_typed(const TypedInstance& instance);

// Two-stage cost normalization: divide fixed costs and rates by the maximum
// fixed cost, then rescale rates to min 1 (capacities and jobs pick up the
// rate factor).  Solution costs scale exactly by 1/fixed_scale.
struct VariantScale {
  Rational fixed_scale{1};
  Rational sigma_scale{1};
};

std::pair<TypedInstance, VariantScale> normalize_variant(const TypedInstance& instance);
TypedInstance apply_variant_inverse(const TypedInstance& instance, const VariantScale& scale);

// Jobs too big for the reduction get a private machine of the cheapest type.
struct DedicatedMachine {
  int job = 0;
  int type = 0;
  Rational cost{0};
};

struct DedicationResult {
  std::vector<DedicatedMachine> dedicated;
  std::vector<int> residual;  // job indices that continue into the reduction
};

// Removes every job with size > (max capacity)/eps and charges it the
// cheapest single-machine cost over all types (ties to the lowest type).
DedicationResult dedicate_huge(const TypedInstance& instance, const Epsilon& eps);

// Cost of one bin as a function of its utilization x in [0,1]: the cheapest
// way any type hosts a load of x * (max capacity)/eps.
class BinCostFunction {
 public:
  BinCostFunction(std::vector<MachineSpec> types, const Epsilon& eps);

  const Rational& scale() const { return scale_; }  // (max capacity)/eps
  // pi(x); x outside [0,1] throws std::invalid_argument.
  Rational evaluate(const Rational& x) const;
  // Largest x in [0,1] with pi(x) <= y, solved per type in closed form;
  // nullopt when y is below every fixed cost.
  std::optional<Rational> inverse(const Rational& y) const;
  // Type realizing pi(x), lowest index on ties.
  int best_type(const Rational& x) const;

 private:
  std::vector<MachineSpec> types_;
  Rational scale_;
};

Rational pi_eval(const std::vector<MachineSpec>& types, const Epsilon& eps, const Rational& x);
std::optional<Rational> pi_inverse(const std::vector<MachineSpec>& types, const Epsilon& eps,
                                   const Rational& y);

// Restructures one machine's job set: jobs of size >= c/eps get private
// machines, the rest go next-fit (input order) into groups of load <= c/eps.
// Returned groups partition the input indices; dedicated singletons first.
std::vector<std::vector<int>> split_machine_load(const MachineSpec& type,
                                                 const std::vector<Rational>& sizes,
                                                 const Epsilon& eps);

// Bin packing with bin-utilization cost: partition items (sizes in (0,1])
// into bins of total size <= 1 minimizing the summed pi of the bin loads.
struct BpucInstance {
  std::vector<Rational> items;
  BinCostFunction pi;
};

enum class BpucMode { exact, greedy };

// exact: optimal set partition by subset dynamic programming (3^n work,
// budget-checked).  greedy: items in order, each to the bin (existing or
// new) with the smallest marginal pi cost, existing bins preferred on ties.
std::vector<std::vector<int>> solve_bpuc(const BpucInstance& instance, BpucMode mode,
                                         long long budget = 10'000'000);

struct OpenedMachine {
  int type = 0;
  std::vector<int> jobs;  // original job indices
  bool dedicated = false;
};

struct TypedSolution {
  std::vector<OpenedMachine> machines;
  Rational cost{0};
};

// Recomputes the cost of a typed solution from scratch (opened machines
// only); used to cross-check reported costs.
Rational typed_solution_cost(const TypedInstance& instance, const TypedSolution& solution);

// End-to-end variant solver: normalize, dedicate oversized jobs, reduce the
// rest to the bin-packing form, solve it, and map bins back to the cheapest
// machine types in original units.
TypedSolution prc_solve(const TypedInstance& instance, const Epsilon& eps, BpucMode mode,
                        long long budget = 10'000'000);

}  // namespace gebp
