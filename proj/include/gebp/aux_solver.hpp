#pragma once

#include <optional>
#include <vector>

#include "gebp/model.hpp"
#include "gebp/nfold.hpp"

namespace gebp {

// One block subproblem: assign the block's large jobs and a quantized volume
// of sand (split into dummy jobs of one grain) to the block's machines, with
// a slack budget bounding the total size left unassigned.
struct AuxProblem {
  int block = 1;                     // 1-based block number, informational
  std::vector<MachineSpec> machines;  // the block, descending capacity
  std::vector<Rational> jobs;         // large job sizes
  Rational sand_total{0};             // must be a multiple of sand_grain()
  Rational slack_budget{0};           // must be a multiple of load_cap()
  Epsilon eps{2};

  Rational sand_grain() const;  // eps * (smallest capacity in the block)
  Rational load_cap() const;    // (largest capacity in the block) / eps
  // Checks the grid/multiple invariants and the job size band; throws
  // std::invalid_argument on violation.
  void validate() const;
};

// Distinct sizes occurring in the subproblem (ascending), with multiplicities;
// the sand grain appears as an extra size carrying the dummy count when
// sand_total > 0.
struct SizeCatalog {
  std::vector<Rational> sizes;
  std::vector<long long> counts;

  long long total_count() const;
  int index_of(const Rational& size) const;  // -1 when absent
};

SizeCatalog build_catalog(const AuxProblem& problem);

// Multiset of catalog sizes that fits on one machine.  The set is the same
// for every machine of a block because the load cap is uniform; per-machine
// cost is evaluated on demand.
struct Configuration {
  std::vector<long long> counts;  // per catalog size
  Rational load{0};
};

Rational configuration_cost(const MachineSpec& machine, const Configuration& configuration);

// Every count vector with counts[p] <= catalog count p and load <= cap, in
// lexicographic order (empty configuration first).  Throws BudgetExceeded
// when more than `budget` configurations would be produced.
std::vector<Configuration> enumerate_configurations(const SizeCatalog& catalog,
                                                    const Rational& cap,
                                                    long long budget = 5'000'000);

// The block program over the configuration columns: one brick per machine,
// one equality row per catalog size, and a slack row bounding the total
// unassigned size.  Slack-row coefficients size/grain are rescaled by a
// common denominator so the stored program stays integral even when job
// sizes are not exact grain multiples; `entry_bound_ok` records whether the
// resulting matrix still respects the (1/eps)^{7/eps} entry bound.
struct AuxFormulation {
  SizeCatalog catalog;
  std::vector<Configuration> configurations;
  NfoldProgram program;
  Rational entry_bound{0};
  bool entry_bound_ok = true;
};

AuxFormulation build_program(const AuxProblem& problem, const SizeCatalog& catalog,
                             const std::vector<Configuration>& configurations);

// Assignment decoded from the optimal program solution.
struct AuxSolution {
  std::vector<std::optional<int>> assigned_machine;  // per job; empty = unassigned
  std::vector<Rational> sand_volume;                 // per machine, multiple of the grain
  Rational cost{0};
};

// Exact optimum of the block subproblem, or nullopt when even maximal slack
// cannot absorb the overflow.  Ties among equal-size jobs decode to the
// lowest job index on the lowest machine index.
std::optional<AuxSolution> solve_aux(const AuxProblem& problem,
                                     long long nfold_state_budget = 10'000'000,
                                     long long config_budget = 5'000'000);

}  // namespace gebp
