#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "gebp/rational.hpp"

namespace gebp {

// Thrown when an enumeration/search exceeds its configured work budget.
// The CLI maps this to exit code 3.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal invariant that the algorithm guarantees is found
// violated (a bug, not an input problem).
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// A machine with fixed activation cost, included capacity, and a linear
// overtime rate beyond that capacity.  Every machine charges its fixed cost
// whether or not it receives load.
struct MachineSpec {
  Rational fixed_cost;     // f > 0
  Rational capacity;       // c > 0
  Rational overtime_rate;  // sigma > 0, with f = c * sigma
};

struct Instance {
  std::vector<MachineSpec> machines;
  std::vector<Rational> jobs;  // sizes >= 0

  int machine_count() const { return static_cast<int>(machines.size()); }
  int job_count() const { return static_cast<int>(jobs.size()); }
};

// Job -> machine map; target[j] indexes instance.machines.
struct Assignment {
  std::vector<int> target;
};

// Accuracy parameter eps = 1/E for an integer E >= 2, so 1/eps and 1/eps^2
// are integers and all grid arithmetic stays exact.
class Epsilon {
 public:
  explicit Epsilon(long inverse);

  long inverse() const { return inverse_; }          // E
  Rational value() const { return Rational(1, inverse_); }  // 1/E
  Rational reciprocal() const { return Rational(inverse_); }

 private:
  long inverse_;
};

// f_i when load <= c_i, otherwise f_i + sigma_i * (load - c_i).
// Negative load is rejected with std::invalid_argument.
Rational machine_cost(const MachineSpec& machine, const Rational& load);

// Total cost of the assignment: every machine pays its fixed cost, loaded
// machines additionally pay overtime.  Out-of-range targets throw
// std::out_of_range; a target list of the wrong length throws
// std::invalid_argument.
Rational solution_cost(const Instance& instance, const Assignment& assignment);

// Per-machine loads induced by an assignment.
std::vector<Rational> machine_loads(const Instance& instance, const Assignment& assignment);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;

  void flag(std::string issue) {
    ok = false;
    issues.push_back(std::move(issue));
  }
};

// Structural checks: positive f, c, sigma with f = c * sigma exactly, and
// nonnegative job sizes.  Returns all violations, not just the first.
ValidationReport validate_instance(const Instance& instance);

// True when every machine has sigma = 1 (hence f = c); capacities may differ.
bool is_uniform_overtime(const Instance& instance);

// True when every machine has sigma = 1 and f = c = 1 (unit bins).
bool is_unit_bins(const Instance& instance);

}  // namespace gebp
