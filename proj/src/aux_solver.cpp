#include "gebp/aux_solver.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace gebp {

Rational AuxProblem::sand_grain() const {
  if (machines.empty()) throw std::invalid_argument("aux problem without machines");
  return eps.value() * machines.back().capacity;
}

Rational AuxProblem::load_cap() const {
  if (machines.empty()) throw std::invalid_argument("aux problem without machines");
  return machines.front().capacity * eps.reciprocal();
}

void AuxProblem::validate() const {
  if (machines.empty()) throw std::invalid_argument("aux problem without machines");
  for (size_t i = 0; i + 1 < machines.size(); ++i) {
    if (machines[i].capacity < machines[i + 1].capacity) {
      throw std::invalid_argument("aux machines must be sorted by descending capacity");
    }
  }
  if (sand_total.is_negative() || !is_multiple_of(sand_total, sand_grain())) {
    throw std::invalid_argument("sand total must be a nonnegative multiple of the grain");
  }
  if (slack_budget.is_negative() || !is_multiple_of(slack_budget, load_cap())) {
    throw std::invalid_argument("slack budget must be a nonnegative multiple of the load cap");
  }
  const Rational lo = sand_grain();
  const Rational hi = load_cap();
  for (const Rational& p : jobs) {
    if (p <= lo || p > hi) {
      throw std::invalid_argument("aux job size outside the block's band");
    }
  }
}

long long SizeCatalog::total_count() const {
  long long total = 0;
  for (long long c : counts) total += c;
  return total;
}

int SizeCatalog::index_of(const Rational& size) const {
  for (size_t p = 0; p < sizes.size(); ++p) {
    if (sizes[p] == size) return static_cast<int>(p);
  }
  return -1;
}

SizeCatalog build_catalog(const AuxProblem& problem) {
  const Rational grain = problem.sand_grain();
  std::map<Rational, long long> counter;
  if (problem.sand_total.is_positive()) {
    Rational dummies = problem.sand_total / grain;
    if (!dummies.is_integer()) {
      throw std::invalid_argument("sand total is not an integer number of grains");
    }
    counter[grain] = to_int64(dummies.num());
  }
  for (const Rational& p : problem.jobs) ++counter[p];
  SizeCatalog catalog;
  catalog.sizes.reserve(counter.size());
  catalog.counts.reserve(counter.size());
  for (const auto& [size, count] : counter) {
    catalog.sizes.push_back(size);
    catalog.counts.push_back(count);
  }
  return catalog;
}

Rational configuration_cost(const MachineSpec& machine, const Configuration& configuration) {
  return machine_cost(machine, configuration.load);
}

std::vector<Configuration> enumerate_configurations(const SizeCatalog& catalog,
                                                    const Rational& cap, long long budget) {
  std::vector<Configuration> result;
  const int sizes = static_cast<int>(catalog.sizes.size());
  std::vector<long long> counts(sizes, 0);

  // Depth-first over sizes in ascending order; count 0 explored first, so the
  // output is lexicographic with the empty configuration in front.
  auto emit = [&](const Rational& load) {
    if (static_cast<long long>(result.size()) >= budget) {
      throw BudgetExceeded("configuration enumeration budget of " + std::to_string(budget) +
                           " exceeded; use a coarser accuracy or a smaller instance");
    }
    result.push_back(Configuration{counts, load});
  };
  auto walk = [&](auto&& self, int p, const Rational& load) -> void {
    if (p == sizes) {
      emit(load);
      return;
    }
    Rational next = load;
    for (long long k = 0; k <= catalog.counts[p]; ++k) {
      if (next > cap) break;
      counts[p] = k;
      self(self, p + 1, next);
      next += catalog.sizes[p];
    }
    counts[p] = 0;
  };
  walk(walk, 0, Rational(0));
  return result;
}

AuxFormulation build_program(const AuxProblem& problem, const SizeCatalog& catalog,
                             const std::vector<Configuration>& configurations) {
  const Rational grain = problem.sand_grain();
  const int rows = static_cast<int>(catalog.sizes.size());

  // Common rescaling of the slack row: size/grain values (and the budget)
  // share denominator scale so every stored coefficient is an integer.
  mpz_class scale(1);
  std::vector<Rational> ratio(rows);
  for (int p = 0; p < rows; ++p) {
    ratio[p] = catalog.sizes[p] / grain;
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), ratio[p].den().get_mpz_t());
  }
  Rational budget_ratio = problem.slack_budget / grain;
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), budget_ratio.den().get_mpz_t());

  AuxFormulation out;
  out.catalog = catalog;
  out.configurations = configurations;
  NfoldProgram& program = out.program;
  program.demand = catalog.counts;
  program.slack_weight.resize(rows);
  for (int p = 0; p < rows; ++p) {
    Rational weight = ratio[p] * Rational(scale);
    if (!weight.is_integer()) throw InternalError("slack weight failed to scale to an integer");
    program.slack_weight[p] = to_int64(weight.num());
  }
  Rational rhs = budget_ratio * Rational(scale);
  if (!rhs.is_integer()) throw InternalError("slack budget failed to scale to an integer");
  program.slack_rhs = to_int64(rhs.num());
  program.y_bound = catalog.total_count();

  program.bricks.reserve(problem.machines.size());
  for (const MachineSpec& machine : problem.machines) {
    NfoldBrick brick;
    brick.columns.reserve(configurations.size());
    for (const Configuration& configuration : configurations) {
      brick.columns.push_back(
          NfoldColumn{configuration.counts, configuration_cost(machine, configuration)});
    }
    program.bricks.push_back(std::move(brick));
  }
  program.validate();

  out.entry_bound = Rational::pow(problem.eps.reciprocal(), 7 * problem.eps.inverse());
  out.entry_bound_ok = Rational(program.max_entry()) <= out.entry_bound;
  return out;
}

std::optional<AuxSolution> solve_aux(const AuxProblem& problem, long long nfold_state_budget,
                                     long long config_budget) {
  problem.validate();
  SizeCatalog catalog = build_catalog(problem);
  std::vector<Configuration> configurations =
      enumerate_configurations(catalog, problem.load_cap(), config_budget);
  AuxFormulation formulation = build_program(problem, catalog, configurations);
  std::optional<NfoldSolution> solved = solve_exact(formulation.program, nfold_state_budget);
  if (!solved) return std::nullopt;

  const Rational grain = problem.sand_grain();
  const int machine_count = static_cast<int>(problem.machines.size());
  const int dummy_row = problem.sand_total.is_positive() ? catalog.index_of(grain) : -1;

  // Jobs of equal size are matched to configuration counts lowest-index
  // first, machine by machine in block order.
  std::vector<std::vector<int>> jobs_by_size(catalog.sizes.size());
  for (int j = 0; j < static_cast<int>(problem.jobs.size()); ++j) {
    int p = catalog.index_of(problem.jobs[j]);
    if (p < 0) throw InternalError("job size missing from its own catalog");
    jobs_by_size[p].push_back(j);
  }
  std::vector<size_t> cursor(catalog.sizes.size(), 0);

  AuxSolution solution;
  solution.assigned_machine.assign(problem.jobs.size(), std::nullopt);
  solution.sand_volume.assign(machine_count, Rational(0));
  for (int i = 0; i < machine_count; ++i) {
    const Configuration& configuration = formulation.configurations[solved->chosen[i]];
    for (int p = 0; p < static_cast<int>(catalog.sizes.size()); ++p) {
      long long count = configuration.counts[p];
      if (p == dummy_row) {
        // Dummy jobs are sand grains; jobs never share the grain size because
        // the band is open at the bottom.
        solution.sand_volume[i] = Rational(count) * grain;
        continue;
      }
      for (long long k = 0; k < count; ++k) {
        if (cursor[p] >= jobs_by_size[p].size()) {
          throw InternalError("configuration uses more jobs of a size than exist");
        }
        solution.assigned_machine[jobs_by_size[p][cursor[p]++]] = i;
      }
    }
  }
  solution.cost = solved->objective;

  // Re-check the unassigned-volume guarantee the slack row encodes.
  Rational vol_total(0);
  for (const Rational& v : solution.sand_volume) vol_total += v;
  Rational unassigned = problem.sand_total - vol_total;
  for (int j = 0; j < static_cast<int>(problem.jobs.size()); ++j) {
    if (!solution.assigned_machine[j]) unassigned += problem.jobs[j];
  }
  if (vol_total > problem.sand_total || unassigned > problem.slack_budget) {
    throw InternalError("decoded block solution violates the unassigned-volume guarantee");
  }
  return solution;
}

}  // namespace gebp
