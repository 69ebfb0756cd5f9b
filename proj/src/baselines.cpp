#include "gebp/baselines.hpp"

#include <algorithm>
#include <numeric>

namespace gebp {

InstanceClassTag classify_instance(const Instance& instance) {
  if (is_unit_bins(instance)) return InstanceClassTag::unit_bins;
  if (is_uniform_overtime(instance)) return InstanceClassTag::uniform_overtime;
  return InstanceClassTag::general;
}

std::string to_string(InstanceClassTag tag) {
  switch (tag) {
    case InstanceClassTag::unit_bins:
      return "ebp";
    case InstanceClassTag::uniform_overtime:
      return "ubs";
    case InstanceClassTag::general:
      return "general";
  }
  return "general";
}

HeuristicResult list_scheduling(const Instance& instance, const std::vector<int>& job_order) {
  if (instance.machines.empty() && !instance.jobs.empty()) {
    throw std::invalid_argument("cannot schedule jobs without machines");
  }
  if (job_order.size() != instance.jobs.size()) {
    throw std::invalid_argument("job order must be a permutation of all jobs");
  }
  HeuristicResult result;
  result.name = "greedy";
  result.tag = classify_instance(instance);
  result.assignment.target.assign(instance.jobs.size(), -1);
  std::vector<Rational> loads(instance.machines.size(), Rational(0));
  std::vector<Rational> costs(instance.machines.size());
  for (int i = 0; i < instance.machine_count(); ++i) {
    costs[i] = instance.machines[i].fixed_cost;
  }
  for (int j : job_order) {
    int best = -1;
    Rational best_increase(0);
    for (int i = 0; i < instance.machine_count(); ++i) {
      Rational increase = machine_cost(instance.machines[i], loads[i] + instance.jobs[j]) - costs[i];
      if (best < 0 || increase < best_increase) {
        best = i;
        best_increase = increase;
      }
    }
    result.assignment.target[j] = best;
    loads[best] += instance.jobs[j];
    costs[best] += best_increase;
  }
  result.cost = solution_cost(instance, result.assignment);
  return result;
}

HeuristicResult list_scheduling(const Instance& instance) {
  std::vector<int> order(instance.jobs.size());
  std::iota(order.begin(), order.end(), 0);
  return list_scheduling(instance, order);
}

HeuristicResult lpt(const Instance& instance) {
  std::vector<int> order(instance.jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return instance.jobs[a] > instance.jobs[b]; });
  HeuristicResult result = list_scheduling(instance, order);
  result.name = "lpt";
  return result;
}

std::pair<Assignment, Rational> brute_force(const Instance& instance, long long budget) {
  const int m = instance.machine_count();
  const int n = instance.job_count();
  if (n > 0 && m == 0) throw std::invalid_argument("cannot schedule jobs without machines");

  mpz_class space;
  mpz_ui_pow_ui(space.get_mpz_t(), static_cast<unsigned long>(std::max(m, 1)),
                static_cast<unsigned long>(n));
  if (space > static_cast<long>(budget)) {
    throw BudgetExceeded("brute force space " + space.get_str() + " exceeds budget " +
                         std::to_string(budget));
  }

  Rational fixed_total(0);
  for (const MachineSpec& machine : instance.machines) fixed_total += machine.fixed_cost;

  Assignment best;
  best.target.assign(n, 0);
  std::optional<Rational> best_cost;
  Assignment current;
  current.target.assign(n, -1);
  std::vector<Rational> loads(m, Rational(0));

  // Depth-first in lexicographic order; strict improvement keeps the first
  // (smallest) optimal assignment.  `partial` counts every fixed cost up
  // front, so it never decreases as jobs are added.
  auto walk = [&](auto&& self, int j, const Rational& partial) -> void {
    if (best_cost && partial >= *best_cost) return;
    if (j == n) {
      best_cost = partial;
      best = current;
      return;
    }
    for (int i = 0; i < m; ++i) {
      Rational before = machine_cost(instance.machines[i], loads[i]);
      loads[i] += instance.jobs[j];
      Rational after = machine_cost(instance.machines[i], loads[i]);
      current.target[j] = i;
      self(self, j + 1, partial + after - before);
      loads[i] -= instance.jobs[j];
      current.target[j] = -1;
    }
  };
  walk(walk, 0, fixed_total);
  return {best, *best_cost};
}

std::optional<AuxSolution> brute_force_aux(const AuxProblem& problem, long long budget) {
  problem.validate();
  const int m = static_cast<int>(problem.machines.size());
  const int n = static_cast<int>(problem.jobs.size());
  const Rational grain = problem.sand_grain();
  const Rational cap = problem.load_cap();
  const long long grains = to_int64((problem.sand_total / grain).num());

  mpz_class space;
  mpz_ui_pow_ui(space.get_mpz_t(), static_cast<unsigned long>(m + 1),
                static_cast<unsigned long>(n));
  mpz_class sand_space;
  mpz_ui_pow_ui(sand_space.get_mpz_t(), static_cast<unsigned long>(grains + 1),
                static_cast<unsigned long>(m));
  space *= sand_space;
  if (space > static_cast<long>(budget)) {
    throw BudgetExceeded("aux brute force space " + space.get_str() + " exceeds budget " +
                         std::to_string(budget));
  }

  std::vector<int> target(n, -1);       // -1 = unassigned
  std::vector<long long> dummies(m, 0);  // sand grains per machine
  std::optional<AuxSolution> best;

  auto evaluate = [&]() {
    std::vector<Rational> loads(m, Rational(0));
    long long used_grains = 0;
    for (int i = 0; i < m; ++i) {
      loads[i] = Rational(dummies[i]) * grain;
      used_grains += dummies[i];
    }
    Rational unassigned = Rational(grains - used_grains) * grain;
    for (int j = 0; j < n; ++j) {
      if (target[j] < 0) {
        unassigned += problem.jobs[j];
      } else {
        loads[target[j]] += problem.jobs[j];
      }
    }
    if (unassigned > problem.slack_budget) return;
    Rational cost(0);
    for (int i = 0; i < m; ++i) {
      if (loads[i] > cap) return;
      cost += machine_cost(problem.machines[i], loads[i]);
    }
    if (best && best->cost <= cost) return;
    AuxSolution solution;
    solution.assigned_machine.assign(n, std::nullopt);
    for (int j = 0; j < n; ++j) {
      if (target[j] >= 0) solution.assigned_machine[j] = target[j];
    }
    solution.sand_volume.resize(m);
    for (int i = 0; i < m; ++i) solution.sand_volume[i] = Rational(dummies[i]) * grain;
    solution.cost = cost;
    best = std::move(solution);
  };

  auto walk_sand = [&](auto&& self, int i, long long left) -> void {
    if (i == m) {
      evaluate();
      return;
    }
    for (long long k = 0; k <= left; ++k) {
      dummies[i] = k;
      self(self, i + 1, left - k);
    }
    dummies[i] = 0;
  };
  auto walk_jobs = [&](auto&& self, int j) -> void {
    if (j == n) {
      walk_sand(walk_sand, 0, grains);
      return;
    }
    for (int t = -1; t < m; ++t) {
      target[j] = t;
      self(self, j + 1);
    }
    target[j] = -1;
  };
  walk_jobs(walk_jobs, 0);
  return best;
}

}  // namespace gebp
