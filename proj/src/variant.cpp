#include "gebp/variant.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace gebp {

ValidationReport validate_typed(const TypedInstance& instance) {
  Instance shim;
  shim.machines = instance.types;
  shim.jobs = instance.jobs;
  ValidationReport report = validate_instance(shim);
  if (instance.types.empty() && !instance.jobs.empty()) {
    report.flag("jobs present but no machine types");
  }
  return report;
}

std::pair<TypedInstance, VariantScale> normalize_variant(const TypedInstance& instance) {
  if (instance.types.empty()) return {instance, VariantScale{}};
  VariantScale scale;
  scale.fixed_scale = instance.types.front().fixed_cost;
  for (const MachineSpec& type : instance.types) {
    scale.fixed_scale = std::max(scale.fixed_scale, type.fixed_cost);
  }
  TypedInstance out;
  out.types.reserve(instance.types.size());
  for (const MachineSpec& type : instance.types) {
    out.types.push_back(MachineSpec{
        .fixed_cost = type.fixed_cost / scale.fixed_scale,
        .capacity = type.capacity,
        .overtime_rate = type.overtime_rate / scale.fixed_scale,
    });
  }
  scale.sigma_scale = out.types.front().overtime_rate;
  for (const MachineSpec& type : out.types) {
    scale.sigma_scale = std::min(scale.sigma_scale, type.overtime_rate);
  }
  for (MachineSpec& type : out.types) {
    type.capacity *= scale.sigma_scale;
    type.overtime_rate /= scale.sigma_scale;
  }
  out.jobs.reserve(instance.jobs.size());
  for (const Rational& p : instance.jobs) out.jobs.push_back(p * scale.sigma_scale);
  return {std::move(out), scale};
}

TypedInstance apply_variant_inverse(const TypedInstance& instance, const VariantScale& scale) {
  TypedInstance out;
  out.types.reserve(instance.types.size());
  for (const MachineSpec& type : instance.types) {
    out.types.push_back(MachineSpec{
        .fixed_cost = type.fixed_cost * scale.fixed_scale,
        .capacity = type.capacity / scale.sigma_scale,
        .overtime_rate = type.overtime_rate * scale.sigma_scale * scale.fixed_scale,
    });
  }
  out.jobs.reserve(instance.jobs.size());
  for (const Rational& p : instance.jobs) out.jobs.push_back(p / scale.sigma_scale);
  return out;
}

namespace {

Rational max_capacity(const std::vector<MachineSpec>& types) {
  if (types.empty()) throw std::invalid_argument("no machine types");
  Rational best = types.front().capacity;
  for (const MachineSpec& type : types) best = std::max(best, type.capacity);
  return best;
}

}  // namespace

DedicationResult dedicate_huge(const TypedInstance& instance, const Epsilon& eps) {
  DedicationResult result;
  if (instance.jobs.empty()) return result;
  const Rational bar = max_capacity(instance.types) * eps.reciprocal();
  for (int j = 0; j < instance.job_count(); ++j) {
    const Rational& p = instance.jobs[j];
    if (p <= bar) {
      result.residual.push_back(j);
      continue;
    }
    int best_type = 0;
    Rational best_cost = machine_cost(instance.types[0], p);
    for (int i = 1; i < instance.type_count(); ++i) {
      Rational cost = machine_cost(instance.types[i], p);
      if (cost < best_cost) {
        best_cost = cost;
        best_type = i;
      }
    }
    result.dedicated.push_back(DedicatedMachine{j, best_type, best_cost});
  }
  return result;
}

BinCostFunction::BinCostFunction(std::vector<MachineSpec> types, const Epsilon& eps)
    : types_(std::move(types)), scale_(max_capacity(types_) * eps.reciprocal()) {}

Rational BinCostFunction::evaluate(const Rational& x) const {
  if (x.is_negative() || x > Rational(1)) {
    throw std::invalid_argument("bin utilization outside [0,1]");
  }
  const Rational load = x * scale_;
  Rational best = machine_cost(types_[0], load);
  for (size_t i = 1; i < types_.size(); ++i) {
    best = std::min(best, machine_cost(types_[i], load));
  }
  return best;
}

std::optional<Rational> BinCostFunction::inverse(const Rational& y) const {
  std::optional<Rational> best;
  for (const MachineSpec& type : types_) {
    std::optional<Rational> x;
    if (machine_cost(type, scale_) <= y) {
      x = Rational(1);
    } else if (y >= type.fixed_cost) {
      // Solve f + sigma*(x*scale - c) = y on the overtime branch.
      x = (type.capacity + (y - type.fixed_cost) / type.overtime_rate) / scale_;
    }
    if (x && (!best || *x > *best)) best = x;
  }
  return best;
}

int BinCostFunction::best_type(const Rational& x) const {
  const Rational load = x * scale_;
  int best = 0;
  Rational best_cost = machine_cost(types_[0], load);
  for (size_t i = 1; i < types_.size(); ++i) {
    Rational cost = machine_cost(types_[i], load);
    if (cost < best_cost) {
      best_cost = cost;
      best = static_cast<int>(i);
    }
  }
  return best;
}

Rational pi_eval(const std::vector<MachineSpec>& types, const Epsilon& eps, const Rational& x) {
  return BinCostFunction(types, eps).evaluate(x);
}

std::optional<Rational> pi_inverse(const std::vector<MachineSpec>& types, const Epsilon& eps,
                                   const Rational& y) {
  return BinCostFunction(types, eps).inverse(y);
}

std::vector<std::vector<int>> split_machine_load(const MachineSpec& type,
                                                 const std::vector<Rational>& sizes,
                                                 const Epsilon& eps) {
  const Rational cap = type.capacity * eps.reciprocal();
  std::vector<std::vector<int>> groups;
  std::vector<int> rest;
  for (int j = 0; j < static_cast<int>(sizes.size()); ++j) {
    if (sizes[j] >= cap) {
      groups.push_back({j});
    } else {
      rest.push_back(j);
    }
  }
  // Next-fit over the remaining jobs in input order.
  std::vector<int> open;
  Rational load(0);
  for (int j : rest) {
    if (!open.empty() && load + sizes[j] > cap) {
      groups.push_back(std::move(open));
      open.clear();
      load = Rational(0);
    }
    open.push_back(j);
    load += sizes[j];
  }
  if (!open.empty()) groups.push_back(std::move(open));
  return groups;
}

std::vector<std::vector<int>> solve_bpuc(const BpucInstance& instance, BpucMode mode,
                                         long long budget) {
  const int n = static_cast<int>(instance.items.size());
  for (const Rational& s : instance.items) {
    if (!s.is_positive() || s > Rational(1)) {
      throw std::invalid_argument("bin packing item outside (0,1]");
    }
  }
  if (n == 0) return {};

  if (mode == BpucMode::greedy) {
    std::vector<std::vector<int>> bins;
    std::vector<Rational> loads;
    for (int j = 0; j < n; ++j) {
      const Rational& s = instance.items[j];
      int best = -1;  // -1 = open a new bin
      Rational best_marginal = instance.pi.evaluate(s);
      for (size_t b = 0; b < bins.size(); ++b) {
        if (loads[b] + s > Rational(1)) continue;
        Rational marginal =
            instance.pi.evaluate(loads[b] + s) - instance.pi.evaluate(loads[b]);
        // Strict comparison: earlier bins win ties, a new bin only when
        // strictly cheaper than every existing one.
        if (best == -1 ? marginal <= best_marginal : marginal < best_marginal) {
          best = static_cast<int>(b);
          best_marginal = marginal;
        }
      }
      if (best < 0) {
        bins.push_back({j});
        loads.push_back(s);
      } else {
        bins[best].push_back(j);
        loads[best] += s;
      }
    }
    return bins;
  }

  // Exact mode: dynamic program over item subsets; dp[mask] = cheapest
  // partition of the items in mask into feasible bins.
  mpz_class work;
  mpz_ui_pow_ui(work.get_mpz_t(), 3, static_cast<unsigned long>(n));
  if (work > static_cast<long>(budget)) {
    throw BudgetExceeded("bin packing subset space 3^" + std::to_string(n) +
                         " exceeds budget " + std::to_string(budget));
  }
  const int full = (1 << n) - 1;
  std::vector<Rational> subset_sum(full + 1, Rational(0));
  for (int mask = 1; mask <= full; ++mask) {
    int low = mask & -mask;
    int j = std::countr_zero(static_cast<unsigned>(mask));
    subset_sum[mask] = subset_sum[mask ^ low] + instance.items[j];
  }
  std::vector<std::optional<Rational>> dp(full + 1);
  std::vector<int> pick(full + 1, 0);
  dp[0] = Rational(0);
  for (int mask = 1; mask <= full; ++mask) {
    int anchor = mask & -mask;  // lowest item always in the next bin
    for (int sub = mask; sub != 0; sub = (sub - 1) & mask) {
      if (!(sub & anchor)) continue;
      if (subset_sum[sub] > Rational(1)) continue;
      if (!dp[mask ^ sub]) continue;
      Rational cost = *dp[mask ^ sub] + instance.pi.evaluate(subset_sum[sub]);
      if (!dp[mask] || cost < *dp[mask]) {
        dp[mask] = cost;
        pick[mask] = sub;
      }
    }
    if (!dp[mask]) {
      throw InternalError("bin packing has no feasible partition; item > 1 slipped through");
    }
  }
  std::vector<std::vector<int>> bins;
  for (int mask = full; mask != 0; mask ^= pick[mask]) {
    std::vector<int> bin;
    for (int j = 0; j < n; ++j) {
      if (pick[mask] & (1 << j)) bin.push_back(j);
    }
    bins.push_back(std::move(bin));
  }
  std::reverse(bins.begin(), bins.end());
  return bins;
}

Rational typed_solution_cost(const TypedInstance& instance, const TypedSolution& solution) {
  Rational total(0);
  for (const OpenedMachine& machine : solution.machines) {
    if (machine.type < 0 || machine.type >= instance.type_count()) {
      throw std::out_of_range("opened machine references unknown type");
    }
    Rational load(0);
    for (int j : machine.jobs) load += instance.jobs.at(j);
    total += machine_cost(instance.types[machine.type], load);
  }
  return total;
}

TypedSolution prc_solve(const TypedInstance& instance, const Epsilon& eps, BpucMode mode,
                        long long budget) {
  ValidationReport report = validate_typed(instance);
  if (!report.ok) throw std::invalid_argument("invalid typed instance: " + report.issues.front());

  TypedSolution solution;
  if (instance.jobs.empty()) return solution;  // no machines opened, cost 0

  auto [normalized, scale] = normalize_variant(instance);
  DedicationResult dedication = dedicate_huge(normalized, eps);

  BinCostFunction pi(normalized.types, eps);
  BpucInstance bpuc{{}, pi};
  std::vector<int> zero_jobs;
  std::vector<int> packed_jobs;  // bpuc item index -> job index
  for (int j : dedication.residual) {
    if (normalized.jobs[j].is_zero()) {
      zero_jobs.push_back(j);
    } else {
      bpuc.items.push_back(normalized.jobs[j] / pi.scale());
      packed_jobs.push_back(j);
    }
  }

  Rational normalized_cost(0);
  for (const DedicatedMachine& d : dedication.dedicated) {
    solution.machines.push_back(OpenedMachine{d.type, {d.job}, true});
    normalized_cost += d.cost;
  }
  std::vector<std::vector<int>> bins = solve_bpuc(bpuc, mode, budget);
  for (const std::vector<int>& bin : bins) {
    Rational load_fraction(0);
    OpenedMachine machine;
    for (int item : bin) {
      load_fraction += bpuc.items[item];
      machine.jobs.push_back(packed_jobs[item]);
    }
    machine.type = pi.best_type(load_fraction);
    normalized_cost += pi.evaluate(load_fraction);
    solution.machines.push_back(std::move(machine));
  }

  // Zero-size jobs ride along at no cost: on the first opened machine, or on
  // one fresh machine of the cheapest type when nothing else is open.
  if (!zero_jobs.empty()) {
    if (solution.machines.empty()) {
      int cheapest = 0;
      for (int i = 1; i < normalized.type_count(); ++i) {
        if (normalized.types[i].fixed_cost < normalized.types[cheapest].fixed_cost) cheapest = i;
      }
      solution.machines.push_back(OpenedMachine{cheapest, {}, false});
      normalized_cost += normalized.types[cheapest].fixed_cost;
    }
    for (int j : zero_jobs) solution.machines.front().jobs.push_back(j);
  }

  // The reported cost is exact in original units; re-derive it from the
  // original instance and check it against the scaled objective.
  solution.cost = normalized_cost * scale.fixed_scale;
  if (typed_solution_cost(instance, solution) != solution.cost) {
    throw InternalError("variant cost accounting does not match its own solution");
  }
  return solution;
}

}  // namespace gebp
