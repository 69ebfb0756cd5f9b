#include "gebp/model.hpp"

namespace gebp {

Epsilon::Epsilon(long inverse) : inverse_(inverse) {
  if (inverse < 2) {
    throw std::invalid_argument("accuracy parameter must be 1/E with integer E >= 2");
  }
}

Rational machine_cost(const MachineSpec& machine, const Rational& load) {
  if (load.is_negative()) throw std::invalid_argument("negative machine load");
  if (load <= machine.capacity) return machine.fixed_cost;
  return machine.fixed_cost + machine.overtime_rate * (load - machine.capacity);
}

std::vector<Rational> machine_loads(const Instance& instance, const Assignment& assignment) {
  if (static_cast<int>(assignment.target.size()) != instance.job_count()) {
    throw std::invalid_argument("assignment length does not match job count");
  }
  std::vector<Rational> loads(instance.machines.size(), Rational(0));
  for (int j = 0; j < instance.job_count(); ++j) {
    int i = assignment.target[j];
    if (i < 0 || i >= instance.machine_count()) {
      throw std::out_of_range("assignment targets machine " + std::to_string(i) +
                              " outside [0," + std::to_string(instance.machine_count()) + ")");
    }
    loads[i] += instance.jobs[j];
  }
  return loads;
}

Rational solution_cost(const Instance& instance, const Assignment& assignment) {
  std::vector<Rational> loads = machine_loads(instance, assignment);
  Rational total(0);
  for (int i = 0; i < instance.machine_count(); ++i) {
    total += machine_cost(instance.machines[i], loads[i]);
  }
  return total;
}

ValidationReport validate_instance(const Instance& instance) {
  ValidationReport report;
  for (int i = 0; i < instance.machine_count(); ++i) {
    const MachineSpec& m = instance.machines[i];
    std::string tag = "machine " + std::to_string(i);
    if (!m.fixed_cost.is_positive()) report.flag(tag + ": fixed cost must be positive");
    if (!m.capacity.is_positive()) report.flag(tag + ": capacity must be positive");
    if (!m.overtime_rate.is_positive()) report.flag(tag + ": overtime rate must be positive");
    if (m.fixed_cost != m.capacity * m.overtime_rate) {
      report.flag(tag + ": fixed cost must equal capacity * overtime rate");
    }
  }
  for (int j = 0; j < instance.job_count(); ++j) {
    if (instance.jobs[j].is_negative()) {
      report.flag("job " + std::to_string(j) + ": size must be nonnegative");
    }
  }
  return report;
}

bool is_uniform_overtime(const Instance& instance) {
  for (const MachineSpec& m : instance.machines) {
    if (m.overtime_rate != Rational(1)) return false;
  }
  return true;
}

bool is_unit_bins(const Instance& instance) {
  for (const MachineSpec& m : instance.machines) {
    if (m.overtime_rate != Rational(1) || m.capacity != Rational(1)) return false;
  }
  return true;
}

}  // namespace gebp
