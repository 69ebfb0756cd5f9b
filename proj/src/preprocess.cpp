#include "gebp/preprocess.hpp"

#include <algorithm>
#include <numeric>

namespace gebp {

std::pair<Instance, ScaleRecord> normalize_sigma(const Instance& instance) {
  if (instance.machines.empty()) return {instance, ScaleRecord{}};
  Rational sigma = instance.machines.front().overtime_rate;
  for (const MachineSpec& m : instance.machines) {
    sigma = std::min(sigma, m.overtime_rate);
  }
  Instance scaled;
  scaled.machines.reserve(instance.machines.size());
  for (const MachineSpec& m : instance.machines) {
    scaled.machines.push_back(MachineSpec{
        .fixed_cost = m.fixed_cost,
        .capacity = m.capacity * sigma,
        .overtime_rate = m.overtime_rate / sigma,
    });
  }
  scaled.jobs.reserve(instance.jobs.size());
  for (const Rational& p : instance.jobs) scaled.jobs.push_back(p * sigma);
  return {std::move(scaled), ScaleRecord{sigma}};
}

Instance apply_scale_inverse(const Instance& instance, const ScaleRecord& record) {
  Instance original;
  original.machines.reserve(instance.machines.size());
  for (const MachineSpec& m : instance.machines) {
    original.machines.push_back(MachineSpec{
        .fixed_cost = m.fixed_cost,
        .capacity = m.capacity / record.sigma_scale,
        .overtime_rate = m.overtime_rate * record.sigma_scale,
    });
  }
  original.jobs.reserve(instance.jobs.size());
  for (const Rational& p : instance.jobs) original.jobs.push_back(p / record.sigma_scale);
  return original;
}

long size_class_exponent(const Rational& p, const Epsilon& eps) {
  if (!p.is_positive()) throw std::invalid_argument("band exponent needs a positive size");
  const Rational base = eps.reciprocal();
  long tau = 0;
  Rational pow(1);
  if (p >= Rational(1)) {
    while (pow * base <= p) {
      pow *= base;
      ++tau;
    }
  } else {
    while (pow > p) {
      pow /= base;
      --tau;
    }
  }
  return tau;
}

RoundingResult round_jobs(const Instance& instance, const Epsilon& eps) {
  RoundingResult result;
  result.instance = instance;
  result.jobs.reserve(instance.jobs.size());
  for (int j = 0; j < instance.job_count(); ++j) {
    const Rational& p = instance.jobs[j];
    if (p.is_zero()) {
      result.jobs.push_back(RoundedJob{p, std::nullopt, p});
      continue;
    }
    long tau = size_class_exponent(p, eps);
    Rational grain = Rational::pow(eps.reciprocal(), tau - 1);
    Rational rounded = round_up_to_multiple(p, grain);
    result.instance.jobs[j] = rounded;
    result.jobs.push_back(RoundedJob{p, tau, rounded});
  }
  return result;
}

SortResult sort_machines(const Instance& instance) {
  SortResult result;
  result.order.resize(instance.machines.size());
  std::iota(result.order.begin(), result.order.end(), 0);
  std::stable_sort(result.order.begin(), result.order.end(), [&](int a, int b) {
    return instance.machines[a].capacity > instance.machines[b].capacity;
  });
  result.instance.jobs = instance.jobs;
  result.instance.machines.reserve(instance.machines.size());
  for (int original : result.order) {
    result.instance.machines.push_back(instance.machines[original]);
  }
  return result;
}

Assignment unsort_assignment(const Assignment& sorted_assignment, const std::vector<int>& order) {
  Assignment original;
  original.target.reserve(sorted_assignment.target.size());
  for (int sorted_pos : sorted_assignment.target) {
    if (sorted_pos < 0 || sorted_pos >= static_cast<int>(order.size())) {
      throw std::out_of_range("sorted machine position out of range");
    }
    original.target.push_back(order[sorted_pos]);
  }
  return original;
}

}  // namespace gebp
