#include "gebp/shifting.hpp"

#include <string>

namespace gebp {

long capacity_class(const Rational& c, const Epsilon& eps) {
  if (!c.is_positive()) throw std::invalid_argument("capacity class needs a positive capacity");
  const Rational base = eps.reciprocal() * eps.reciprocal();
  long k = 0;
  Rational pow(1);
  // Grow until base^k >= c, then shrink while the previous power still works.
  while (pow < c) {
    pow *= base;
    ++k;
  }
  while (pow / base >= c) {
    pow /= base;
    --k;
  }
  return k;
}

CapacityClassing select_deletion(const Instance& sorted_instance, const Epsilon& eps) {
  const int m = sorted_instance.machine_count();
  const long E = eps.inverse();
  CapacityClassing out;
  out.klass.reserve(m);
  out.residue.reserve(m);
  for (const MachineSpec& machine : sorted_instance.machines) {
    long k = capacity_class(machine.capacity, eps);
    out.klass.push_back(k);
    long r = k % E;
    if (r < 0) r += E;
    out.residue.push_back(static_cast<int>(r));
  }

  // Designated machine h: the largest-capacity machine with rate exactly 1.
  for (int i = 0; i < m; ++i) {
    if (sorted_instance.machines[i].overtime_rate == Rational(1)) {
      out.h = i;
      break;
    }
  }
  if (out.h < 0) {
    throw std::invalid_argument("instance must be rate-normalized (some sigma = 1)");
  }

  std::vector<Rational> residue_cost(E, Rational(0));
  Rational total_fixed(0);
  for (int i = 0; i < m; ++i) {
    residue_cost[out.residue[i]] += sorted_instance.machines[i].fixed_cost;
    total_fixed += sorted_instance.machines[i].fixed_cost;
  }
  out.t_min = 0;
  for (int t = 1; t < E; ++t) {
    if (residue_cost[t] < residue_cost[out.t_min]) out.t_min = t;
  }
  if (residue_cost[out.t_min] * eps.reciprocal() > total_fixed) {
    throw InternalError("cheapest residue class exceeds its averaging bound");
  }

  out.deleted.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    if (out.residue[i] == out.t_min && i != out.h) out.deleted[i] = 1;
  }
  for (int i = 0; i < m; ++i) {
    if (!out.deleted[i]) out.survivors.push_back(i);
  }
  return out;
}

BlockPartition partition_blocks(const std::vector<MachineSpec>& machines, const Epsilon& eps) {
  BlockPartition partition;
  if (machines.empty()) return partition;
  const Rational jump = eps.reciprocal() * eps.reciprocal();
  int first = 0;
  for (int i = 0; i + 1 <= static_cast<int>(machines.size()) - 1; ++i) {
    if (machines[i].capacity >= jump * machines[i + 1].capacity) {
      partition.blocks.push_back(Block{first, i});
      first = i + 1;
    }
  }
  partition.blocks.push_back(Block{first, static_cast<int>(machines.size()) - 1});

  const Rational ratio_bound = Rational::pow(eps.reciprocal(), 4 * eps.inverse());
  for (const Block& block : partition.blocks) {
    if (machines[block.first].capacity > ratio_bound * machines[block.last].capacity) {
      throw InternalError("block capacity spread exceeds its bound after deletion");
    }
  }
  return partition;
}

JobPartition partition_jobs(const std::vector<Rational>& jobs,
                            const std::vector<MachineSpec>& machines,
                            const BlockPartition& partition, const Epsilon& eps) {
  if (machines.empty() || partition.blocks.empty()) {
    throw std::invalid_argument("job partition needs at least one machine block");
  }
  const int blocks = static_cast<int>(partition.blocks.size());
  JobPartition out;
  out.large.resize(blocks);
  out.small.resize(blocks);

  const Rational inv = eps.reciprocal();
  const Rational huge_bar = machines[partition.blocks.front().first].capacity * inv;
  for (int j = 0; j < static_cast<int>(jobs.size()); ++j) {
    const Rational& p = jobs[j];
    if (p.is_zero()) {
      out.zero.push_back(j);
      continue;
    }
    if (p > huge_bar) {
      out.huge.push_back(j);
      continue;
    }
    bool placed = false;
    for (int q = 0; q < blocks && !placed; ++q) {
      const Block& block = partition.blocks[q];
      Rational upper = machines[block.first].capacity * inv;        // c_l(q)/eps
      Rational small_bar = machines[block.last].capacity * eps.value();  // eps*c_r(q)
      Rational lower = q + 1 < blocks
                           ? machines[partition.blocks[q + 1].first].capacity * inv
                           : Rational(0);
      if (p <= upper && p > small_bar) {
        out.large[q].push_back(j);
        placed = true;
      } else if (p <= small_bar && p > lower) {
        out.small[q].push_back(j);
        placed = true;
      }
    }
    if (!placed) {
      throw InternalError("job " + std::to_string(j) + " fits no band of the block structure");
    }
  }
  return out;
}

}  // namespace gebp
