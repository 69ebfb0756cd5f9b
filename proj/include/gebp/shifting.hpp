#pragma once

#include <vector>

#include "gebp/model.hpp"

namespace gebp {

// Least integer k with (1/eps^2)^k >= c; may be negative for c < 1.
// Exact power comparisons only.
long capacity_class(const Rational& c, const Epsilon& eps);

// Result of grouping machines by capacity class residue and deleting the
// cheapest residue class (except the designated rate-1 machine h, which
// always survives).  Indices refer to the instance passed in, which must be
// sorted by descending capacity with min_i sigma_i = 1.
struct CapacityClassing {
  std::vector<long> klass;     // capacity class per machine
  std::vector<int> residue;    // klass mod (1/eps), in [0, 1/eps)
  int t_min = 0;               // residue whose machines get deleted
  int h = -1;                  // designated machine with sigma = 1
  std::vector<char> deleted;   // 1 iff machine is deleted
  std::vector<int> survivors;  // surviving machine indices, ascending
};

CapacityClassing select_deletion(const Instance& sorted_instance, const Epsilon& eps);

// Contiguous machine ranges [first, last] (inclusive) over the surviving
// machines, split wherever consecutive capacities jump by at least (1/eps)^2.
struct Block {
  int first = 0;
  int last = 0;
};

struct BlockPartition {
  std::vector<Block> blocks;
};

// Machines must be sorted descending by capacity.  Verifies that within each
// block the extreme capacity ratio is at most (1/eps)^{4/eps}; a violation is
// an internal error because the deletion step is supposed to guarantee it.
BlockPartition partition_blocks(const std::vector<MachineSpec>& machines, const Epsilon& eps);

// Job split induced by the block structure:
//   huge:        p > c_first/eps (too big even for the largest machine's band)
//   large[q]:    c_{l(q)}/eps >= p > eps*c_{r(q)}
//   small[q]:    c_{l(q+1)}/eps < p <= eps*c_{r(q)}   (lower bound 0 for the last block)
//   zero:        p = 0 (handled separately at realization)
// Indices refer to the jobs vector passed in.
struct JobPartition {
  std::vector<int> huge;
  std::vector<std::vector<int>> large;
  std::vector<std::vector<int>> small;
  std::vector<int> zero;
};

JobPartition partition_jobs(const std::vector<Rational>& jobs,
                            const std::vector<MachineSpec>& machines,
                            const BlockPartition& partition, const Epsilon& eps);

}  // namespace gebp
