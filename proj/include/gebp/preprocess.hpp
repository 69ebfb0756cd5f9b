#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gebp/model.hpp"

namespace gebp {

// Record of the rate normalization so solutions/instances can be mapped back.
struct ScaleRecord {
  Rational sigma_scale{1};  // the minimum overtime rate that was divided out
};

// Rescales so that min_i sigma_i = 1: capacities and job sizes are multiplied
// by the old minimum rate, overtime rates divided by it.  Fixed costs and the
// cost of every assignment are unchanged exactly.
std::pair<Instance, ScaleRecord> normalize_sigma(const Instance& instance);

// Undoes normalize_sigma bit-exactly.
Instance apply_scale_inverse(const Instance& instance, const ScaleRecord& record);

struct RoundedJob {
  Rational original;
  std::optional<long> tau;  // band exponent; empty for zero-size jobs
  Rational rounded;
};

struct RoundingResult {
  Instance instance;             // same machines, rounded job sizes
  std::vector<RoundedJob> jobs;  // per-job detail, original order
};

// Band exponent tau with p in [(1/eps)^tau, (1/eps)^{tau+1}); p must be
// positive.  Computed by exact power comparisons, never floating logs.
long size_class_exponent(const Rational& p, const Epsilon& eps);

// Rounds each positive job size up to the next multiple of (1/eps)^{tau-1}
// within its band, so p <= p' <= (1+eps)p and each band carries at most
// (1/eps)^2 distinct rounded values.  Zero-size jobs pass through.
RoundingResult round_jobs(const Instance& instance, const Epsilon& eps);

struct SortResult {
  Instance instance;       // machines in descending capacity order
  std::vector<int> order;  // order[sorted_pos] = original machine index
};

// Stable sort by descending capacity (ties keep original order).
SortResult sort_machines(const Instance& instance);

// Maps an assignment expressed against the sorted machine order back to the
// original machine indices.
Assignment unsort_assignment(const Assignment& sorted_assignment, const std::vector<int>& order);

}  // namespace gebp
