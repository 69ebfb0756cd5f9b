#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "gebp/aux_solver.hpp"
#include "gebp/model.hpp"
#include "gebp/preprocess.hpp"
#include "gebp/shifting.hpp"

namespace gebp {

struct EptasOptions {
  bool lazy_pricing = true;  // price only edges reachable from the source
  int threads = 1;           // worker threads for edge pricing
  long long nfold_state_budget = 10'000'000;
  long long config_budget = 5'000'000;
};

// Everything the pipeline derives from the input before the graph stage:
// rate normalization, job rounding, machine sort, deletion, blocks, and the
// job split, plus the per-block size sums the graph grids need.
struct PipelineData {
  Instance original;
  Epsilon eps{2};
  ScaleRecord scale;
  std::vector<RoundedJob> rounding;     // per job, original order
  std::vector<int> machine_order;       // sorted position -> original machine
  Instance sorted;                      // normalized machines sorted, rounded jobs
  CapacityClassing classing;
  std::vector<MachineSpec> surviving;   // descending capacity
  BlockPartition blocks;                // over `surviving`
  JobPartition jobs;                    // over `sorted.jobs`
  std::vector<Rational> small_total;    // per block: total rounded size of its small jobs
  Rational huge_total{0};               // total rounded size of the oversized jobs
};

PipelineData prepare(const Instance& instance, const Epsilon& eps);

// Slack budget available to block q's subproblem given the next layer's sand
// value phi_prev.  `below_total` is the total size of the jobs that entered
// play between the two layers (small jobs of block q-1, or the oversized
// jobs when q = 1), `grid` is block q's load cap, `n` the job count.
// Returns nullopt when phi_prev cannot even cover below_total.
std::optional<Rational> psi_from_phi(int q, const Rational& phi_prev,
                                     const Rational& below_total, const Rational& grid,
                                     long n);

// The block subproblem an edge into (q, phi, psi) prices.
AuxProblem make_aux_problem(const PipelineData& data, int q, const Rational& phi,
                            const Rational& psi);

// Memoized block-subproblem results keyed by (block, sand, slack); safe for
// concurrent lookup during parallel pricing.
class PricingCache {
 public:
  // nullopt = infeasible.  Solves at most once per key.
  const std::optional<AuxSolution>& get(const PipelineData& data, int q, const Rational& phi,
                                        const Rational& psi, const EptasOptions& options);
  long solve_count() const { return solves_; }

 private:
  std::map<std::tuple<int, Rational, Rational>, std::optional<AuxSolution>> results_;
  std::mutex mutex_;
  long solves_ = 0;
};

// Layered graph over sand values: layer q holds multiples of block q's sand
// grain, layer 0 holds the oversized-job total plus multiples of block 1's
// load cap, and every layer-0 node connects to the sink at length phi_0.
struct LayeredGraph {
  int kappa = 0;                                  // number of blocks
  std::vector<std::vector<Rational>> values;      // values[q][k], q = 0..kappa
  int source = 0;                                 // node index within layer kappa
  // psi[q][k]: slack for edges entering node k of layer q-1; nullopt = none.
  std::vector<std::vector<std::optional<Rational>>> psi;
  // lengths[q][from][to]: edge from layer q to layer q-1; nullopt = absent
  // (infeasible or not priced under lazy mode).
  std::vector<std::vector<std::vector<std::optional<Rational>>>> lengths;

  int node_count() const;
};

LayeredGraph build_and_price(const PipelineData& data, PricingCache& cache,
                             const EptasOptions& options);

struct PathResult {
  std::vector<int> node_at_layer;  // node index per layer, entries 0..kappa
  Rational length{0};              // includes the final phi_0 edge
};

// Shortest source-to-sink path; among equally short paths, the one whose
// node sequence (layer kappa down to 0) is lexicographically smallest.
// Returns nullopt when the sink is unreachable.
std::optional<PathResult> shortest_path(const LayeredGraph& graph);

// Smallest prefix of `small` (pairs of size and job id, in assignment order)
// whose total size reaches `volume`; the whole list when it falls short.
// Returns the number of entries taken.
size_t minimal_prefix(const std::vector<std::pair<Rational, int>>& small, const Rational& volume);

struct EptasAudit {
  bool fallback_used = false;
  int block_count = 0;
  int deleted_machine_count = 0;
  Rational deleted_fixed_cost{0};
  std::vector<Rational> phi_path;    // phi_kappa .. phi_0
  std::vector<Rational> psi_path;    // psi_kappa .. psi_1
  std::vector<Rational> edge_costs;  // block subproblem cost per layer
  Rational path_length{0};
  // Cost of the surviving machines under rounded job sizes; certified to be
  // at most (1+eps) times the path length.
  Rational realized_core_cost{0};
  bool realization_bound_ok = true;
  long aux_solve_count = 0;
};

struct RealizedSolution {
  Assignment assignment;  // on the original machine set
  Rational cost{0};       // solution_cost on the original instance
  EptasAudit audit;
};

// Turns a priced path back into job placements: large jobs per the cached
// block solutions, sand volumes covered by minimal prefixes of the small-job
// pool (descending size), and everything left over onto the designated
// machine h.
RealizedSolution realize(const PipelineData& data, const LayeredGraph& graph,
                         const PathResult& path, PricingCache& cache,
                         const EptasOptions& options);

// Full pipeline.  When no feasible path exists the result falls back to the
// greedy heuristic and says so in the audit.
RealizedSolution solve(const Instance& instance, const Epsilon& eps,
                       const EptasOptions& options = {});

}  // namespace gebp
