#include "gebp/eptas.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <string>

#include "gebp/baselines.hpp"

namespace gebp {

PipelineData prepare(const Instance& instance, const Epsilon& eps) {
  ValidationReport report = validate_instance(instance);
  if (!report.ok) throw std::invalid_argument("invalid instance: " + report.issues.front());
  if (instance.machines.empty()) {
    throw std::invalid_argument("need at least one machine");
  }
  PipelineData data;
  data.original = instance;
  data.eps = eps;

  auto [normalized, scale] = normalize_sigma(instance);
  data.scale = scale;
  RoundingResult rounding = round_jobs(normalized, eps);
  data.rounding = rounding.jobs;
  SortResult sorted = sort_machines(rounding.instance);
  data.machine_order = sorted.order;
  data.sorted = std::move(sorted.instance);

  data.classing = select_deletion(data.sorted, eps);
  data.surviving.reserve(data.classing.survivors.size());
  for (int idx : data.classing.survivors) {
    data.surviving.push_back(data.sorted.machines[idx]);
  }
  data.blocks = partition_blocks(data.surviving, eps);
  data.jobs = partition_jobs(data.sorted.jobs, data.surviving, data.blocks, eps);

  data.small_total.assign(data.blocks.blocks.size(), Rational(0));
  for (size_t q = 0; q < data.blocks.blocks.size(); ++q) {
    for (int j : data.jobs.small[q]) data.small_total[q] += data.sorted.jobs[j];
  }
  for (int j : data.jobs.huge) data.huge_total += data.sorted.jobs[j];
  return data;
}

std::optional<Rational> psi_from_phi(int q, const Rational& phi_prev,
                                     const Rational& below_total, const Rational& grid,
                                     long n) {
  Rational bracket = phi_prev - below_total;
  if (bracket.is_negative()) return std::nullopt;
  if (q == 1) return bracket;  // already on the grid by the layer-0 layout
  mpz_class steps = floor_div(bracket, grid);
  if (steps > n) steps = n;
  return Rational(steps) * grid;
}

AuxProblem make_aux_problem(const PipelineData& data, int q, const Rational& phi,
                            const Rational& psi) {
  if (q < 1 || q > static_cast<int>(data.blocks.blocks.size())) {
    throw std::invalid_argument("block index out of range");
  }
  const Block& block = data.blocks.blocks[q - 1];
  AuxProblem problem;
  problem.block = q;
  problem.machines.assign(data.surviving.begin() + block.first,
                          data.surviving.begin() + block.last + 1);
  problem.jobs.reserve(data.jobs.large[q - 1].size());
  for (int j : data.jobs.large[q - 1]) problem.jobs.push_back(data.sorted.jobs[j]);
  problem.sand_total = phi;
  problem.slack_budget = psi;
  problem.eps = data.eps;
  return problem;
}

const std::optional<AuxSolution>& PricingCache::get(const PipelineData& data, int q,
                                                    const Rational& phi, const Rational& psi,
                                                    const EptasOptions& options) {
  std::tuple<int, Rational, Rational> key{q, phi, psi};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = results_.find(key);
    if (it != results_.end()) return it->second;
  }
  AuxProblem problem = make_aux_problem(data, q, phi, psi);
  std::optional<AuxSolution> solution =
      solve_aux(problem, options.nfold_state_budget, options.config_budget);
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = results_.emplace(std::move(key), std::move(solution));
  if (inserted) ++solves_;
  return it->second;
}

int LayeredGraph::node_count() const {
  int total = 1;  // sink
  for (const auto& layer : values) total += static_cast<int>(layer.size());
  return total;
}

LayeredGraph build_and_price(const PipelineData& data, PricingCache& cache,
                             const EptasOptions& options) {
  const int kappa = static_cast<int>(data.blocks.blocks.size());
  const long n = data.sorted.job_count();
  const Epsilon& eps = data.eps;

  LayeredGraph graph;
  graph.kappa = kappa;
  graph.values.resize(kappa + 1);
  graph.psi.resize(kappa + 1);
  graph.lengths.resize(kappa + 1);

  // Layer 0: oversized-job total plus multiples of block 1's load cap, so the
  // final slack psi_1 = phi_0 - (oversized total) lands on block 1's grid.
  const Rational cap1 =
      data.surviving[data.blocks.blocks.front().first].capacity * eps.reciprocal();
  graph.values[0].reserve(n + 1);
  for (long k = 0; k <= n; ++k) {
    graph.values[0].push_back(data.huge_total + Rational(k) * cap1);
  }
  // Layers 1..kappa: multiples of the block's sand grain.
  for (int q = 1; q <= kappa; ++q) {
    const Rational grain =
        eps.value() * data.surviving[data.blocks.blocks[q - 1].last].capacity;
    graph.values[q].reserve(n + 1);
    for (long k = 0; k <= n; ++k) graph.values[q].push_back(Rational(k) * grain);
  }

  const Rational top_grain =
      eps.value() * data.surviving[data.blocks.blocks[kappa - 1].last].capacity;
  mpz_class source = ceil_div(data.small_total[kappa - 1], top_grain);
  if (source > n) {
    throw InternalError("source sand value exceeds the layer grid");
  }
  graph.source = static_cast<int>(to_int64(source));

  for (int q = 1; q <= kappa; ++q) {
    const Rational grid =
        data.surviving[data.blocks.blocks[q - 1].first].capacity * eps.reciprocal();
    const Rational& below = q >= 2 ? data.small_total[q - 2] : data.huge_total;
    graph.psi[q].resize(n + 1);
    for (long k = 0; k <= n; ++k) {
      graph.psi[q][k] = psi_from_phi(q, graph.values[q - 1][k], below, grid, n);
    }
    graph.lengths[q].assign(n + 1, std::vector<std::optional<Rational>>(n + 1));
  }

  std::vector<std::vector<char>> reachable(kappa + 1, std::vector<char>(n + 1, 0));
  reachable[kappa][graph.source] = 1;
  for (int q = kappa; q >= 1; --q) {
    std::vector<std::pair<int, int>> tasks;
    for (long from = 0; from <= n; ++from) {
      if (options.lazy_pricing && !reachable[q][from]) continue;
      for (long to = 0; to <= n; ++to) {
        if (graph.psi[q][to]) tasks.emplace_back(static_cast<int>(from), static_cast<int>(to));
      }
    }
    auto price = [&](const std::pair<int, int>& task) {
      cache.get(data, q, graph.values[q][task.first], *graph.psi[q][task.second], options);
    };
    if (options.threads > 1 && tasks.size() > 1) {
      std::atomic<size_t> next{0};
      const size_t workers =
          std::min<size_t>(static_cast<size_t>(options.threads), tasks.size());
      std::vector<std::future<void>> futures;
      futures.reserve(workers);
      for (size_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&]() {
          for (size_t idx; (idx = next.fetch_add(1)) < tasks.size();) price(tasks[idx]);
        }));
      }
      for (auto& future : futures) future.get();
    } else {
      for (const auto& task : tasks) price(task);
    }
    for (const auto& [from, to] : tasks) {
      const std::optional<AuxSolution>& result =
          cache.get(data, q, graph.values[q][from], *graph.psi[q][to], options);
      if (result) {
        graph.lengths[q][from][to] = result->cost;
        reachable[q - 1][to] = 1;
      }
    }
  }
  return graph;
}

std::optional<PathResult> shortest_path(const LayeredGraph& graph) {
  const int kappa = graph.kappa;
  std::vector<std::vector<std::optional<Rational>>> dist(kappa + 1);
  std::vector<std::vector<int>> parent(kappa + 1);  // predecessor in the layer above
  for (int q = 0; q <= kappa; ++q) {
    dist[q].assign(graph.values[q].size(), std::nullopt);
    parent[q].assign(graph.values[q].size(), -1);
  }
  dist[kappa][graph.source] = Rational(0);

  // Node sequence from the source down to (q, k), for lexicographic ties.
  auto sequence = [&](int q, int k) {
    std::vector<int> reversed;
    int node = k;
    for (int layer = q; layer < kappa; ++layer) {
      reversed.push_back(node);
      node = parent[layer][node];
    }
    reversed.push_back(node);
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
  };

  for (int q = kappa; q >= 1; --q) {
    for (size_t from = 0; from < graph.values[q].size(); ++from) {
      if (!dist[q][from]) continue;
      for (size_t to = 0; to < graph.values[q - 1].size(); ++to) {
        const std::optional<Rational>& length = graph.lengths[q][from][to];
        if (!length) continue;
        Rational candidate = *dist[q][from] + *length;
        bool better = false;
        if (!dist[q - 1][to] || candidate < *dist[q - 1][to]) {
          better = true;
        } else if (candidate == *dist[q - 1][to]) {
          std::vector<int> challenger = sequence(q, static_cast<int>(from));
          challenger.push_back(static_cast<int>(to));
          better = challenger < sequence(q - 1, static_cast<int>(to));
        }
        if (better) {
          dist[q - 1][to] = candidate;
          parent[q - 1][to] = static_cast<int>(from);
        }
      }
    }
  }

  int best = -1;
  Rational best_total(0);
  for (size_t k = 0; k < graph.values[0].size(); ++k) {
    if (!dist[0][k]) continue;
    Rational total = *dist[0][k] + graph.values[0][k];
    if (best < 0 || total < best_total ||
        (total == best_total && sequence(0, static_cast<int>(k)) < sequence(0, best))) {
      best = static_cast<int>(k);
      best_total = total;
    }
  }
  if (best < 0) return std::nullopt;

  PathResult result;
  result.length = best_total;
  std::vector<int> seq = sequence(0, best);  // ordered layer kappa .. 0
  result.node_at_layer.assign(kappa + 1, -1);
  for (int i = 0; i <= kappa; ++i) result.node_at_layer[kappa - i] = seq[i];
  return result;
}

size_t minimal_prefix(const std::vector<std::pair<Rational, int>>& small,
                      const Rational& volume) {
  if (!volume.is_positive()) return 0;
  Rational sum(0);
  for (size_t k = 0; k < small.size(); ++k) {
    sum += small[k].first;
    if (sum >= volume) return k + 1;
  }
  return small.size();
}

RealizedSolution realize(const PipelineData& data, const LayeredGraph& graph,
                         const PathResult& path, PricingCache& cache,
                         const EptasOptions& options) {
  const int kappa = graph.kappa;
  const int n = data.sorted.job_count();
  std::vector<int> target(n, -1);  // machine index in the sorted instance

  EptasAudit audit;
  audit.block_count = kappa;
  for (int i = 0; i < data.sorted.machine_count(); ++i) {
    if (data.classing.deleted[i]) {
      ++audit.deleted_machine_count;
      audit.deleted_fixed_cost += data.sorted.machines[i].fixed_cost;
    }
  }
  for (int q = kappa; q >= 0; --q) {
    audit.phi_path.push_back(graph.values[q][path.node_at_layer[q]]);
  }
  audit.path_length = path.length;

  for (int q = kappa; q >= 1; --q) {
    const Block& block = data.blocks.blocks[q - 1];
    const Rational& phi = graph.values[q][path.node_at_layer[q]];
    const std::optional<Rational>& psi = graph.psi[q][path.node_at_layer[q - 1]];
    if (!psi) throw InternalError("path crosses an edge with no slack value");
    audit.psi_path.push_back(*psi);
    const std::optional<AuxSolution>& aux = cache.get(data, q, phi, *psi, options);
    if (!aux) throw InternalError("path crosses an edge whose subproblem is infeasible");
    audit.edge_costs.push_back(aux->cost);

    const std::vector<int>& large = data.jobs.large[q - 1];
    for (size_t a = 0; a < large.size(); ++a) {
      if (aux->assigned_machine[a]) {
        target[large[a]] = data.classing.survivors[block.first + *aux->assigned_machine[a]];
      }
    }

    // Cover each machine's sand volume by a minimal prefix of the still
    // unassigned jobs small enough for this block, largest first.
    const Rational small_bar = data.eps.value() * data.surviving[block.last].capacity;
    std::vector<std::pair<Rational, int>> pool;
    for (int j = 0; j < n; ++j) {
      if (target[j] < 0 && data.sorted.jobs[j].is_positive() &&
          data.sorted.jobs[j] <= small_bar) {
        pool.emplace_back(data.sorted.jobs[j], j);
      }
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = block.first; i <= block.last; ++i) {
      const Rational& volume = aux->sand_volume[i - block.first];
      size_t take = minimal_prefix(pool, volume);
      for (size_t k = 0; k < take; ++k) {
        target[pool[k].second] = data.classing.survivors[i];
      }
      pool.erase(pool.begin(), pool.begin() + take);
    }
  }

  // Everything still unassigned (oversized jobs, loose small jobs, zero-size
  // jobs) lands on the designated machine h.
  for (int j = 0; j < n; ++j) {
    if (target[j] < 0) target[j] = data.classing.h;
  }

  std::vector<Rational> loads(data.sorted.machine_count(), Rational(0));
  for (int j = 0; j < n; ++j) loads[target[j]] += data.sorted.jobs[j];
  for (int i = 0; i < data.sorted.machine_count(); ++i) {
    if (data.classing.deleted[i] && loads[i].is_positive()) {
      throw InternalError("deleted machine received load");
    }
  }
  for (int idx : data.classing.survivors) {
    audit.realized_core_cost += machine_cost(data.sorted.machines[idx], loads[idx]);
  }
  audit.realization_bound_ok =
      audit.realized_core_cost <= (Rational(1) + data.eps.value()) * audit.path_length;

  RealizedSolution solution;
  solution.audit = std::move(audit);
  solution.assignment.target.resize(n);
  for (int j = 0; j < n; ++j) {
    solution.assignment.target[j] = data.machine_order[target[j]];
  }
  solution.cost = solution_cost(data.original, solution.assignment);
  return solution;
}

RealizedSolution solve(const Instance& instance, const Epsilon& eps,
                       const EptasOptions& options) {
  PipelineData data = prepare(instance, eps);
  PricingCache cache;
  LayeredGraph graph = build_and_price(data, cache, options);
  std::optional<PathResult> path = shortest_path(graph);
  if (!path) {
    HeuristicResult greedy = list_scheduling(instance);
    RealizedSolution fallback;
    fallback.assignment = std::move(greedy.assignment);
    fallback.cost = greedy.cost;
    fallback.audit.fallback_used = true;
    fallback.audit.block_count = graph.kappa;
    fallback.audit.aux_solve_count = cache.solve_count();
    return fallback;
  }
  RealizedSolution solution = realize(data, graph, *path, cache, options);
  solution.audit.aux_solve_count = cache.solve_count();
  return solution;
}

}  // namespace gebp
