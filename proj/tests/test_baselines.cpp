#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gebp/baselines.hpp"

using namespace gebp;

namespace {

Instance ebp(int m, std::vector<Rational> jobs) {
  Instance ins;
  for (int i = 0; i < m; ++i) ins.machines.push_back({Rational(1), Rational(1), Rational(1)});
  ins.jobs = std::move(jobs);
  return ins;
}

Instance random_ebp(std::mt19937_64& rng, int max_m, int max_n) {
  auto coin = [&](long k) { return static_cast<long long>(rng() % k); };
  Instance ins = ebp(1 + static_cast<int>(coin(max_m)), {});
  int n = static_cast<int>(coin(max_n + 1));
  for (int j = 0; j < n; ++j) ins.jobs.emplace_back(coin(20) + 1, 20);
  return ins;
}

}  // namespace

TEST_CASE("classify") {
  CHECK(classify_instance(ebp(2, {})) == InstanceClassTag::unit_bins);
  Instance ubs;
  ubs.machines = {{Rational(2), Rational(2), Rational(1)}, {Rational(1), Rational(1), Rational(1)}};
  CHECK(classify_instance(ubs) == InstanceClassTag::uniform_overtime);
  Instance general;
  general.machines = {{Rational(6), Rational(2), Rational(3)}};
  CHECK(classify_instance(general) == InstanceClassTag::general);
  CHECK(to_string(InstanceClassTag::unit_bins) == "ebp");
  CHECK(to_string(InstanceClassTag::uniform_overtime) == "ubs");
  CHECK(to_string(InstanceClassTag::general) == "general");
}

TEST_CASE("list_scheduling hand example") {
  // Three jobs of size 3/5 on two unit machines: greedy puts the third on
  // machine 0 (equal increase, lowest index), loads 6/5 and 3/5.
  Instance ins = ebp(2, {Rational(3, 5), Rational(3, 5), Rational(3, 5)});
  HeuristicResult r = list_scheduling(ins);
  CHECK(r.assignment.target == std::vector<int>{0, 1, 0});
  CHECK(r.cost == Rational(11, 5));
  CHECK(r.cost == solution_cost(ins, r.assignment));
  CHECK(r.name == "greedy");
  CHECK(r.tag == InstanceClassTag::unit_bins);
}

TEST_CASE("list_scheduling trivial cases") {
  Instance one = ebp(2, {Rational(1, 2)});
  HeuristicResult r = list_scheduling(one);
  CHECK(r.assignment.target == std::vector<int>{0});
  CHECK(r.cost == Rational(2));

  Instance none = ebp(3, {});
  CHECK(list_scheduling(none).cost == Rational(3));

  // Explicit order overload.
  Instance ins = ebp(2, {Rational(1), Rational(1, 2)});
  HeuristicResult natural = list_scheduling(ins);
  HeuristicResult reversed = list_scheduling(ins, {1, 0});
  CHECK(natural.cost == solution_cost(ins, natural.assignment));
  CHECK(reversed.cost == solution_cost(ins, reversed.assignment));
}

TEST_CASE("lpt hand example") {
  Instance ins = ebp(2, {Rational(7, 10), Rational(1, 2), Rational(1, 2)});
  HeuristicResult r = lpt(ins);
  std::vector<Rational> loads = machine_loads(ins, r.assignment);
  CHECK(loads[0] == Rational(7, 10));
  CHECK(loads[1] == Rational(1));
  CHECK(r.cost == Rational(2));
  CHECK(r.name == "lpt");
}

TEST_CASE("lpt equals list_scheduling on presorted jobs") {
  Instance ins = ebp(2, {Rational(9, 10), Rational(1, 2), Rational(1, 4)});
  CHECK(lpt(ins).assignment.target == list_scheduling(ins).assignment.target);

  Instance single = ebp(1, {Rational(1), Rational(2)});
  HeuristicResult r = lpt(single);
  CHECK(r.assignment.target == std::vector<int>{0, 0});
}

TEST_CASE("brute_force tiny instances") {
  Instance ins = ebp(2, {Rational(1), Rational(1)});
  auto [assignment, cost] = brute_force(ins);
  CHECK(cost == Rational(2));
  // Lexicographically smallest optimum.
  CHECK(assignment.target == std::vector<int>{0, 1});

  Instance none = ebp(3, {});
  CHECK(brute_force(none).second == Rational(3));

  // Cost is invariant under permuting identical machines by symmetry.
  Instance perm = ins;
  std::swap(perm.machines[0], perm.machines[1]);
  CHECK(brute_force(perm).second == cost);

  Instance big = ebp(4, {});
  for (int j = 0; j < 14; ++j) big.jobs.emplace_back(1);
  CHECK_THROWS_AS(brute_force(big, 1000), BudgetExceeded);
}

TEST_CASE("brute_force never beats any heuristic") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 150; ++it) {
    Instance ins = random_ebp(rng, 3, 6);
    Rational optimum = brute_force(ins).second;
    CHECK(list_scheduling(ins).cost >= optimum);
    CHECK(lpt(ins).cost >= optimum);
  }
}

TEST_CASE("greedy places at zero increase whenever a job fits") {
  // On unit bins the marginal-cost greedy pays nothing for a job that fits
  // below some machine's capacity, and the final cost is m plus the summed
  // increases.
  std::mt19937_64 rng(29);
  for (int it = 0; it < 200; ++it) {
    Instance ins = random_ebp(rng, 3, 7);
    HeuristicResult r = list_scheduling(ins);
    std::vector<Rational> load(ins.machine_count(), Rational(0));
    Rational increases(0);
    for (int j = 0; j < ins.job_count(); ++j) {
      bool fits_somewhere = false;
      for (const Rational& l : load) {
        if (l + ins.jobs[j] <= Rational(1)) fits_somewhere = true;
      }
      int target = r.assignment.target[j];
      Rational before = machine_cost(ins.machines[target], load[target]);
      load[target] += ins.jobs[j];
      Rational after = machine_cost(ins.machines[target], load[target]);
      increases += after - before;
      if (fits_somewhere) CHECK(after == before);
    }
    CHECK(r.cost == Rational(ins.machine_count()) + increases);
  }
}

TEST_CASE("brute_force_aux hand-checked cases") {
  AuxProblem p;
  p.machines = {{Rational(1), Rational(1), Rational(1)}};
  p.eps = Epsilon(2);
  p.jobs = {Rational(1)};

  // Forced assignment.
  auto forced = brute_force_aux(p);
  REQUIRE(forced.has_value());
  REQUIRE(forced->assigned_machine[0].has_value());
  CHECK(forced->cost == Rational(1));

  // Slack covering the whole mass: all-unassigned is feasible, so the
  // optimum is at most the bare fixed cost.
  p.jobs = {Rational(2), Rational(2)};
  p.slack_budget = Rational(4);  // 2 * cap
  auto slack = brute_force_aux(p);
  REQUIRE(slack.has_value());
  CHECK(slack->cost <= Rational(1));

  // Budget check.
  AuxProblem fat = p;
  fat.jobs.assign(4, Rational(2));
  fat.sand_total = Rational(2);  // 4 grains
  CHECK_THROWS_AS(brute_force_aux(fat, 10), BudgetExceeded);
}
