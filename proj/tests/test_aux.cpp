#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gebp/aux_solver.hpp"
#include "gebp/baselines.hpp"

using namespace gebp;

namespace {

AuxProblem one_machine_problem() {
  // Single machine of capacity 2, rate 1: grain 1, cap 4.
  AuxProblem p;
  p.machines = {{Rational(2), Rational(2), Rational(1)}};
  p.eps = Epsilon(2);
  return p;
}

// Random tiny block subproblem with a mix of grain-aligned and off-grid job
// sizes, small enough for the enumeration oracle.
AuxProblem random_problem(std::mt19937_64& rng) {
  auto coin = [&](long k) { return static_cast<long long>(rng() % k); };
  AuxProblem p;
  p.eps = Epsilon(2);
  int m = 1 + static_cast<int>(coin(2));
  std::vector<Rational> caps;
  for (int i = 0; i < m; ++i) caps.emplace_back(coin(6) + 2, 2);
  std::sort(caps.begin(), caps.end(), [](const Rational& a, const Rational& b) { return a > b; });
  for (const Rational& c : caps) {
    Rational s(coin(3) + 1, coin(2) + 1);
    p.machines.push_back({c * s, c, s});
  }
  Rational grain = p.sand_grain();
  Rational cap = p.load_cap();
  int n = static_cast<int>(coin(4));
  for (int j = 0; j < n; ++j) {
    // Multiples of grain/3 keep sizes inside (grain, cap] while leaving many
    // of them off the sand grid.
    long long lo = 4;  // first multiple of grain/3 strictly above grain
    long long hi = to_int64(floor_div(cap, grain / Rational(3)));
    Rational size = (grain / Rational(3)) * Rational(lo + coin(hi - lo + 1));
    p.jobs.push_back(size);
  }
  p.sand_total = grain * Rational(coin(5));
  p.slack_budget = cap * Rational(coin(3));
  return p;
}

}  // namespace

TEST_CASE("aux problem grids and validation") {
  AuxProblem p = one_machine_problem();
  CHECK(p.sand_grain() == Rational(1));
  CHECK(p.load_cap() == Rational(4));
  p.jobs = {Rational(2), Rational(3)};
  p.sand_total = Rational(2);
  CHECK_NOTHROW(p.validate());

  AuxProblem bad_sand = p;
  bad_sand.sand_total = Rational(1, 2);  // not a grain multiple
  CHECK_THROWS_AS(bad_sand.validate(), std::invalid_argument);

  AuxProblem bad_slack = p;
  bad_slack.slack_budget = Rational(2);  // not a cap multiple
  CHECK_THROWS_AS(bad_slack.validate(), std::invalid_argument);

  AuxProblem bad_job = p;
  bad_job.jobs = {Rational(5)};  // above the load cap
  CHECK_THROWS_AS(bad_job.validate(), std::invalid_argument);

  AuxProblem small_job = p;
  small_job.jobs = {Rational(1)};  // at the grain, so not a large job
  CHECK_THROWS_AS(small_job.validate(), std::invalid_argument);

  AuxProblem unsorted = p;
  unsorted.machines = {{Rational(1), Rational(1), Rational(1)},
                       {Rational(2), Rational(2), Rational(1)}};
  CHECK_THROWS_AS(unsorted.validate(), std::invalid_argument);
}

TEST_CASE("build_catalog") {
  AuxProblem p = one_machine_problem();
  p.jobs = {Rational(2), Rational(3)};
  p.sand_total = Rational(2);
  SizeCatalog catalog = build_catalog(p);
  REQUIRE(catalog.sizes.size() == 3);
  CHECK(catalog.sizes == std::vector<Rational>{Rational(1), Rational(2), Rational(3)});
  CHECK(catalog.counts == std::vector<long long>{2, 1, 1});
  CHECK(catalog.total_count() == 4);
  CHECK(catalog.index_of(Rational(2)) == 1);
  CHECK(catalog.index_of(Rational(7)) == -1);

  p.sand_total = Rational(0);
  SizeCatalog no_dummies = build_catalog(p);
  CHECK(no_dummies.sizes == std::vector<Rational>{Rational(2), Rational(3)});
  CHECK(no_dummies.counts == std::vector<long long>{1, 1});

  p.jobs = {Rational(2), Rational(2)};
  SizeCatalog dup = build_catalog(p);
  CHECK(dup.sizes == std::vector<Rational>{Rational(2)});
  CHECK(dup.counts == std::vector<long long>{2});
}

TEST_CASE("enumerate_configurations") {
  SizeCatalog single;
  single.sizes = {Rational(2)};
  single.counts = {1};
  std::vector<Configuration> a = enumerate_configurations(single, Rational(2));
  REQUIRE(a.size() == 2);
  CHECK(a[0].counts == std::vector<long long>{0});
  CHECK(a[0].load == Rational(0));
  CHECK(a[1].counts == std::vector<long long>{1});
  CHECK(a[1].load == Rational(2));

  SizeCatalog two;
  two.sizes = {Rational(1), Rational(2)};
  two.counts = {2, 1};
  std::vector<Configuration> b = enumerate_configurations(two, Rational(2));
  REQUIRE(b.size() == 4);
  CHECK(b[0].counts == std::vector<long long>{0, 0});
  CHECK(b[1].counts == std::vector<long long>{0, 1});
  CHECK(b[2].counts == std::vector<long long>{1, 0});
  CHECK(b[3].counts == std::vector<long long>{2, 0});

  std::vector<Configuration> none = enumerate_configurations(two, Rational(1, 2));
  REQUIRE(none.size() == 1);
  CHECK(none[0].counts == std::vector<long long>{0, 0});

  CHECK_THROWS_AS(enumerate_configurations(two, Rational(2), 2), BudgetExceeded);

  MachineSpec machine{Rational(2), Rational(2), Rational(1)};
  CHECK(configuration_cost(machine, b[3]) == Rational(2));      // load 2 = capacity
  Configuration over{{2, 1}, Rational(4)};
  CHECK(configuration_cost(machine, over) == Rational(4));      // 2 + 1*(4-2)
}

TEST_CASE("solve_aux forced and simple cases") {
  // One unit machine, one unit job, no sand, no slack: the job must go on.
  AuxProblem p;
  p.machines = {{Rational(1), Rational(1), Rational(1)}};
  p.eps = Epsilon(2);
  p.jobs = {Rational(1)};
  auto solution = solve_aux(p);
  REQUIRE(solution.has_value());
  REQUIRE(solution->assigned_machine[0].has_value());
  CHECK(*solution->assigned_machine[0] == 0);
  CHECK(solution->sand_volume[0] == Rational(0));
  CHECK(solution->cost == Rational(1));

  // Two unit jobs still fit under the load cap of 2.
  p.jobs = {Rational(1), Rational(1)};
  auto both = solve_aux(p);
  REQUIRE(both.has_value());
  CHECK(both->cost == Rational(2));
  CHECK(both->assigned_machine[0].has_value());
  CHECK(both->assigned_machine[1].has_value());

  // Slack covering everything: leaving all jobs out is feasible, so the
  // optimum can never exceed the bare fixed costs.
  p.slack_budget = Rational(2) * Rational(2);  // multiple of the cap, >= total size
  auto slack = solve_aux(p);
  REQUIRE(slack.has_value());
  CHECK(slack->cost <= Rational(1));
}

TEST_CASE("build_program stays integral and respects the entry bound") {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 60; ++it) {
    AuxProblem p = random_problem(rng);
    SizeCatalog catalog = build_catalog(p);
    std::vector<Configuration> configurations =
        enumerate_configurations(catalog, p.load_cap());
    AuxFormulation f = build_program(p, catalog, configurations);
    CHECK_NOTHROW(f.program.validate());
    CHECK(f.entry_bound == Rational::pow(Rational(2), 14));
    if (f.entry_bound_ok) {
      CHECK(Rational(f.program.max_entry()) <= f.entry_bound);
    }
    CHECK(static_cast<long long>(f.program.bricks.size()) ==
          static_cast<long long>(p.machines.size()));
  }
}

TEST_CASE("solve_aux equals the enumeration oracle on tiny instances") {
  std::mt19937_64 rng(99);
  int feasible = 0, infeasible = 0;
  for (int it = 0; it < 150; ++it) {
    AuxProblem p = random_problem(rng);
    auto fast = solve_aux(p);
    auto slow = brute_force_aux(p);
    REQUIRE(fast.has_value() == slow.has_value());
    if (!fast) {
      ++infeasible;
      continue;
    }
    ++feasible;
    CHECK(fast->cost == slow->cost);

    // Check the decoded solution's own feasibility from scratch.
    Rational grain = p.sand_grain();
    Rational cap = p.load_cap();
    std::vector<Rational> load(p.machines.size(), Rational(0));
    Rational unassigned(0), vol_total(0);
    for (size_t j = 0; j < p.jobs.size(); ++j) {
      if (fast->assigned_machine[j]) {
        load[*fast->assigned_machine[j]] += p.jobs[j];
      } else {
        unassigned += p.jobs[j];
      }
    }
    Rational recomputed(0);
    for (size_t i = 0; i < p.machines.size(); ++i) {
      CHECK(is_multiple_of(fast->sand_volume[i], grain));
      load[i] += fast->sand_volume[i];
      vol_total += fast->sand_volume[i];
      CHECK(load[i] <= cap);
      recomputed += machine_cost(p.machines[i], load[i]);
    }
    CHECK(recomputed == fast->cost);
    CHECK(vol_total <= p.sand_total);
    CHECK(p.sand_total - vol_total + unassigned <= p.slack_budget);
  }
  CHECK(feasible > 50);
  CHECK(infeasible > 5);
}

TEST_CASE("solve_aux objective is monotone in the sand and slack budgets") {
  AuxProblem base;
  base.machines = {{Rational(2), Rational(2), Rational(1)},
                   {Rational(1), Rational(1), Rational(1)}};
  base.eps = Epsilon(2);
  base.jobs = {Rational(2), Rational(3, 2)};
  Rational grain = base.sand_grain();  // 1/2
  Rational cap = base.load_cap();      // 4

  std::vector<std::vector<std::optional<Rational>>> cost(5);
  for (int s = 0; s < 5; ++s) {
    for (int y = 0; y < 3; ++y) {
      AuxProblem p = base;
      p.sand_total = grain * Rational(s);
      p.slack_budget = cap * Rational(y);
      auto solution = solve_aux(p);
      cost[s].push_back(solution ? std::optional<Rational>(solution->cost) : std::nullopt);
    }
  }
  for (int s = 0; s < 5; ++s) {
    for (int y = 0; y + 1 < 3; ++y) {
      // More slack can only help, and never breaks feasibility.
      if (cost[s][y]) {
        REQUIRE(cost[s][y + 1].has_value());
        CHECK(*cost[s][y + 1] <= *cost[s][y]);
      }
    }
  }
  for (int y = 0; y < 3; ++y) {
    for (int s = 0; s + 1 < 5; ++s) {
      // More sand can only cost more at the same slack.
      if (cost[s + 1][y]) {
        REQUIRE(cost[s][y].has_value());
        CHECK(*cost[s][y] <= *cost[s + 1][y]);
      }
    }
  }
}
