#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "gebp/preprocess.hpp"

using namespace gebp;

namespace {

Instance make(std::vector<MachineSpec> machines, std::vector<Rational> jobs) {
  Instance ins;
  ins.machines = std::move(machines);
  ins.jobs = std::move(jobs);
  return ins;
}

Instance random_instance(std::mt19937_64& rng, int max_m, int max_n) {
  auto coin = [&](long k) { return static_cast<long long>(rng() % k); };
  Instance ins;
  int m = 1 + static_cast<int>(coin(max_m));
  int n = static_cast<int>(coin(max_n + 1));
  for (int i = 0; i < m; ++i) {
    Rational c(coin(8) + 1, coin(3) + 1);
    Rational s(coin(4) + 1, coin(2) + 1);
    ins.machines.push_back({c * s, c, s});
  }
  for (int j = 0; j < n; ++j) ins.jobs.emplace_back(coin(16), coin(4) + 1);
  return ins;
}

}  // namespace

TEST_CASE("normalize_sigma examples") {
  // Two machines with rates 2 and 4: divide rates by 2, scale capacities and
  // jobs up by 2, fixed costs unchanged.
  Instance ins = make({{6, 3, 2}, {20, 5, 4}}, {Rational(1), Rational(2)});
  auto [out, record] = normalize_sigma(ins);
  CHECK(record.sigma_scale == Rational(2));
  CHECK(out.machines[0].overtime_rate == Rational(1));
  CHECK(out.machines[1].overtime_rate == Rational(2));
  CHECK(out.machines[0].capacity == Rational(6));
  CHECK(out.machines[1].capacity == Rational(10));
  CHECK(out.machines[0].fixed_cost == Rational(6));
  CHECK(out.machines[1].fixed_cost == Rational(20));
  CHECK(out.jobs[0] == Rational(2));
  CHECK(out.jobs[1] == Rational(4));
  CHECK(validate_instance(out).ok);

  Instance identity = make({{1, 1, 1}}, {Rational(3)});
  auto [same, rec] = normalize_sigma(identity);
  CHECK(rec.sigma_scale == Rational(1));
  CHECK(same.jobs[0] == Rational(3));

  Instance single = make({{10, 2, 5}}, {Rational(1, 3)});
  auto [scaled, rec5] = normalize_sigma(single);
  CHECK(rec5.sigma_scale == Rational(5));
  CHECK(scaled.machines[0].overtime_rate == Rational(1));
  CHECK(scaled.machines[0].capacity == Rational(10));
  CHECK(scaled.jobs[0] == Rational(5, 3));
}

TEST_CASE("normalize_sigma preserves every solution cost exactly") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 300; ++it) {
    Instance ins = random_instance(rng, 3, 6);
    auto [out, record] = normalize_sigma(ins);
    Assignment a;
    for (int j = 0; j < ins.job_count(); ++j) {
      a.target.push_back(static_cast<int>(rng() % ins.machine_count()));
    }
    CHECK(solution_cost(ins, a) == solution_cost(out, a));
    // Bit-exact round trip.
    Instance back = apply_scale_inverse(out, record);
    REQUIRE(back.machine_count() == ins.machine_count());
    for (int i = 0; i < ins.machine_count(); ++i) {
      CHECK(back.machines[i].capacity == ins.machines[i].capacity);
      CHECK(back.machines[i].overtime_rate == ins.machines[i].overtime_rate);
      CHECK(back.machines[i].fixed_cost == ins.machines[i].fixed_cost);
    }
    for (int j = 0; j < ins.job_count(); ++j) CHECK(back.jobs[j] == ins.jobs[j]);
  }
}

TEST_CASE("size_class_exponent") {
  Epsilon eps(2);  // bands [2^t, 2^{t+1})
  CHECK(size_class_exponent(Rational(4), eps) == 2);
  CHECK(size_class_exponent(Rational(5), eps) == 2);
  CHECK(size_class_exponent(Rational(13, 10), eps) == 0);
  CHECK(size_class_exponent(Rational(1), eps) == 0);
  CHECK(size_class_exponent(Rational(1, 2), eps) == -1);
  CHECK(size_class_exponent(Rational(1, 3), eps) == -2);
  CHECK(size_class_exponent(Rational(8), eps) == 3);
  CHECK(size_class_exponent(Rational(7, 1), eps) == 2);
}

TEST_CASE("round_jobs examples") {
  Epsilon eps(2);
  Instance ins = make({{1, 1, 1}}, {Rational(4), Rational(5), Rational(13, 10), Rational(0)});
  RoundingResult r = round_jobs(ins, eps);
  CHECK(r.jobs[0].tau.value() == 2);
  CHECK(r.jobs[0].rounded == Rational(4));
  CHECK(r.jobs[1].tau.value() == 2);
  CHECK(r.jobs[1].rounded == Rational(6));
  CHECK(r.jobs[2].tau.value() == 0);
  CHECK(r.jobs[2].rounded == Rational(3, 2));
  CHECK_FALSE(r.jobs[3].tau.has_value());
  CHECK(r.jobs[3].rounded == Rational(0));
  CHECK(r.instance.jobs[1] == Rational(6));
  CHECK(r.instance.machine_count() == 1);
}

TEST_CASE("rounding invariants on random sizes") {
  for (long E : {2L, 3L, 5L}) {
    Epsilon eps(E);
    Rational one_plus = Rational(1) + eps.value();
    std::mt19937_64 rng(100 + E);
    Instance ins = make({{1, 1, 1}}, {});
    for (int it = 0; it < 2000; ++it) {
      ins.jobs.assign(1, Rational(static_cast<long long>(rng() % 4000) + 1,
                                  static_cast<long long>(rng() % 50) + 1));
      RoundingResult r = round_jobs(ins, eps);
      const RoundedJob& j = r.jobs[0];
      Rational band_low = Rational::pow(eps.reciprocal(), *j.tau);
      Rational band_high = band_low * eps.reciprocal();
      CHECK(j.original >= band_low);
      CHECK(j.original < band_high);
      CHECK(j.original <= j.rounded);
      CHECK(j.rounded <= one_plus * j.original);
      CHECK(is_multiple_of(j.rounded, Rational::pow(eps.reciprocal(), *j.tau - 1)));
    }
  }
}

TEST_CASE("at most 1/eps^2 distinct rounded sizes per band") {
  for (long E : {2L, 3L}) {
    Epsilon eps(E);
    std::mt19937_64 rng(7 * E);
    std::map<long, std::set<Rational>> per_band;
    Instance ins = make({{1, 1, 1}}, {});
    for (int it = 0; it < 4000; ++it) {
      ins.jobs.assign(1, Rational(static_cast<long long>(rng() % 3000) + 1,
                                  static_cast<long long>(rng() % 40) + 1));
      RoundingResult r = round_jobs(ins, eps);
      per_band[*r.jobs[0].tau].insert(r.jobs[0].rounded);
    }
    for (const auto& [tau, values] : per_band) {
      CHECK(static_cast<long>(values.size()) <= E * E);
    }
  }
}

TEST_CASE("sort_machines") {
  Instance ins = make({{1, 1, 1}, {3, 3, 1}, {2, 2, 1}}, {Rational(1)});
  SortResult s = sort_machines(ins);
  CHECK(s.instance.machines[0].capacity == Rational(3));
  CHECK(s.instance.machines[1].capacity == Rational(2));
  CHECK(s.instance.machines[2].capacity == Rational(1));
  CHECK(s.order == std::vector<int>{1, 2, 0});

  SortResult already = sort_machines(s.instance);
  CHECK(already.order == std::vector<int>{0, 1, 2});

  // Equal capacities keep their original order.
  Instance ties = make({{2, 2, 1}, {4, 2, 2}}, {});
  SortResult t = sort_machines(ties);
  CHECK(t.order == std::vector<int>{0, 1});
  CHECK(t.instance.machines[0].fixed_cost == Rational(2));
}

TEST_CASE("unsort_assignment maps back to original machines") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 200; ++it) {
    Instance ins = random_instance(rng, 4, 5);
    SortResult s = sort_machines(ins);
    Assignment sorted_a;
    for (int j = 0; j < ins.job_count(); ++j) {
      sorted_a.target.push_back(static_cast<int>(rng() % ins.machine_count()));
    }
    Assignment original_a = unsort_assignment(sorted_a, s.order);
    CHECK(solution_cost(s.instance, sorted_a) == solution_cost(ins, original_a));
  }
}
