#include "gebp/generator.hpp"

#include <random>
#include <stdexcept>

namespace gebp {

GenClass parse_gen_class(const std::string& name) {
  if (name == "ebp") return GenClass::unit_bins;
  if (name == "ubs") return GenClass::uniform_overtime;
  if (name == "general") return GenClass::general;
  if (name == "typed") return GenClass::typed;
  throw std::invalid_argument("unknown instance class: " + name);
}

std::string to_string(GenClass cls) {
  switch (cls) {
    case GenClass::unit_bins:
      return "ebp";
    case GenClass::uniform_overtime:
      return "ubs";
    case GenClass::general:
      return "general";
    case GenClass::typed:
      return "typed";
  }
  return "general";
}

namespace {

// Uniform value in [1, bound] from raw generator output.
long draw(std::mt19937_64& rng, long bound) {
  return 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(bound));
}

std::vector<MachineSpec> draw_machines(std::mt19937_64& rng, int m, GenClass cls) {
  std::vector<MachineSpec> machines;
  machines.reserve(m);
  for (int i = 0; i < m; ++i) {
    switch (cls) {
      case GenClass::unit_bins:
        machines.push_back(MachineSpec{1, 1, 1});
        break;
      case GenClass::uniform_overtime: {
        Rational c(draw(rng, 8), draw(rng, 2));
        machines.push_back(MachineSpec{c, c, 1});
        break;
      }
      default: {
        Rational c(draw(rng, 16), draw(rng, 4));
        Rational sigma(draw(rng, 4), draw(rng, 2));
        machines.push_back(MachineSpec{c * sigma, c, sigma});
        break;
      }
    }
  }
  return machines;
}

std::vector<Rational> draw_jobs(std::mt19937_64& rng, int n, const Rational& reference,
                                long spread) {
  std::vector<Rational> jobs;
  jobs.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (rng() % 16 == 0) {
      jobs.push_back(Rational(0));
      continue;
    }
    Rational raw(draw(rng, spread), draw(rng, 4));
    jobs.push_back(raw * reference / Rational(4));
  }
  return jobs;
}

}  // namespace

Instance generate_instance(std::uint64_t seed, int n, int m, GenClass cls) {
  if (cls == GenClass::typed) {
    throw std::invalid_argument("typed class generates a typed instance, not a plain one");
  }
  if (n < 0 || m < 1) throw std::invalid_argument("need n >= 0 jobs and m >= 1 machines");
  std::mt19937_64 rng(seed);
  Instance instance;
  instance.machines = draw_machines(rng, m, cls);
  Rational reference = instance.machines.front().capacity;
  for (const MachineSpec& machine : instance.machines) {
    reference = std::max(reference, machine.capacity);
  }
  instance.jobs = draw_jobs(rng, n, reference, 8);
  return instance;
}

TypedInstance generate_typed(std::uint64_t seed, int n, int m) {
  if (n < 0 || m < 1) throw std::invalid_argument("need n >= 0 jobs and m >= 1 types");
  std::mt19937_64 rng(seed);
  TypedInstance instance;
  instance.types = draw_machines(rng, m, GenClass::general);
  Rational reference = instance.types.front().capacity;
  for (const MachineSpec& type : instance.types) {
    reference = std::max(reference, type.capacity);
  }
  instance.jobs = draw_jobs(rng, n, reference, 32);
  return instance;
}

}  // namespace gebp
