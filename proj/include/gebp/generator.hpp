#pragma once

#include <cstdint>
#include <string>

#include "gebp/model.hpp"
#include "gebp/variant.hpp"

namespace gebp {

enum class GenClass { unit_bins, uniform_overtime, general, typed };

GenClass parse_gen_class(const std::string& name);  // ebp | ubs | general | typed
std::string to_string(GenClass cls);

// Deterministic random instances: the same seed and parameters always produce
// the same instance on every platform (raw 64-bit generator outputs reduced
// by modulo; the standard distributions are implementation-defined and would
// break byte-for-byte reproducibility).
//   unit_bins:          every machine (f,c,sigma) = (1,1,1)
//   uniform_overtime:   sigma = 1, f = c, capacities from a rational grid
//   general:            c and sigma from rational grids, f = c*sigma
// Job sizes are drawn relative to the largest capacity, with an occasional
// zero-size job.
Instance generate_instance(std::uint64_t seed, int n, int m, GenClass cls);

// Type palette like the general class; job sizes spread wider so some jobs
// exceed the dedication threshold.
TypedInstance generate_typed(std::uint64_t seed, int n, int m);

}  // namespace gebp
