#pragma once
// Shared plumbing: resource-guard errors, exact rational arithmetic,
// deterministic RNG helpers, and fixed-width float formatting.

#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ramlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when an operation would exceed a configured resource guard.
// The CLI maps this to exit code 2 (invalid input maps to exit code 1).
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// Generic enumeration guard (number of objects an operation may visit).
// Overridable through the RAMLAB_GUARD_LIMIT environment variable.
std::uint64_t enumeration_guard_limit();

// Default structural guards (see the module that uses each one).
inline constexpr int kDefaultPartitionVertexGuard = 12;  // Bell-number guard
inline constexpr int kDefaultPhiN = 5;                   // exact expectation: n <= 5
inline constexpr int kDefaultPhiRank = 3;                // exact expectation: rank <= 3
inline constexpr int kDefaultSubsetVertexGuard = 20;     // 2^|V| subset scans

// ---- deterministic randomness --------------------------------------------
// All sampling uses std::mt19937_64 (bit-exact across platforms) combined
// with rejection-based uniform integers; std::uniform_int_distribution is
// implementation-defined and deliberately avoided.

using Rng = std::mt19937_64;

// Unbiased uniform draw from {0, 1, ..., bound-1}.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// SplitMix64 output function; used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for trial i of a sweep keyed by a master seed:
//   derive_seed(master, i) = splitmix64(master ^ splitmix64(i + 1)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial_index);

// ---- output formatting ----------------------------------------------------

// Fixed 12-decimal rendering used for every float that leaves the library
// (JSON and CSV), so identical runs produce byte-identical output.
std::string fmt12(double x);

// "num/den" rendering of an exact rational (den always positive).
std::string rational_string(const Rational& q);

}  // namespace ramlab
