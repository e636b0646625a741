#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "ergaps/prime_engine.hpp"

namespace ergaps {

// A candidate offset pattern h_1 < ... < h_k.
struct Tuple {
  std::vector<std::int64_t> offsets;

  int k() const { return static_cast<int>(offsets.size()); }
  std::int64_t diameter() const {
    return offsets.empty() ? 0 : offsets.back() - offsets.front();
  }
};

Tuple make_tuple(std::vector<std::int64_t> offsets);  // validates strict ascent

// ASCII tuple format: one integer per line, ascending.
Tuple read_tuple(std::istream& in);
void write_tuple(const Tuple& t, std::ostream& out);

// Result of the admissibility predicate, with a self-certifying witness:
// when inadmissible, `covering_prime` hits every residue class; when
// admissible, each (ell, n_ell) pair satisfies ell | none of n_ell + h_i,
// for every prime ell <= k.
struct AdmissibilityWitness {
  bool admissible = false;
  std::uint64_t covering_prime = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> missed_residues;
};

AdmissibilityWitness is_admissible(const Tuple& t, int workers = 1);

// The k smallest primes exceeding k. Always admissible: no prime ell <= k
// divides any element, so residue 0 is missed mod every ell <= k.
// Requires an all-primes table; throws resource_error (with a sufficient
// limit estimate) when the table is too small.
Tuple construct_primes_gt_k(std::uint64_t k, const SieveTable& table);

// A sieve limit that comfortably covers the k primes after k.
std::uint64_t primes_gt_k_limit_hint(std::uint64_t k);

// Exhaustive minimal-diameter search over 0 = h_1 < ... < h_k <= max_diameter.
// Returns the lexicographically smallest admissible tuple of minimal diameter,
// or nothing if none fits. k is capped at 12.
std::optional<Tuple> narrowest_search(int k, std::int64_t max_diameter,
                                      std::uint64_t node_budget = 500'000'000);

struct DusartBound {
  double value = 0;
  bool in_validity = false;  // the explicit prime bounds used need k > exp(18)
};

// k(1 + 1/log k + 1/log^2 k)(log k + log log k - 0.9061) - k
DusartBound dusart_diameter_bound(double k);

}  // namespace ergaps
