#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ergaps/prime_engine.hpp"

namespace ergaps {

// max over residues a coprime to q of |pi_P(x; q, a) - pi_P(x)/phi(q)|.
// Requires (q, B) = 1; the comparison point is pi_P(x)/phi(q) as such, not
// the (p, q) = 1 restricted count.
double sw_error(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t x,
                std::uint64_t q);

// sum of sw_error(x, q) over q <= x^theta with (q, B) = 1, exact per term.
// Terms are accumulated in ascending q order; per_q (optional) receives the
// (q, term) breakdown.
double bv_sum(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t x,
              double theta,
              std::vector<std::pair<std::uint64_t, double>>* per_q = nullptr,
              int workers = 1);

struct ExpRange {
  double a = 0, b = 0;  // the factor range [N^a, N^b]
};

// Equidistribution error sum for products of r distinct set primes with
// per-factor ranges: sum over q <= N^q_exponent of
// max_{(a,q)=1} | (1/phi(q)) #{n < N^u in F_r, (n,q)=1} - #{n < N^u in F_r, n=a mod q} |.
// No (q, B) = 1 filter here; the per-prime sum above has one.
double bv_sum_beta_r(const SieveTable& table, const PrimeSetSpec& spec, double N, double u,
                     int r, const std::vector<ExpRange>& ranges, double q_exponent,
                     std::vector<std::pair<std::uint64_t, double>>* per_q = nullptr);

// Enumerates F_r for the given per-factor ranges: squarefree products of r
// distinct set primes that can be matched one-to-one to the ranges.
std::vector<std::uint64_t> enumerate_Fr(const SieveTable& table, const PrimeSetSpec& spec,
                                        double N, double u, int r,
                                        const std::vector<ExpRange>& ranges);

}  // namespace ergaps
