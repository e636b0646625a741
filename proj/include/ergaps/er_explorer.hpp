#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ergaps/prime_engine.hpp"

namespace ergaps {

struct ErConfig {
  int r = 2;
  std::uint64_t X = 0;
  PrimeSetSpec spec = PrimeSetSpec::all_primes();
};

// All n <= X that are products of exactly r distinct primes of the set,
// ascending and exact. r = 1 degenerates to the member primes themselves.
std::vector<std::uint64_t> enumerate_Er(const SieveTable& table, const ErConfig& cfg,
                                        int workers = 1);

// Products p_1 ... p_h with N^eta <= p_1 < ... < p_h, p_h >= N^(1/2), and
// product <= 2N (the window the counting argument looks at).
std::vector<std::uint64_t> enumerate_Eh_constrained(const SieveTable& table,
                                                    const PrimeSetSpec& spec,
                                                    std::uint64_t N, int h, double eta);

struct GapScanResult {
  int m = 1;
  std::uint64_t min_window = 0;  // min over n of a_{n+m} - a_n
  std::uint64_t location = 0;    // the element a_n achieving it (first occurrence)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;  // (gap, count), consecutive gaps
};

GapScanResult gap_scan(const std::vector<std::uint64_t>& list, int m);

struct TnReport {
  std::uint64_t t_n = 0;
  double lower_bound = 0;
  double ratio = 0;
  std::uint64_t q_count = 0;  // number of terms in the restricted q-sum
};

// T_N = sum over q = p_1...p_{r-1} < N^(1/2), N^eta <= p_1 < ... < p_{r-1},
// of X_{N/q}, where X_n counts members in [n, 2n) that are >= N^(1/2).
// The lower bound is delta^r N / (log N (r-1)!) * log(1/(2(r-1)eta))^(r-1).
TnReport compute_T_N(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t N,
                     int r, double eta, int workers = 1);

struct Interval {
  std::uint64_t lo = 0, hi = 0;  // closed
};

struct ConvolutionReport {
  std::uint64_t X = 0;
  int r = 0;
  int c = 0;
  std::vector<std::uint64_t> exceptional;  // n with conv(n) != c * beta_r(n)
  std::int64_t max_abs_deviation = 0;
  bool clean_off_squares = false;  // every exception divisible by p^2, p in the last range
};

// Checks that beta_{r-1} * 1_{P_last} = c * beta_r away from integers divisible
// by the square of a set prime in `range_last`. The first r-1 factors all draw
// from `range_head`; the two ranges must be identical (c = r) or disjoint (c = 1).
ConvolutionReport convolution_delta_check(const SieveTable& table, const PrimeSetSpec& spec,
                                          std::uint64_t X, int r, Interval range_head,
                                          Interval range_last, int c);

}  // namespace ergaps
