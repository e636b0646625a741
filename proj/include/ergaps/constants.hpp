#pragma once

#include <cstdint>
#include <optional>

namespace ergaps {

// exp(r + (r/delta) * (2 B rho (r-1)! / (phi(B) theta (r-1)^(r-1)))^(1/r)),
// the tuple-length threshold guaranteeing rho+1 hits.
double k_threshold(int r, double rho, double delta, std::uint64_t B, double theta);

struct NuResult {
  bool available = false;  // false when the supplied functional bound is vacuous
  long long value = 0;
  double raw = 0;  // the expression before the ceiling
  double eta = 0;
  double M_lower = 0;
};

// ceil( theta phi(B) delta^r M_lower / (2 B (r-1)!) * log(1/(2(r-1)eta))^(r-1) )
// with eta derived from A = log(k)/r. Since M_lower only bounds the true
// functional supremum from below, the result is itself a lower bound.
NuResult nu(double k, int r, double delta, std::uint64_t B, double theta, double M_lower);

struct ScriptL {
  double script_L = 0;
  double gap_bound = 0;  // script_L * log(script_L)
};

// Gap constant for m-tuples: the threshold formula with rho replaced by m.
ScriptL script_L_and_gap(int r, int m, double delta, std::uint64_t B, double theta);

struct ExampleC {
  double k_chosen = 0;  // ceil(exp(2 + 16 sqrt(2(m-1))))
  double C = 0;         // diameter bound of the primes-after-k tuple at k_chosen
  double exponent = 0;
  bool dusart_validity = false;
};

// Worked gap constant for products of two primes p = 1 mod 8 (density 1/4,
// B = 2, theta = 1/2).
ExampleC example_C(int m);

}  // namespace ergaps
