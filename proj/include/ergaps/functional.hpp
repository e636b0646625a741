#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ergaps {

// Parameters of the product test weight built from g(t) = 1/(1+At) on [0,T].
// T and sigma are always derived from A; eta = T*theta/(2k).
struct FunctionalParams {
  double k = 2;  // number of linear forms; must be integral for the integrals
  int r = 2;
  double theta = 0.5;
  double A = 1;
  double T = 0;
  double sigma = 0;
  double eta = 0;
};

struct TSigma {
  double T;      // (e^A - 1)/A
  double sigma;  // (A - 1 + e^-A)/A^2
};

TSigma compute_T_sigma(double A);

// g(t) = 1/(1+At) for 0 <= t <= T, else 0
double g_eval(double A, double t);

// Quadrature of the three moments of g over [0,T]. The closed forms are
// m0 = 1, m1 = (1 - e^-A)/A, m2 = sigma; callers compare against those.
struct GIdentities {
  double m0, m1, m2;
};
GIdentities integral_identities_check(double A);

FunctionalParams make_params(double k, int r, double theta, double A);

// Closed-form lower bound for J_sum/I_k at (k, A); empty when the
// availability condition 1 - T/k - sigma > 0 fails. May be negative.
std::optional<double> ratio_lower_bound(double k, double A);

struct ChosenParams {
  FunctionalParams params;
  bool condition_ok = false;  // 1 - T/k - sigma > 0
  std::optional<double> lemma_bound;
  bool bound_meets_target = false;  // lemma_bound >= log(k)/r - 1
};

// A = log(k)/r, eta = T*theta/(2k); requires k >= e^r.
ChosenParams choose_A_eta(double k, int r, double theta);

enum class IntegrationMethod { quadrature, montecarlo };
IntegrationMethod parse_method(const std::string& name);

struct Estimate {
  double value = 0;
  double error = 0;  // conservative: 3 standard errors (MC), refinement difference (quadrature)
};

// I_k = integral of F^2 over {x in [0,1]^k : x_i <= T/k, sum x_i <= 1},
// F = prod_i g(k x_i). Quadrature is limited to k <= 4, Monte Carlo to k <= 64.
Estimate I_k(const FunctionalParams& p, IntegrationMethod method,
             std::uint64_t budget, std::uint64_t seed = 1, int workers = 1);

// sum over m of J_k^(m)(F) = k * J_k^(1)(F) by symmetry of F
Estimate J_sum(const FunctionalParams& p, IntegrationMethod method,
               std::uint64_t budget, std::uint64_t seed = 1, int workers = 1);

// J_k^(m)(F) for one m; independent of m since F is symmetric
Estimate J_single(const FunctionalParams& p, int m, IntegrationMethod method,
                  std::uint64_t budget, std::uint64_t seed = 1, int workers = 1);

}  // namespace ergaps
