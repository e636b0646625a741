#include "ergaps/constants.hpp"

#include <cmath>

#include "ergaps/admissible.hpp"
#include "ergaps/errors.hpp"
#include "ergaps/functional.hpp"
#include "ergaps/prime_engine.hpp"

namespace ergaps {

namespace {

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_domain(int r, double rho, double delta, std::uint64_t B, double theta) {
  if (r < 2) throw parameter_error("r must be at least 2");
  if (!(rho > 0)) throw parameter_error("rho must be positive");
  if (!(delta > 0) || delta > 1) throw parameter_error("delta must lie in (0, 1]");
  if (B < 1 || !is_squarefree(B)) throw parameter_error("B must be squarefree and positive");
  if (!(theta > 0) || theta > 0.5) throw parameter_error("theta must lie in (0, 1/2]");
}

}  // namespace

double k_threshold(int r, double rho, double delta, std::uint64_t B, double theta) {
  check_domain(r, rho, delta, B, theta);
  const double num = 2.0 * static_cast<double>(B) * rho * factorial(r - 1);
  const double den =
      static_cast<double>(euler_phi(B)) * theta * std::pow(static_cast<double>(r - 1), r - 1);
  return std::exp(r + (r / delta) * std::pow(num / den, 1.0 / r));
}

NuResult nu(double k, int r, double delta, std::uint64_t B, double theta, double M_lower) {
  check_domain(r, /*rho=*/1.0, delta, B, theta);
  const ChosenParams cp = choose_A_eta(k, r, theta);
  const double eta = cp.params.eta;
  if (!(eta < 1.0 / (2.0 * (r - 1))))
    throw parameter_error("eta must be below 1/(2(r-1)) for the gap count");

  NuResult out;
  out.eta = eta;
  out.M_lower = M_lower;
  if (!(M_lower > 0)) return out;  // vacuous bound, nu unavailable

  const double factor = theta * static_cast<double>(euler_phi(B)) * std::pow(delta, r) *
                        M_lower / (2.0 * static_cast<double>(B) * factorial(r - 1));
  out.raw = factor * std::pow(std::log(1.0 / (2.0 * (r - 1) * eta)), r - 1);
  out.value = static_cast<long long>(std::ceil(out.raw));
  out.available = true;
  return out;
}

ScriptL script_L_and_gap(int r, int m, double delta, std::uint64_t B, double theta) {
  if (m < 1) throw parameter_error("m must be at least 1");
  ScriptL out;
  out.script_L = k_threshold(r, static_cast<double>(m), delta, B, theta);
  out.gap_bound = out.script_L * std::log(out.script_L);
  return out;
}

ExampleC example_C(int m) {
  if (m < 2) throw parameter_error("m must be at least 2");
  ExampleC out;
  out.exponent = 2.0 + 16.0 * std::sqrt(2.0 * (m - 1));
  out.k_chosen = std::ceil(std::exp(out.exponent));
  const DusartBound b = dusart_diameter_bound(out.k_chosen);
  out.C = b.value;
  out.dusart_validity = b.in_validity;
  return out;
}

}  // namespace ergaps
