#include "ergaps/functional.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ergaps/errors.hpp"
#include "ergaps/parallel.hpp"
#include "ergaps/rng.hpp"

namespace ergaps {

TSigma compute_T_sigma(double A) {
  if (!(A > 0)) throw parameter_error("A must be positive");
  TSigma out;
  out.T = std::expm1(A) / A;
  if (A < 1e-3) {
    // series of (A - 1 + e^-A)/A^2; the direct form cancels badly near 0
    out.sigma = 0.5 - A / 6.0 + A * A / 24.0 - A * A * A / 120.0;
  } else {
    out.sigma = (A - 1.0 + std::exp(-A)) / (A * A);
  }
  return out;
}

double g_eval(double A, double t) {
  const double T = compute_T_sigma(A).T;
  if (t < 0.0 || t > T) return 0.0;
  return 1.0 / (1.0 + A * t);
}

namespace {

using boost::math::quadrature::gauss_kronrod;

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int max_depth, double tol, double* err_out = nullptr) {
  if (b <= a) {
    if (err_out) *err_out = 0;
    return 0.0;
  }
  double err = 0;
  double v = gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, tol, &err);
  if (err_out) *err_out = err;
  return v;
}

}  // namespace

GIdentities integral_identities_check(double A) {
  const double T = compute_T_sigma(A).T;
  double e0, e1, e2;
  GIdentities m{};
  m.m0 = integrate_1d([A](double t) { return 1.0 / (1.0 + A * t); }, 0, T, 15, 1e-13, &e0);
  m.m1 = integrate_1d([A](double t) { double g = 1.0 / (1.0 + A * t); return g * g; },
                      0, T, 15, 1e-13, &e1);
  m.m2 = integrate_1d([A](double t) { double g = 1.0 / (1.0 + A * t); return t * g * g; },
                      0, T, 15, 1e-13, &e2);
  const double scale = std::max(1.0, T);
  if (e0 > 1e-10 * scale || e1 > 1e-10 * scale || e2 > 1e-10 * scale)
    throw numerical_error("quadrature of the g moments did not converge");
  return m;
}

FunctionalParams make_params(double k, int r, double theta, double A) {
  if (!(k >= 1)) throw parameter_error("k must be at least 1");
  if (r < 2) throw parameter_error("r must be at least 2");
  if (!(theta > 0) || theta > 0.5) throw parameter_error("theta must lie in (0, 1/2]");
  FunctionalParams p;
  p.k = k;
  p.r = r;
  p.theta = theta;
  p.A = A;
  const TSigma ts = compute_T_sigma(A);
  p.T = ts.T;
  p.sigma = ts.sigma;
  p.eta = p.T * theta / (2.0 * k);
  return p;
}

std::optional<double> ratio_lower_bound(double k, double A) {
  if (!(k >= 2)) throw parameter_error("k must be at least 2");
  const TSigma ts = compute_T_sigma(A);
  if (!(1.0 - ts.T / k - ts.sigma > 0.0)) return std::nullopt;
  const double eA = std::exp(A);
  const double base = 1.0 - A / (eA - 1.0) - eA / k;
  return A * (1.0 - A * eA / (k * base * base));
}

ChosenParams choose_A_eta(double k, int r, double theta) {
  if (r < 2) throw parameter_error("r must be at least 2");
  if (!(k >= std::exp(static_cast<double>(r))))
    throw parameter_error("k must be at least e^r");
  ChosenParams out;
  const double A = std::log(k) / r;
  out.params = make_params(k, r, theta, A);
  out.lemma_bound = ratio_lower_bound(k, A);
  out.condition_ok = out.lemma_bound.has_value();
  out.bound_meets_target =
      out.lemma_bound.has_value() && *out.lemma_bound >= std::log(k) / r - 1.0;
  return out;
}

IntegrationMethod parse_method(const std::string& name) {
  if (name == "quadrature") return IntegrationMethod::quadrature;
  if (name == "montecarlo" || name == "mc") return IntegrationMethod::montecarlo;
  throw parameter_error("unknown integration method: " + name);
}

namespace {

// Geometry shared by the I and J integrands. Each coordinate lives in [0, c],
// c = min(T/k, 1); the simplex constraint enters through the running sum.
struct ProductRegion {
  double c;  // per-axis cap
  double a;  // A * k

  double gk2(double x) const {
    const double v = 1.0 + a * x;
    return 1.0 / (v * v);
  }
  // closed form of the innermost I-integral: int_0^{min(u,c)} g(k t)^2 dt
  double Z1(double u) const {
    const double w = std::min(u, c);
    if (w <= 0.0) return 0.0;
    return w / (1.0 + a * w);
  }
  // int_0^{min(u,c)} g(k t) dt
  double G1(double u) const {
    const double w = std::min(u, c);
    if (w <= 0.0) return 0.0;
    return std::log1p(a * w) / a;
  }
};

ProductRegion region_for(const FunctionalParams& p) {
  ProductRegion r;
  r.c = std::min(p.T / p.k, 1.0);
  r.a = p.A * p.k;
  return r;
}

int integral_k(const FunctionalParams& p) {
  const double kd = p.k;
  const int k = static_cast<int>(kd);
  if (kd != static_cast<double>(k) || k < 1)
    throw parameter_error("integration needs an integral k >= 1");
  return k;
}

// Nested 1-d quadrature over `axes` coordinates, each weighted by g(k x)^2,
// with `inner` evaluated at the accumulated sum. The upper limit min(c, 1-s)
// is where both the box and the simplex cut off the integrand.
double nest(const ProductRegion& R, int axes, double s,
            const std::function<double(double)>& inner, int max_depth, double tol) {
  if (axes == 0) return inner(s);
  auto f = [&](double x) { return R.gk2(x) * nest(R, axes - 1, s + x, inner, max_depth, tol); };
  return integrate_1d(f, 0.0, std::min(R.c, 1.0 - s), max_depth, tol);
}

struct QuadratureSettings {
  int depth_fine, depth_coarse;
  double tol_fine, tol_coarse;
};

QuadratureSettings quad_settings(std::uint64_t budget) {
  QuadratureSettings s{12, 8, 1e-11, 1e-8};
  if (budget > 0 && budget < 1u << 12) s.depth_fine = 10;
  return s;
}

Estimate quad_estimate(const ProductRegion& R, int axes,
                       const std::function<double(double)>& inner, std::uint64_t budget) {
  const QuadratureSettings qs = quad_settings(budget);
  const double fine = nest(R, axes, 0.0, inner, qs.depth_fine, qs.tol_fine);
  const double coarse = nest(R, axes, 0.0, inner, qs.depth_coarse, qs.tol_coarse);
  Estimate e;
  e.value = fine;
  e.error = std::abs(fine - coarse) + 1e-14 * std::abs(fine);
  return e;
}

// Inverse CDF of the density proportional to g(k t)^2 on [0, c].
double sample_gk2(const ProductRegion& R, double xi) {
  return xi * R.c / (1.0 + R.a * R.c * (1.0 - xi));
}

struct McPlan {
  std::uint64_t n_blocks = 512;
  std::uint64_t total;
  std::uint64_t block_size(std::uint64_t b) const {
    return total / n_blocks + (b < total % n_blocks ? 1 : 0);
  }
};

constexpr int kMaxQuadratureK = 4;
constexpr int kMaxMonteCarloK = 64;

Estimate mc_I(const FunctionalParams& p, std::uint64_t budget, std::uint64_t seed,
              int workers) {
  const int k = integral_k(p);
  const ProductRegion R = region_for(p);
  const double Z = R.Z1(R.c);
  McPlan plan{512, std::max<std::uint64_t>(budget, 512)};

  auto hits_of_block = parallel_blocks<std::uint64_t>(
      plan.n_blocks, workers, [&](std::size_t b) -> std::uint64_t {
        SplitMix64 rng(block_seed(seed, b));
        const std::uint64_t n = plan.block_size(b);
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
          double s = 0.0;
          for (int j = 0; j < k; ++j) s += sample_gk2(R, rng.next_unit());
          if (s <= 1.0) ++hits;
        }
        return hits;
      });

  std::uint64_t hits = 0;
  for (std::uint64_t h : hits_of_block) hits += h;
  const double n = static_cast<double>(plan.total);
  const double phat = static_cast<double>(hits) / n;
  const double mass = std::pow(Z, k);
  Estimate e;
  e.value = mass * phat;
  e.error = 3.0 * mass * std::sqrt(std::max(phat * (1.0 - phat), 1.0 / n) / n);
  return e;
}

struct MomentPair {
  double sum = 0, sumsq = 0;
};

Estimate mc_J1(const FunctionalParams& p, std::uint64_t budget, std::uint64_t seed,
               int workers) {
  const int k = integral_k(p);
  const ProductRegion R = region_for(p);
  const double Z = R.Z1(R.c);

  if (k == 1) {
    const double v = R.G1(1.0);
    return Estimate{v * v, 0.0};
  }

  McPlan plan{512, std::max<std::uint64_t>(budget, 512)};
  auto moments = parallel_blocks<MomentPair>(
      plan.n_blocks, workers, [&](std::size_t b) {
        SplitMix64 rng(block_seed(seed, b));
        const std::uint64_t n = plan.block_size(b);
        MomentPair m;
        for (std::uint64_t i = 0; i < n; ++i) {
          double s = 0.0;
          for (int j = 0; j < k - 1; ++j) s += sample_gk2(R, rng.next_unit());
          const double y = R.G1(1.0 - s);
          m.sum += y * y;
          m.sumsq += y * y * y * y;
        }
        return m;
      });

  MomentPair total;
  for (const auto& m : moments) {  // fixed block order keeps the sum bit-stable
    total.sum += m.sum;
    total.sumsq += m.sumsq;
  }
  const double n = static_cast<double>(plan.total);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sumsq - total.sum * total.sum / n) / (n - 1.0));
  const double mass = std::pow(Z, k - 1);
  Estimate e;
  e.value = mass * mean;
  e.error = 3.0 * mass * std::sqrt(var / n);
  return e;
}

void check_method_limit(IntegrationMethod method, int k) {
  if (method == IntegrationMethod::quadrature && k > kMaxQuadratureK)
    throw parameter_error("quadrature is limited to k <= 4; use montecarlo");
  if (method == IntegrationMethod::montecarlo && k > kMaxMonteCarloK)
    throw parameter_error("montecarlo is limited to k <= 64");
}

}  // namespace

Estimate I_k(const FunctionalParams& p, IntegrationMethod method, std::uint64_t budget,
             std::uint64_t seed, int workers) {
  const int k = integral_k(p);
  check_method_limit(method, k);
  const ProductRegion R = region_for(p);

  if (method == IntegrationMethod::quadrature) {
    if (k == 1) return Estimate{R.Z1(1.0), 0.0};
    return quad_estimate(R, k - 1, [&](double s) { return R.Z1(1.0 - s); }, budget);
  }
  if (k == 1) return Estimate{R.Z1(1.0), 0.0};  // every sample lands in [0, c], c <= 1
  return mc_I(p, budget, seed, workers);
}

Estimate J_single(const FunctionalParams& p, int m, IntegrationMethod method,
                  std::uint64_t budget, std::uint64_t seed, int workers) {
  const int k = integral_k(p);
  if (m < 1 || m > k) throw parameter_error("m must lie in [1, k]");
  check_method_limit(method, k);
  const ProductRegion R = region_for(p);
  // F is symmetric, so the result does not depend on m (and the Monte Carlo
  // stream deliberately ignores m: a common seed gives identical estimates).
  if (method == IntegrationMethod::quadrature) {
    if (k == 1) {
      const double v = R.G1(1.0);
      return Estimate{v * v, 0.0};
    }
    auto inner = [&](double s) {
      const double v = R.G1(1.0 - s);
      return v * v;
    };
    return quad_estimate(R, k - 1, inner, budget);
  }
  return mc_J1(p, budget, seed, workers);
}

Estimate J_sum(const FunctionalParams& p, IntegrationMethod method, std::uint64_t budget,
               std::uint64_t seed, int workers) {
  const int k = integral_k(p);
  Estimate one = J_single(p, 1, method, budget, seed, workers);
  return Estimate{k * one.value, k * one.error};
}

}  // namespace ergaps
