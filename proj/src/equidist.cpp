#include "ergaps/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ergaps/errors.hpp"
#include "ergaps/parallel.hpp"

namespace ergaps {

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

void check_table_spec(const SieveTable& table, const PrimeSetSpec& spec) {
  if (!(spec == table.spec()))
    throw parameter_error("prime set spec does not match the sieve table's");
}

constexpr std::uint64_t kMaxModulus = 1'000'000;  // bucket array memory cap

}  // namespace

double sw_error(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t x,
                std::uint64_t q) {
  check_table_spec(table, spec);
  if (x > table.limit()) throw parameter_error("sw_error query beyond sieve limit");
  if (q < 1) throw parameter_error("q must be at least 1");
  if (gcd_u64(q, spec.B) != 1)
    throw parameter_error("q must be coprime to the exceptional modulus B");
  if (q > kMaxModulus) throw resource_error("q exceeds the bucket memory cap of 1e6");

  const auto& ps = table.member_primes();
  const auto end = std::upper_bound(ps.begin(), ps.end(), x);
  std::vector<std::uint64_t> counts(q, 0);
  for (auto it = ps.begin(); it != end; ++it) ++counts[*it % q];
  const double expected =
      static_cast<double>(end - ps.begin()) / static_cast<double>(euler_phi(q));
  double best = 0.0;
  for (std::uint64_t a = 0; a < q; ++a) {
    if (gcd_u64(a, q) != 1) continue;
    best = std::max(best, std::abs(static_cast<double>(counts[a]) - expected));
  }
  return best;
}

double bv_sum(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t x,
              double theta,
              std::vector<std::pair<std::uint64_t, double>>* per_q, int workers) {
  check_table_spec(table, spec);
  if (x > table.limit()) throw parameter_error("bv_sum query beyond sieve limit");
  if (!(theta >= 0)) throw parameter_error("theta must be nonnegative");
  const std::uint64_t q_max = static_cast<std::uint64_t>(
      std::pow(static_cast<double>(x), theta) * (1.0 + 1e-12));
  if (q_max > kMaxModulus) throw resource_error("x^theta exceeds the modulus cap of 1e6");

  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 1; q <= q_max; ++q)
    if (gcd_u64(q, spec.B) == 1) qs.push_back(q);

  auto terms = parallel_blocks<double>(qs.size(), workers, [&](std::size_t i) {
    return sw_error(table, spec, x, qs[i]);
  });

  double sum = 0.0;  // ascending q order keeps the total bit-stable
  for (std::size_t i = 0; i < qs.size(); ++i) {
    sum += terms[i];
    if (per_q) per_q->emplace_back(qs[i], terms[i]);
  }
  return sum;
}

std::vector<std::uint64_t> enumerate_Fr(const SieveTable& table, const PrimeSetSpec& spec,
                                        double N, double u, int r,
                                        const std::vector<ExpRange>& ranges) {
  check_table_spec(table, spec);
  if (r < 1) throw parameter_error("r must be at least 1");
  if (static_cast<int>(ranges.size()) != r)
    throw parameter_error("need one factor range per factor");
  if (!(N > 1) || !(u > 0)) throw parameter_error("N and u must exceed 1 and 0");

  const double limit_d = std::pow(N, u);
  if (limit_d > static_cast<double>(table.limit()) + 1)
    throw resource_error("N^u exceeds the sieve table");
  // n < N^u; exact powers are excluded by the strict inequality
  std::uint64_t n_max = static_cast<std::uint64_t>(limit_d);
  if (static_cast<double>(n_max) == limit_d) --n_max;

  struct Bounds {
    std::uint64_t lo, hi;
  };
  std::vector<Bounds> bounds(r);
  std::uint64_t union_lo = UINT64_MAX, union_hi = 0;
  for (int i = 0; i < r; ++i) {
    const double lo_d = std::pow(N, ranges[i].a), hi_d = std::pow(N, ranges[i].b);
    if (!(ranges[i].a <= ranges[i].b)) throw parameter_error("factor range reversed");
    bounds[i].lo = static_cast<std::uint64_t>(std::ceil(lo_d * (1.0 - 1e-14)));
    bounds[i].hi = static_cast<std::uint64_t>(hi_d * (1.0 + 1e-14));
    union_lo = std::min(union_lo, bounds[i].lo);
    union_hi = std::max(union_hi, bounds[i].hi);
  }

  const auto& ps = table.member_primes();
  auto lo_it = std::lower_bound(ps.begin(), ps.end(), union_lo);
  auto hi_it = std::upper_bound(lo_it, ps.end(), std::min<std::uint64_t>(union_hi, n_max));
  const std::vector<std::uint64_t> pool(lo_it, hi_it);

  // a prime multiset belongs to F_r iff it can be matched one-to-one to the
  // ranges; bitmask DP over range subsets
  auto matchable = [&](const std::vector<std::uint64_t>& chosen) {
    std::vector<char> reachable(1u << r, 0);
    reachable[0] = 1;
    for (std::size_t j = 0; j < chosen.size(); ++j) {
      std::vector<char> next(1u << r, 0);
      for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        if (!reachable[mask]) continue;
        for (int i = 0; i < r; ++i) {
          if (mask & (1u << i)) continue;
          if (chosen[j] < bounds[i].lo || chosen[j] > bounds[i].hi) continue;
          next[mask | (1u << i)] = 1;
        }
      }
      reachable.swap(next);
    }
    return reachable[(1u << r) - 1] != 0;
  };

  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> chosen;
  auto dfs = [&](auto&& self, std::size_t start, int remaining, std::uint64_t prefix) -> void {
    if (remaining == 0) {
      if (matchable(chosen)) out.push_back(prefix);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      const std::uint64_t p = pool[i];
      if (prefix > n_max / p) break;
      chosen.push_back(p);
      self(self, i + 1, remaining - 1, prefix * p);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0, r, 1);
  std::sort(out.begin(), out.end());
  return out;
}

double bv_sum_beta_r(const SieveTable& table, const PrimeSetSpec& spec, double N, double u,
                     int r, const std::vector<ExpRange>& ranges, double q_exponent,
                     std::vector<std::pair<std::uint64_t, double>>* per_q) {
  const auto fr = enumerate_Fr(table, spec, N, u, r, ranges);
  const std::uint64_t q_max = static_cast<std::uint64_t>(
      std::pow(N, q_exponent) * (1.0 + 1e-12));
  if (q_max > kMaxModulus) throw resource_error("q range exceeds the modulus cap of 1e6");

  double sum = 0.0;
  std::vector<std::uint64_t> residue_counts;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    residue_counts.assign(q, 0);
    std::uint64_t coprime_total = 0;
    for (std::uint64_t n : fr) {
      ++residue_counts[n % q];
      if (gcd_u64(n, q) == 1) ++coprime_total;
    }
    const double expected =
        static_cast<double>(coprime_total) / static_cast<double>(euler_phi(q));
    double best = 0.0;
    for (std::uint64_t a = 0; a < q; ++a) {
      if (gcd_u64(a, q) != 1) continue;
      best = std::max(best, std::abs(expected - static_cast<double>(residue_counts[a])));
    }
    sum += best;
    if (per_q) per_q->emplace_back(q, best);
  }
  return sum;
}

}  // namespace ergaps
