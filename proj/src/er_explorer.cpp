#include "ergaps/er_explorer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergaps/errors.hpp"
#include "ergaps/parallel.hpp"

namespace ergaps {

namespace {

// Smallest integer t with t >= x, for real thresholds like N^eta. Ties are
// included with a hair of slack so exact powers stay members.
std::uint64_t ceil_threshold(double x) {
  if (x <= 0) return 0;
  return static_cast<std::uint64_t>(std::ceil(x * (1.0 - 1e-14)));
}

std::uint64_t isqrt_floor(std::uint64_t n) {
  std::uint64_t s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

// smallest t with t*t >= n
std::uint64_t sqrt_ceil(std::uint64_t n) {
  const std::uint64_t s = isqrt_floor(n);
  return s * s == n ? s : s + 1;
}

// Appends every product prefix * p_{i_1} * ... * p_{i_depth} <= cutoff with
// start <= i_1 < ... < i_depth (ascending distinct factors).
void product_dfs(const std::vector<std::uint64_t>& ps, std::size_t start, int depth,
                 std::uint64_t prefix, std::uint64_t cutoff, std::vector<std::uint64_t>& out) {
  if (depth == 1) {
    for (std::size_t i = start; i < ps.size(); ++i) {
      if (ps[i] > cutoff / prefix) break;
      out.push_back(prefix * ps[i]);
    }
    return;
  }
  for (std::size_t i = start; i < ps.size(); ++i) {
    const std::uint64_t p = ps[i];
    if (p > cutoff / prefix) break;
    const std::uint64_t next = prefix * p;
    if (p > cutoff / next) break;  // prefix*p*p > cutoff: no room for a larger factor
    product_dfs(ps, i + 1, depth - 1, next, cutoff, out);
  }
}

}  // namespace

std::vector<std::uint64_t> enumerate_Er(const SieveTable& table, const ErConfig& cfg,
                                        int workers) {
  if (cfg.r < 1) throw parameter_error("r must be at least 1");
  if (cfg.X > table.limit())
    throw resource_error("enumeration limit exceeds the sieve table");
  const auto& ps = table.member_primes();

  if (cfg.r == 1) {
    auto end = std::upper_bound(ps.begin(), ps.end(), cfg.X);
    return std::vector<std::uint64_t>(ps.begin(), end);
  }

  // indices that can start a product: the r consecutive members from i must fit
  std::size_t first_count = 0;
  while (first_count + cfg.r <= ps.size()) {
    std::uint64_t prod = ps[first_count];
    bool fits = true;
    for (int j = 1; j < cfg.r; ++j) {
      const std::uint64_t p = ps[first_count + j];
      if (p > cfg.X / prod) {
        fits = false;
        break;
      }
      prod *= p;
    }
    if (!fits) break;
    ++first_count;
  }
  if (first_count == 0) return {};

  const std::size_t n_blocks = std::min<std::size_t>(
      first_count, workers > 1 ? static_cast<std::size_t>(4 * workers) : 1);
  const std::size_t chunk = (first_count + n_blocks - 1) / n_blocks;

  auto parts = parallel_blocks<std::vector<std::uint64_t>>(
      n_blocks, workers, [&](std::size_t b) {
        std::vector<std::uint64_t> out;
        const std::size_t from = b * chunk, to = std::min(first_count, from + chunk);
        for (std::size_t i = from; i < to; ++i)
          product_dfs(ps, i + 1, cfg.r - 1, ps[i], cfg.X, out);
        return out;
      });

  std::vector<std::uint64_t> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> enumerate_Eh_constrained(const SieveTable& table,
                                                    const PrimeSetSpec& spec,
                                                    std::uint64_t N, int h, double eta) {
  if (!(spec == table.spec()))
    throw parameter_error("prime set spec does not match the sieve table's");
  if (N < 2) throw parameter_error("N must be at least 2");
  if (h < 1) throw parameter_error("h must be at least 1");
  if (!(eta > 0) || eta >= 1.0 / h) throw parameter_error("eta must lie in (0, 1/h)");
  if (2 * N > table.limit()) throw resource_error("sieve table must cover 2N");

  const std::uint64_t p_min =
      std::max<std::uint64_t>(2, ceil_threshold(std::pow(static_cast<double>(N), eta)));
  const std::uint64_t bar = sqrt_ceil(N);  // the largest factor must clear sqrt(N)
  const std::uint64_t cutoff = 2 * N;
  const auto& ps = table.member_primes();

  std::vector<std::uint64_t> out;
  auto dfs = [&](auto&& self, std::size_t start, int remaining,
                 std::uint64_t prefix) -> void {
    if (remaining == 1) {
      std::size_t i = static_cast<std::size_t>(
          std::lower_bound(ps.begin() + start, ps.end(), bar) - ps.begin());
      for (; i < ps.size(); ++i) {
        if (prefix > cutoff / ps[i]) break;
        out.push_back(prefix * ps[i]);
      }
      return;
    }
    for (std::size_t i = start; i < ps.size(); ++i) {
      const std::uint64_t p = ps[i];
      if (prefix > cutoff / p) break;
      self(self, i + 1, remaining - 1, prefix * p);
    }
  };

  const std::size_t first =
      static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), p_min) - ps.begin());
  if (h == 1) {
    for (std::size_t i = static_cast<std::size_t>(
             std::lower_bound(ps.begin() + first, ps.end(), bar) - ps.begin());
         i < ps.size() && ps[i] <= cutoff; ++i)
      out.push_back(ps[i]);
  } else {
    for (std::size_t i = first; i < ps.size(); ++i) {
      const std::uint64_t p = ps[i];
      if (p > cutoff / p) break;  // p^h > cutoff already
      dfs(dfs, i + 1, h - 1, p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GapScanResult gap_scan(const std::vector<std::uint64_t>& list, int m) {
  if (m < 1) throw parameter_error("window size m must be at least 1");
  if (list.size() <= static_cast<std::size_t>(m))
    throw parameter_error("list too short for window size m");

  GapScanResult res;
  res.m = m;
  res.min_window = UINT64_MAX;
  for (std::size_t i = 0; i + m < list.size(); ++i) {
    const std::uint64_t w = list[i + m] - list[i];
    if (w < res.min_window) {
      res.min_window = w;
      res.location = list[i];
    }
  }
  auto& hist = res.histogram;
  for (std::size_t i = 0; i + 1 < list.size(); ++i) {
    const std::uint64_t gap = list[i + 1] - list[i];
    auto it = std::lower_bound(hist.begin(), hist.end(), gap,
                               [](const auto& e, std::uint64_t g) { return e.first < g; });
    if (it != hist.end() && it->first == gap) ++it->second;
    else hist.insert(it, {gap, 1});
  }
  return res;
}

TnReport compute_T_N(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t N,
                     int r, double eta, int workers) {
  if (!(spec == table.spec()))
    throw parameter_error("prime set spec does not match the sieve table's");
  if (N < 4) throw parameter_error("N too small");
  if (r < 2) throw parameter_error("r must be at least 2");
  if (!(eta > 0) || !(eta < 1.0 / (2.0 * (r - 1))))
    throw parameter_error("eta must lie in (0, 1/(2(r-1)))");
  if (2 * N > table.limit()) throw resource_error("sieve table must cover 2N");

  const auto& ps = table.member_primes();
  const std::uint64_t p_min =
      std::max<std::uint64_t>(2, ceil_threshold(std::pow(static_cast<double>(N), eta)));
  const std::uint64_t bar = sqrt_ceil(N);

  // X_{N/q}: members t with N <= t*q < 2N and t >= sqrt(N)
  auto window_count = [&](std::uint64_t q) -> std::uint64_t {
    const std::uint64_t tlo = std::max((N + q - 1) / q, bar);
    const std::uint64_t thi = (2 * N - 1) / q;
    if (thi < tlo) return 0;
    auto lo_it = std::lower_bound(ps.begin(), ps.end(), tlo);
    auto hi_it = std::upper_bound(lo_it, ps.end(), thi);
    return static_cast<std::uint64_t>(hi_it - lo_it);
  };

  struct Part {
    std::uint64_t total = 0, q_count = 0;
  };

  const std::size_t begin_idx = static_cast<std::size_t>(
      std::lower_bound(ps.begin(), ps.end(), p_min) - ps.begin());
  std::size_t first_count = 0;
  while (begin_idx + first_count < ps.size()) {
    const std::uint64_t p = ps[begin_idx + first_count];
    if (p >= bar) break;  // any factor >= sqrt(N) pushes q past the cap
    ++first_count;
  }

  // q = ascending products of r-1 members >= N^eta with q^2 < N. Every factor
  // stays below sqrt(N), so q < N and q*q never overflows at sieve scale.
  auto q_dfs = [&](auto&& self, std::size_t start, int remaining, std::uint64_t prefix,
                   Part& part) -> void {
    if (remaining == 0) {
      part.total += window_count(prefix);
      ++part.q_count;
      return;
    }
    for (std::size_t i = start; i < ps.size(); ++i) {
      const std::uint64_t p = ps[i];
      if (p >= bar) break;
      const std::uint64_t q = prefix * p;
      if (q * q >= N) break;
      self(self, i + 1, remaining - 1, q, part);
    }
  };

  const std::size_t n_blocks = std::min<std::size_t>(
      std::max<std::size_t>(first_count, 1),
      workers > 1 ? static_cast<std::size_t>(4 * workers) : 1);
  const std::size_t chunk = (first_count + n_blocks - 1) / n_blocks;

  auto parts = parallel_blocks<Part>(n_blocks, workers, [&](std::size_t b) {
    Part part;
    const std::size_t from = b * chunk, to = std::min(first_count, from + chunk);
    for (std::size_t i = from; i < to; ++i) {
      const std::uint64_t p = ps[begin_idx + i];
      if (p * p >= N) continue;  // single factor must itself stay below sqrt(N)
      if (r == 2) {
        part.total += window_count(p);
        ++part.q_count;
      } else {
        q_dfs(q_dfs, begin_idx + i + 1, r - 2, p, part);
      }
    }
    return part;
  });

  TnReport rep;
  for (const auto& part : parts) {
    rep.t_n += part.total;
    rep.q_count += part.q_count;
  }
  const double delta = spec.delta();
  double fact = 1;
  for (int i = 2; i <= r - 1; ++i) fact *= i;
  rep.lower_bound = std::pow(delta, r) * static_cast<double>(N) /
                    (std::log(static_cast<double>(N)) * fact) *
                    std::pow(std::log(1.0 / (2.0 * (r - 1) * eta)), r - 1);
  rep.ratio = static_cast<double>(rep.t_n) / rep.lower_bound;
  return rep;
}

ConvolutionReport convolution_delta_check(const SieveTable& table, const PrimeSetSpec& spec,
                                          std::uint64_t X, int r, Interval range_head,
                                          Interval range_last, int c) {
  if (!(spec == table.spec()))
    throw parameter_error("prime set spec does not match the sieve table's");
  if (r < 2) throw parameter_error("r must be at least 2");
  if (X < 2 || X > table.limit())
    throw parameter_error("check limit must lie within the sieve table");
  if (X > 50'000'000) throw resource_error("convolution check capped at X = 5e7");
  if (range_head.lo > range_head.hi || range_last.lo > range_last.hi)
    throw parameter_error("empty prime range");

  const bool identical =
      range_head.lo == range_last.lo && range_head.hi == range_last.hi;
  const bool disjoint = range_head.hi < range_last.lo || range_last.hi < range_head.lo;
  if (!identical && !disjoint)
    throw parameter_error("prime ranges must be identical or disjoint");
  const int expected_c = identical ? r : 1;
  if (c != expected_c)
    throw parameter_error("multiplicity c must be " + std::to_string(expected_c) +
                          " for these ranges");

  const auto& ps = table.member_primes();
  auto members_in = [&](const Interval& iv) {
    auto lo = std::lower_bound(ps.begin(), ps.end(), iv.lo);
    auto hi = std::upper_bound(lo, ps.end(), std::min(iv.hi, X));
    return std::vector<std::uint64_t>(lo, hi);
  };
  const auto head_primes = members_in(range_head);
  const auto last_primes = members_in(range_last);

  // beta_{r-1}: products of r-1 distinct set primes from the head range
  std::vector<std::uint64_t> f_head;
  if (r == 2) {
    f_head = head_primes;
  } else {
    for (std::size_t i = 0; i < head_primes.size(); ++i)
      if (head_primes[i] <= X / head_primes[i])
        product_dfs(head_primes, i + 1, r - 2, head_primes[i], X, f_head);
    std::sort(f_head.begin(), f_head.end());
  }

  // (beta_{r-1} * 1_{P_last})(n) for n <= X
  std::vector<std::uint32_t> conv(X + 1, 0);
  for (std::uint64_t p : last_primes)
    for (std::uint64_t f : f_head) {
      if (f > X / p) break;
      ++conv[f * p];
    }

  // beta_r: all r factors from the common range when identical; otherwise
  // r-1 head factors and one last factor (distinct across disjoint ranges)
  std::vector<char> beta_r(X + 1, 0);
  if (identical) {
    std::vector<std::uint64_t> full;
    for (std::size_t i = 0; i < head_primes.size(); ++i)
      if (head_primes[i] <= X / head_primes[i])
        product_dfs(head_primes, i + 1, r - 1, head_primes[i], X, full);
    for (std::uint64_t n : full) beta_r[n] = 1;
  } else {
    for (std::uint64_t p : last_primes)
      for (std::uint64_t f : f_head) {
        if (f > X / p) break;
        beta_r[f * p] = 1;
      }
  }

  ConvolutionReport rep;
  rep.X = X;
  rep.r = r;
  rep.c = c;
  rep.clean_off_squares = true;
  for (std::uint64_t n = 2; n <= X; ++n) {
    const std::int64_t d = static_cast<std::int64_t>(conv[n]) -
                           static_cast<std::int64_t>(c) * (beta_r[n] ? 1 : 0);
    if (d == 0) continue;
    rep.exceptional.push_back(n);
    rep.max_abs_deviation = std::max<std::int64_t>(rep.max_abs_deviation, d < 0 ? -d : d);
    bool square_divides = false;
    for (std::uint64_t p : last_primes) {
      if (p > X / p) break;
      if (n % (p * p) == 0) {
        square_divides = true;
        break;
      }
    }
    if (!square_divides) rep.clean_off_squares = false;
  }
  return rep;
}

}  // namespace ergaps
