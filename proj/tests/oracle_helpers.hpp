// Independent reference implementations used only to cross-check the library.
// Everything here takes the slow, obvious route on purpose: trial division,
// full factorization, exhaustive search, plain uniform sampling.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

inline bool trial_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> trial_primes(std::uint64_t X) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= X; ++n)
    if (trial_is_prime(n)) out.push_back(n);
  return out;
}

// plain one-shot Eratosthenes, no segmentation
inline std::vector<char> simple_sieve(std::uint64_t X) {
  std::vector<char> is(X + 1, 1);
  if (X >= 0) is[0] = 0;
  if (X >= 1) is[1] = 0;
  for (std::uint64_t i = 2; i * i <= X; ++i)
    if (is[i])
      for (std::uint64_t j = i * i; j <= X; j += i) is[j] = 0;
  return is;
}

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> f;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      f.emplace_back(p, e);
    }
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

// squarefree product of exactly r distinct primes, all passing `in_set`
inline bool is_Er_member(std::uint64_t n, int r,
                         const std::function<bool(std::uint64_t)>& in_set) {
  auto f = factorize(n);
  if (static_cast<int>(f.size()) != r) return false;
  for (const auto& [p, e] : f) {
    if (e != 1) return false;
    if (!in_set(p)) return false;
  }
  return true;
}

// E_r up to X by factorizing every integer
inline std::vector<std::uint64_t> brute_Er(std::uint64_t X, int r,
                                           const std::function<bool(std::uint64_t)>& in_set) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= X; ++n)
    if (is_Er_member(n, r, in_set)) out.push_back(n);
  return out;
}

// admissibility by explicit residue sets over every prime ell <= ell_max
inline bool exhaustive_admissible(const std::vector<std::int64_t>& offsets,
                                  std::uint64_t ell_max) {
  for (std::uint64_t ell = 2; ell <= ell_max; ++ell) {
    if (!trial_is_prime(ell)) continue;
    std::set<std::uint64_t> residues;
    for (std::int64_t h : offsets) {
      std::int64_t r = h % static_cast<std::int64_t>(ell);
      if (r < 0) r += static_cast<std::int64_t>(ell);
      residues.insert(static_cast<std::uint64_t>(r));
    }
    if (residues.size() == ell) return false;
  }
  return true;
}

// T_N by a literal double loop over (q, t) pairs; r = 2 only
inline std::uint64_t brute_T_N_r2(std::uint64_t N, double eta,
                                  const std::vector<char>& is_prime,
                                  const std::function<bool(std::uint64_t)>& in_set) {
  std::uint64_t total = 0;
  const double lo = std::pow(static_cast<double>(N), eta);
  for (std::uint64_t q = 2; q * q < N; ++q) {
    if (!is_prime[q] || !in_set(q) || static_cast<double>(q) < lo * (1.0 - 1e-14)) continue;
    for (std::uint64_t t = (N + q - 1) / q; t * q < 2 * N; ++t)
      if (t <= is_prime.size() - 1 && is_prime[t] && in_set(t) && t * t >= N) ++total;
  }
  return total;
}

}  // namespace oracle
