#include "ergaps/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "ergaps/errors.hpp"
#include "ergaps/parallel.hpp"

namespace ergaps {

Tuple make_tuple(std::vector<std::int64_t> offsets) {
  if (offsets.empty()) throw parameter_error("tuple must be nonempty");
  for (std::size_t i = 1; i < offsets.size(); ++i)
    if (offsets[i] <= offsets[i - 1])
      throw parameter_error("tuple offsets must be strictly ascending");
  return Tuple{std::move(offsets)};
}

Tuple read_tuple(std::istream& in) {
  std::vector<std::int64_t> offsets;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      offsets.push_back(std::stoll(line));
    } catch (const std::exception&) {
      throw parameter_error("bad tuple line: " + line);
    }
  }
  return make_tuple(std::move(offsets));
}

void write_tuple(const Tuple& t, std::ostream& out) {
  for (std::int64_t h : t.offsets) out << h << '\n';
}

namespace {

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<char> is(n + 1, 1);
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  is[0] = is[1] = 0;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (is[i]) {
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= n; j += i) is[j] = 0;
    }
  }
  return out;
}

std::uint64_t mod_residue(std::int64_t h, std::uint64_t ell) {
  std::int64_t r = h % static_cast<std::int64_t>(ell);
  if (r < 0) r += static_cast<std::int64_t>(ell);
  return static_cast<std::uint64_t>(r);
}

struct BlockVerdict {
  std::uint64_t covering_prime = 0;  // 0 = none in this block
  std::vector<std::pair<std::uint64_t, std::uint64_t>> missed;
};

// Coverage test for the primes in [from, to) of `ells`. Marks residues with an
// epoch-stamped scratch array; covering happens only when ell <= k.
BlockVerdict check_primes(const std::vector<std::uint32_t>& ells, std::size_t from,
                          std::size_t to, const std::vector<std::int64_t>& offsets) {
  BlockVerdict v;
  std::uint32_t max_ell = 0;
  for (std::size_t i = from; i < to; ++i) max_ell = std::max(max_ell, ells[i]);
  std::vector<std::uint32_t> stamp(max_ell, 0);
  std::uint32_t epoch = 0;
  for (std::size_t i = from; i < to; ++i) {
    const std::uint64_t ell = ells[i];
    ++epoch;
    std::uint64_t hit = 0;
    bool covered = false;
    for (std::int64_t h : offsets) {
      std::uint64_t r = mod_residue(h, ell);
      if (stamp[r] != epoch) {
        stamp[r] = epoch;
        if (++hit == ell) {
          covered = true;
          break;
        }
      }
    }
    if (covered) {
      v.covering_prime = ell;
      return v;
    }
    std::uint64_t rho = 0;
    while (stamp[rho] == epoch) ++rho;
    v.missed.emplace_back(ell, (ell - rho) % ell);
  }
  return v;
}

}  // namespace

AdmissibilityWitness is_admissible(const Tuple& t, int workers) {
  if (t.offsets.empty()) throw parameter_error("tuple must be nonempty");
  const std::uint32_t k = static_cast<std::uint32_t>(t.k());
  const auto ells = primes_up_to(k);  // only ell <= k can cover all classes

  AdmissibilityWitness w;
  if (ells.empty()) {
    w.admissible = true;
    return w;
  }

  const std::size_t n_blocks =
      std::min<std::size_t>(ells.size(), workers > 1 ? 4 * workers : 1);
  const std::size_t chunk = (ells.size() + n_blocks - 1) / n_blocks;
  auto verdicts = parallel_blocks<BlockVerdict>(n_blocks, workers, [&](std::size_t b) {
    std::size_t from = b * chunk;
    std::size_t to = std::min(ells.size(), from + chunk);
    if (from >= to) return BlockVerdict{};
    return check_primes(ells, from, to, t.offsets);
  });

  for (const auto& v : verdicts) {
    if (v.covering_prime) {
      w.admissible = false;
      w.covering_prime = v.covering_prime;
      w.missed_residues.clear();
      return w;
    }
    w.missed_residues.insert(w.missed_residues.end(), v.missed.begin(), v.missed.end());
  }
  w.admissible = true;
  return w;
}

std::uint64_t primes_gt_k_limit_hint(std::uint64_t k) {
  // upper bound for the (k + pi(k))-th prime, padded
  double n = static_cast<double>(k);
  double lk = std::log(std::max(3.0, n));
  n += n / lk + n / (lk * lk) + 8;
  double ln = std::log(n);
  double est = n * (ln + std::log(ln));
  return static_cast<std::uint64_t>(est * 1.05) + 256;
}

Tuple construct_primes_gt_k(std::uint64_t k, const SieveTable& table) {
  if (k < 1) throw parameter_error("k must be at least 1");
  if (!(table.spec() == PrimeSetSpec::all_primes()))
    throw parameter_error("construct_primes_gt_k needs an all-primes sieve table");
  const auto& primes = table.member_primes();
  auto it = std::upper_bound(primes.begin(), primes.end(), k);
  if (static_cast<std::uint64_t>(primes.end() - it) < k)
    throw resource_error("sieve limit " + std::to_string(table.limit()) +
                         " too small for the " + std::to_string(k) +
                         " primes after " + std::to_string(k) + "; about " +
                         std::to_string(primes_gt_k_limit_hint(k)) + " suffices");
  std::vector<std::int64_t> offsets(it, it + k);
  return Tuple{std::move(offsets)};
}

DusartBound dusart_diameter_bound(double k) {
  if (!(k > 1)) throw parameter_error("diameter bound needs k > 1");
  const double L = std::log(k);
  DusartBound b;
  b.value = k * (1.0 + 1.0 / L + 1.0 / (L * L)) * (L + std::log(L) - 0.9061) - k;
  b.in_validity = k >= std::exp(18.0);
  return b;
}

namespace {

// Depth-first search for an admissible pattern 0 = h_1 < ... < h_k = d.
// All offsets are even: 0 is in the tuple, so an odd offset would cover both
// residues mod 2. Residue coverage per odd prime ell <= k is maintained
// incrementally; a branch dies as soon as some ell has all classes hit.
struct NarrowSearch {
  int k;
  std::int64_t d;
  std::vector<std::uint32_t> ells;               // odd primes <= k
  std::vector<std::vector<std::uint16_t>> hits;  // hits[e][r] = multiplicity
  std::vector<std::uint32_t> covered;            // distinct residues hit
  std::vector<std::int64_t> chosen;
  std::uint64_t nodes = 0;
  std::uint64_t node_budget;

  bool push(std::int64_t h) {
    bool ok = true;
    for (std::size_t e = 0; e < ells.size(); ++e) {
      std::uint64_t r = mod_residue(h, ells[e]);
      if (hits[e][r]++ == 0 && ++covered[e] == ells[e]) ok = false;
    }
    chosen.push_back(h);
    return ok;
  }

  void pop() {
    std::int64_t h = chosen.back();
    chosen.pop_back();
    for (std::size_t e = 0; e < ells.size(); ++e) {
      std::uint64_t r = mod_residue(h, ells[e]);
      if (--hits[e][r] == 0) --covered[e];
    }
  }

  bool dfs(int depth) {
    if (++nodes > node_budget)
      throw resource_error("narrowest_search exceeded its node budget");
    if (depth == k - 1) return true;  // 0 and d already placed, middle filled
    // next offset: even, above the last chosen middle value, leaving room
    std::int64_t lo = (depth == 1) ? 2 : chosen.back() + 2;
    std::int64_t hi = d - 2 * (k - 1 - depth);
    for (std::int64_t h = lo; h <= hi; h += 2) {
      bool viable = push(h);
      if (viable && dfs(depth + 1)) return true;
      pop();
    }
    return false;
  }
};

}  // namespace

std::optional<Tuple> narrowest_search(int k, std::int64_t max_diameter,
                                      std::uint64_t node_budget) {
  if (k < 1) throw parameter_error("k must be at least 1");
  if (k > 12) throw parameter_error("narrowest_search is capped at k = 12");
  if (max_diameter < 0) throw parameter_error("max_diameter must be nonnegative");
  if (k == 1) return Tuple{{0}};

  NarrowSearch s;
  s.k = k;
  s.node_budget = node_budget;
  for (std::uint32_t ell : primes_up_to(static_cast<std::uint32_t>(k)))
    if (ell > 2) s.ells.push_back(ell);
  s.hits.resize(s.ells.size());
  for (std::size_t e = 0; e < s.ells.size(); ++e) s.hits[e].assign(s.ells[e], 0);
  s.covered.assign(s.ells.size(), 0);

  for (std::int64_t d = 2 * (k - 1); d <= max_diameter; d += 2) {
    s.d = d;
    // two marks can never cover a prime ell >= 3, so both pushes stay viable
    bool viable = s.push(0);
    viable = s.push(d) && viable;
    if (viable && (k == 2 || s.dfs(1))) {
      std::vector<std::int64_t> offsets(s.chosen.begin(), s.chosen.end());
      std::sort(offsets.begin(), offsets.end());
      return Tuple{std::move(offsets)};
    }
    while (!s.chosen.empty()) s.pop();
  }
  return std::nullopt;
}

}  // namespace ergaps
