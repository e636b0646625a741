#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ergaps {

std::uint64_t euler_phi(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

// A restricted prime set given by residue classes mod `modulus`, plus the
// exceptional modulus B used by the equidistribution sums. The density inside
// the primes is exactly |classes| / phi(modulus).
struct PrimeSetSpec {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> classes{0};  // sorted, distinct, coprime to modulus
  std::uint64_t B = 1;                    // squarefree

  static PrimeSetSpec all_primes();
  static PrimeSetSpec residue_classes(std::uint64_t modulus,
                                      std::vector<std::uint64_t> classes,
                                      std::uint64_t B = 1);
  // Textual form "mod=M;classes=a1,a2,...;B=b"; "all" is accepted as shorthand
  // for the full prime set.
  static PrimeSetSpec parse(const std::string& text);
  std::string to_string() const;

  bool contains(std::uint64_t p) const;  // membership by residue class
  std::uint64_t delta_num() const { return classes.size(); }
  std::uint64_t delta_den() const { return euler_phi(modulus); }
  double delta() const {
    return static_cast<double>(delta_num()) / static_cast<double>(delta_den());
  }
  bool operator==(const PrimeSetSpec&) const = default;
};

inline constexpr std::uint64_t kDefaultSieveBudget = 200'000'000;

// Primality bitmap over [2, limit] plus the ascending list of set members.
// Immutable after construction; safe to share across threads.
class SieveTable {
 public:
  SieveTable() = default;

  std::uint64_t limit() const { return limit_; }
  const PrimeSetSpec& spec() const { return spec_; }
  bool is_prime(std::uint64_t n) const;  // n <= limit
  const std::vector<std::uint64_t>& member_primes() const { return members_; }

 private:
  friend SieveTable sieve_primes(std::uint64_t, const PrimeSetSpec&, std::uint64_t);
  friend bool save_table(const SieveTable&, const std::string&);
  friend std::optional<SieveTable> load_table(const std::string&, std::uint64_t,
                                              const PrimeSetSpec&);

  std::uint64_t limit_ = 0;
  PrimeSetSpec spec_;
  std::vector<std::uint64_t> bits_;  // bit n set <=> n prime
  std::vector<std::uint64_t> members_;
};

// Segmented sieve of Eratosthenes up to X; members filtered by `spec`.
SieveTable sieve_primes(std::uint64_t X,
                        const PrimeSetSpec& spec = PrimeSetSpec::all_primes(),
                        std::uint64_t budget = kDefaultSieveBudget);

// Binary table cache. save returns false on I/O failure; load returns an
// empty optional when the file is missing, stale, or for a different request.
bool save_table(const SieveTable& table, const std::string& path);
std::optional<SieveTable> load_table(const std::string& path, std::uint64_t limit,
                                     const PrimeSetSpec& spec);

// #{p <= x : p in P}. `spec` must match the table's.
std::uint64_t pi_P(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t x);

// #{p <= x : p in P, p = a mod q}
std::uint64_t pi_P_qa(const SieveTable& table, const PrimeSetSpec& spec,
                      std::uint64_t x, std::uint64_t q, std::uint64_t a);

// sum of 1/p over p in P with lo <= p <= hi, accumulated in ascending order.
// Empty ranges give 0.
double reciprocal_sum(const SieveTable& table, const PrimeSetSpec& spec,
                      std::uint64_t lo, std::uint64_t hi);

}  // namespace ergaps
