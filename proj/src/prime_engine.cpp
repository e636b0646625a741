#include "ergaps/prime_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ergaps/errors.hpp"

namespace ergaps {

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t result = n, m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

void validate_spec(const PrimeSetSpec& s) {
  if (s.modulus == 0) throw parameter_error("prime set modulus must be positive");
  if (s.classes.empty()) throw parameter_error("prime set needs at least one residue class");
  if (!std::is_sorted(s.classes.begin(), s.classes.end()) ||
      std::adjacent_find(s.classes.begin(), s.classes.end()) != s.classes.end())
    throw parameter_error("residue classes must be sorted and distinct");
  for (std::uint64_t a : s.classes) {
    if (a >= s.modulus) throw parameter_error("residue class out of range [0, modulus)");
    if (gcd_u64(a, s.modulus) != 1)
      throw parameter_error("residue class " + std::to_string(a) + " not coprime to modulus");
  }
  if (s.B == 0 || !is_squarefree(s.B))
    throw parameter_error("exceptional modulus B must be squarefree and positive");
}

}  // namespace

PrimeSetSpec PrimeSetSpec::all_primes() { return PrimeSetSpec{}; }

PrimeSetSpec PrimeSetSpec::residue_classes(std::uint64_t modulus,
                                           std::vector<std::uint64_t> classes,
                                           std::uint64_t B) {
  std::sort(classes.begin(), classes.end());
  PrimeSetSpec s{modulus, std::move(classes), B};
  validate_spec(s);
  return s;
}

bool PrimeSetSpec::contains(std::uint64_t p) const {
  std::uint64_t r = p % modulus;
  return std::binary_search(classes.begin(), classes.end(), r);
}

std::string PrimeSetSpec::to_string() const {
  std::ostringstream os;
  os << "mod=" << modulus << ";classes=";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) os << ',';
    os << classes[i];
  }
  os << ";B=" << B;
  return os.str();
}

PrimeSetSpec PrimeSetSpec::parse(const std::string& text) {
  if (text == "all" || text.empty()) return all_primes();
  std::uint64_t modulus = 0, B = 1;
  std::vector<std::uint64_t> classes;
  bool have_mod = false, have_classes = false;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ';')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw parameter_error("bad prime set spec field: " + field);
    std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    try {
      if (key == "mod") {
        modulus = std::stoull(val);
        have_mod = true;
      } else if (key == "classes") {
        std::stringstream cs(val);
        std::string item;
        while (std::getline(cs, item, ',')) classes.push_back(std::stoull(item));
        have_classes = true;
      } else if (key == "B") {
        B = std::stoull(val);
      } else {
        throw parameter_error("unknown prime set spec key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw parameter_error("bad number in prime set spec: " + field);
    } catch (const std::out_of_range&) {
      throw parameter_error("number out of range in prime set spec: " + field);
    }
  }
  if (!have_mod || !have_classes)
    throw parameter_error("prime set spec needs mod= and classes= fields");
  return residue_classes(modulus, std::move(classes), B);
}

bool SieveTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw parameter_error("primality query beyond sieve limit");
  if (n < 2) return false;
  return (bits_[n >> 6] >> (n & 63)) & 1;
}

SieveTable sieve_primes(std::uint64_t X, const PrimeSetSpec& spec, std::uint64_t budget) {
  validate_spec(spec);
  if (X < 2) throw parameter_error("sieve limit must be at least 2");
  if (X > budget)
    throw parameter_error("sieve limit " + std::to_string(X) + " exceeds budget " +
                          std::to_string(budget));

  SieveTable t;
  t.limit_ = X;
  t.spec_ = spec;
  t.bits_.assign((X >> 6) + 1, 0);

  // small primes up to sqrt(X)
  const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X))) + 1;
  std::vector<char> small(root + 1, 1);
  small[0] = small[1] = 0;
  for (std::uint64_t i = 2; i * i <= root; ++i)
    if (small[i])
      for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i)
    if (small[i]) base.push_back(i);

  constexpr std::uint64_t kSegment = 1u << 20;
  std::vector<char> seg(kSegment);
  for (std::uint64_t lo = 2; lo <= X; lo += kSegment) {
    const std::uint64_t hi = std::min(lo + kSegment - 1, X);
    std::fill(seg.begin(), seg.begin() + (hi - lo + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
      for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (seg[n - lo]) {
        t.bits_[n >> 6] |= 1ull << (n & 63);
        if (spec.contains(n)) t.members_.push_back(n);
      }
    }
  }
  return t;
}

namespace {

void check_table_spec(const SieveTable& table, const PrimeSetSpec& spec) {
  if (!(spec == table.spec()))
    throw parameter_error("prime set spec does not match the sieve table's");
}

}  // namespace

std::uint64_t pi_P(const SieveTable& table, const PrimeSetSpec& spec, std::uint64_t x) {
  check_table_spec(table, spec);
  if (x > table.limit()) throw parameter_error("pi_P query beyond sieve limit");
  const auto& m = table.member_primes();
  return static_cast<std::uint64_t>(std::upper_bound(m.begin(), m.end(), x) - m.begin());
}

std::uint64_t pi_P_qa(const SieveTable& table, const PrimeSetSpec& spec,
                      std::uint64_t x, std::uint64_t q, std::uint64_t a) {
  check_table_spec(table, spec);
  if (x > table.limit()) throw parameter_error("pi_P_qa query beyond sieve limit");
  if (q < 1) throw parameter_error("modulus q must be at least 1");
  if (a >= q) throw parameter_error("residue a must satisfy 0 <= a < q");
  const auto& m = table.member_primes();
  auto end = std::upper_bound(m.begin(), m.end(), x);
  std::uint64_t count = 0;
  for (auto it = m.begin(); it != end; ++it)
    if (*it % q == a) ++count;
  return count;
}

namespace {
constexpr char kCacheMagic[8] = {'e', 'r', 'g', 's', 'i', 'v', '0', '1'};
}

bool save_table(const SieveTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out.write(kCacheMagic, sizeof kCacheMagic);
  const std::string spec_text = table.spec().to_string();
  const std::uint64_t limit = table.limit();
  const std::uint64_t spec_len = spec_text.size();
  const std::uint64_t bit_words = (limit >> 6) + 1;
  const std::uint64_t n_members = table.member_primes().size();
  out.write(reinterpret_cast<const char*>(&limit), sizeof limit);
  out.write(reinterpret_cast<const char*>(&spec_len), sizeof spec_len);
  out.write(spec_text.data(), static_cast<std::streamsize>(spec_len));
  out.write(reinterpret_cast<const char*>(&n_members), sizeof n_members);
  out.write(reinterpret_cast<const char*>(table.bits_.data()),
            static_cast<std::streamsize>(bit_words * sizeof(std::uint64_t)));
  out.write(reinterpret_cast<const char*>(table.member_primes().data()),
            static_cast<std::streamsize>(n_members * sizeof(std::uint64_t)));
  return static_cast<bool>(out);
}

std::optional<SieveTable> load_table(const std::string& path, std::uint64_t limit,
                                     const PrimeSetSpec& spec) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[sizeof kCacheMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0) return std::nullopt;
  std::uint64_t file_limit = 0, spec_len = 0, n_members = 0;
  in.read(reinterpret_cast<char*>(&file_limit), sizeof file_limit);
  in.read(reinterpret_cast<char*>(&spec_len), sizeof spec_len);
  if (!in || file_limit != limit || spec_len > 4096) return std::nullopt;
  std::string spec_text(spec_len, '\0');
  in.read(spec_text.data(), static_cast<std::streamsize>(spec_len));
  if (!in || spec_text != spec.to_string()) return std::nullopt;
  in.read(reinterpret_cast<char*>(&n_members), sizeof n_members);
  if (!in || n_members > limit) return std::nullopt;

  SieveTable t;
  t.limit_ = limit;
  t.spec_ = spec;
  t.bits_.assign((limit >> 6) + 1, 0);
  t.members_.assign(n_members, 0);
  in.read(reinterpret_cast<char*>(t.bits_.data()),
          static_cast<std::streamsize>(t.bits_.size() * sizeof(std::uint64_t)));
  in.read(reinterpret_cast<char*>(t.members_.data()),
          static_cast<std::streamsize>(n_members * sizeof(std::uint64_t)));
  if (!in) return std::nullopt;
  return t;
}

double reciprocal_sum(const SieveTable& table, const PrimeSetSpec& spec,
                      std::uint64_t lo, std::uint64_t hi) {
  check_table_spec(table, spec);
  if (lo < 2) throw parameter_error("reciprocal_sum lower bound must be at least 2");
  if (hi > table.limit()) throw parameter_error("reciprocal_sum range beyond sieve limit");
  if (lo > hi) return 0.0;
  const auto& m = table.member_primes();
  auto it = std::lower_bound(m.begin(), m.end(), lo);
  auto end = std::upper_bound(m.begin(), m.end(), hi);
  double sum = 0.0;
  for (; it != end; ++it) sum += 1.0 / static_cast<double>(*it);
  return sum;
}

}  // namespace ergaps
