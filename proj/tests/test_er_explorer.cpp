#include "ergaps/er_explorer.hpp"

#include <cmath>

#include "doctest.h"
#include "ergaps/errors.hpp"
#include "oracle_helpers.hpp"

using namespace ergaps;

namespace {

const PrimeSetSpec kMod8 = PrimeSetSpec::residue_classes(8, {1}, 2);

const SieveTable& table_2e6() {
  static SieveTable t = sieve_primes(2'000'000);
  return t;
}

const SieveTable& table_mod8() {
  static SieveTable t = sieve_primes(20'000, kMod8);
  return t;
}

}  // namespace

TEST_SUITE_BEGIN("er_explorer");

TEST_CASE("two-prime products up to 25") {
  auto list = enumerate_Er(table_2e6(), {2, 25, PrimeSetSpec::all_primes()});
  CHECK(list == std::vector<std::uint64_t>{6, 10, 14, 15, 21, 22});
}

TEST_CASE("r = 1 degenerates to the member primes") {
  auto list = enumerate_Er(table_2e6(), {1, 50, PrimeSetSpec::all_primes()});
  CHECK(list == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47});
  auto m8 = enumerate_Er(table_mod8(), {1, 100, kMod8});
  CHECK(m8 == std::vector<std::uint64_t>{17, 41, 73, 89, 97});
}

TEST_CASE("restricted two-prime products start at 697") {
  auto list = enumerate_Er(table_mod8(), {2, 3000, kMod8});
  REQUIRE(list.size() >= 3);
  CHECK(list[0] == 697);   // 17 * 41
  CHECK(list[1] == 1241);  // 17 * 73
  CHECK(list[2] == 1513);  // 17 * 89
}

TEST_CASE("enumeration agrees with full factorization") {
  for (int r : {3, 4}) {
    auto fast = enumerate_Er(table_2e6(), {r, 20'000, PrimeSetSpec::all_primes()});
    auto slow = oracle::brute_Er(20'000, r, [](std::uint64_t) { return true; });
    REQUIRE(fast == slow);
  }
  auto fast2 = enumerate_Er(table_2e6(), {2, 100'000, PrimeSetSpec::all_primes()});
  auto slow2 = oracle::brute_Er(100'000, 2, [](std::uint64_t) { return true; });
  REQUIRE(fast2 == slow2);
  auto fast8 = enumerate_Er(table_mod8(), {2, 20'000, kMod8});
  auto slow8 = oracle::brute_Er(20'000, 2, [](std::uint64_t p) { return p % 8 == 1; });
  REQUIRE(fast8 == slow8);
}

TEST_CASE("enumeration is worker-count independent") {
  auto w1 = enumerate_Er(table_2e6(), {3, 1'000'000, PrimeSetSpec::all_primes()}, 1);
  auto w4 = enumerate_Er(table_2e6(), {3, 1'000'000, PrimeSetSpec::all_primes()}, 4);
  CHECK(w1 == w4);
}

TEST_CASE("enumeration beyond the table is refused") {
  CHECK_THROWS_AS(enumerate_Er(table_mod8(), {2, 100'000, kMod8}), resource_error);
}

TEST_CASE("constrained products, single factor") {
  // N = 100, eta = 0.2: primes in [10, 200]
  auto list = enumerate_Eh_constrained(table_2e6(), PrimeSetSpec::all_primes(), 100, 1, 0.2);
  CHECK(std::find(list.begin(), list.end(), 11) != list.end());
  CHECK(std::find(list.begin(), list.end(), 7) == list.end());
  CHECK(list.front() == 11);
  CHECK(list.back() == 199);
}

TEST_CASE("constrained products, two factors") {
  // N = 100: p1 >= 100^0.2 ~ 2.51, p2 >= 10, p1 p2 <= 200
  auto list = enumerate_Eh_constrained(table_2e6(), PrimeSetSpec::all_primes(), 100, 2, 0.2);
  CHECK(std::find(list.begin(), list.end(), 33) != list.end());  // 3 * 11
  for (std::uint64_t n : list) {
    CHECK(n <= 200);
    auto f = oracle::factorize(n);
    REQUIRE(f.size() == 2);
    CHECK(f[0].second == 1);
    CHECK(f[1].second == 1);
    CHECK(static_cast<double>(f[0].first) >= std::pow(100.0, 0.2) - 1e-9);
    CHECK(f[1].first >= 10);
  }
  // 2 * anything is out: 2 < 100^0.2
  CHECK(std::find(list.begin(), list.end(), 26) == list.end());
}

TEST_CASE("constraints can empty the list without an error") {
  // N = 6: p1 >= 3, p2 >= 5, but 3 * 5 > 2N
  auto list = enumerate_Eh_constrained(table_2e6(), PrimeSetSpec::all_primes(), 6, 2, 0.45);
  CHECK(list.empty());
}

TEST_CASE("gap scan basics") {
  auto e2 = enumerate_Er(table_2e6(), {2, 100, PrimeSetSpec::all_primes()});
  auto res = gap_scan(e2, 1);
  CHECK(res.min_window == 1);  // 14, 15
  CHECK(res.location == 14);

  auto two = gap_scan({6, 10}, 1);
  CHECK(two.min_window == 4);
  CHECK(two.location == 6);
  CHECK(two.histogram == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{4, 1}});

  CHECK_THROWS_AS(gap_scan({6, 10}, 2), parameter_error);
  CHECK_THROWS_AS(gap_scan({6, 10}, 0), parameter_error);
}

TEST_CASE("histogram counts every consecutive gap") {
  auto res = gap_scan({2, 4, 6, 10, 16}, 1);
  CHECK(res.histogram ==
        std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 2}, {4, 1}, {6, 1}});
  std::uint64_t total = 0;
  for (auto& [gap, count] : res.histogram) total += count;
  CHECK(total == 4);
}

TEST_CASE("window minimum shrinks as the list grows") {
  auto big = enumerate_Er(table_2e6(), {2, 200'000, PrimeSetSpec::all_primes()});
  std::uint64_t prev = UINT64_MAX;
  for (std::size_t cut : {100u, 1000u, 10000u, 50000u}) {
    std::vector<std::uint64_t> head(big.begin(), big.begin() + cut);
    auto res = gap_scan(head, 3);
    CHECK(res.min_window <= prev);
    prev = res.min_window;
  }
}

TEST_CASE("counting sum against the literal double loop") {
  auto& t = table_2e6();
  auto rep = compute_T_N(t, PrimeSetSpec::all_primes(), 10'000, 2, 0.2);
  CHECK(rep.t_n == 1167);  // frozen from an independent double loop
  CHECK(rep.q_count == 22);

  auto plain = oracle::simple_sieve(20'000);
  CHECK(oracle::brute_T_N_r2(10'000, 0.2, plain, [](std::uint64_t) { return true; }) ==
        rep.t_n);
  CHECK(rep.lower_bound == doctest::Approx(994.85).epsilon(1e-3));
  CHECK(rep.ratio == doctest::Approx(1.1730).epsilon(1e-3));
}

TEST_CASE("counting sum for three factors") {
  auto rep = compute_T_N(table_2e6(), PrimeSetSpec::all_primes(), 1'000'000, 3, 0.1);
  CHECK(rep.t_n == 45209);  // frozen from an independent route
  CHECK(rep.q_count == 129);
  CHECK(rep.ratio > 0.5);
  CHECK(rep.ratio < 5.0);
}

TEST_CASE("counting sum respects worker counts and rejects bad eta") {
  auto& t = table_2e6();
  auto w1 = compute_T_N(t, PrimeSetSpec::all_primes(), 100'000, 2, 0.2, 1);
  auto w4 = compute_T_N(t, PrimeSetSpec::all_primes(), 100'000, 2, 0.2, 4);
  CHECK(w1.t_n == w4.t_n);

  CHECK_THROWS_AS(compute_T_N(t, PrimeSetSpec::all_primes(), 10'000, 2, 0.5), parameter_error);
  CHECK_THROWS_AS(compute_T_N(t, PrimeSetSpec::all_primes(), 10'000, 3, 0.3), parameter_error);
  CHECK_THROWS_AS(compute_T_N(t, PrimeSetSpec::all_primes(), 2'000'000, 2, 0.2),
                  resource_error);
}

TEST_CASE("convolution identity, disjoint ranges") {
  auto rep = convolution_delta_check(table_2e6(), PrimeSetSpec::all_primes(), 10'000, 2,
                                     {10, 99}, {100, 999}, 1);
  CHECK(rep.clean_off_squares);
  CHECK(rep.exceptional.empty());  // disjoint ranges leave no square collisions
  CHECK(rep.max_abs_deviation == 0);
}

TEST_CASE("convolution identity, identical ranges") {
  auto rep = convolution_delta_check(table_2e6(), PrimeSetSpec::all_primes(), 10'000, 2,
                                     {10, 99}, {10, 99}, 2);
  CHECK(rep.clean_off_squares);
  REQUIRE(!rep.exceptional.empty());
  // the exceptions are exactly the squares p^2 of range primes, each with
  // deviation 1: conv(p^2) = 1 while beta_2(p^2) = 0
  for (std::uint64_t n : rep.exceptional) {
    auto f = oracle::factorize(n);
    REQUIRE(f.size() == 1);
    CHECK(f[0].second == 2);
    CHECK(f[0].first >= 10);
    CHECK(f[0].first <= 99);
  }
  CHECK(rep.max_abs_deviation == 1);

  // pq with distinct p, q in range: two ordered pullouts match c = 2, so
  // squarefree products are never exceptional
  CHECK(std::find(rep.exceptional.begin(), rep.exceptional.end(), 11 * 13) ==
        rep.exceptional.end());
}

TEST_CASE("convolution range hygiene") {
  auto& t = table_2e6();
  auto all = PrimeSetSpec::all_primes();
  CHECK_THROWS_AS(convolution_delta_check(t, all, 10'000, 2, {10, 99}, {50, 200}, 1),
                  parameter_error);  // overlapping but not equal
  CHECK_THROWS_AS(convolution_delta_check(t, all, 10'000, 2, {10, 99}, {100, 999}, 2),
                  parameter_error);  // wrong multiplicity
  CHECK_THROWS_AS(convolution_delta_check(t, all, 10'000, 2, {10, 99}, {10, 99}, 1),
                  parameter_error);
}

TEST_SUITE_END();
