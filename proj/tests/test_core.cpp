#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "gcdb/core.hpp"

using namespace gcdb;

namespace {

// exhaustive oracle: largest k <= r with k | r and k^b | s
int64_t gcd_b_brute(int64_t r, int64_t s, int b) {
  int64_t best = 1;
  for (int64_t k = 1; k <= r; ++k) {
    if (r % k != 0) continue;
    const auto kb = checked_pow(k, b, s);
    if (kb && s % *kb == 0) best = k;
  }
  return best;
}

}  // namespace

TEST_CASE("gcd_b on the worked examples") {
  CHECK(gcd_b(12, 18, 1) == 6);
  CHECK(gcd_b(4, 8, 2) == 2);
  CHECK(gcd_b(2, 2, 2) == 1);
  CHECK(gcd_b(1, 987654321, 7) == 1);
  CHECK(gcd_b(1, 1, 3) == 1);
}

TEST_CASE("gcd_b rejects zero coordinates and bad exponents") {
  CHECK_THROWS_AS(gcd_b(0, 5, 1), std::domain_error);
  CHECK_THROWS_AS(gcd_b(5, 0, 2), std::domain_error);
  CHECK_THROWS_AS(gcd_b(5, 5, 0), std::domain_error);
}

TEST_CASE("gcd_b equals the exhaustive oracle on r,s <= 200, b in 1..3") {
  const SpfTable spf(200);
  for (int b = 1; b <= 3; ++b) {
    for (int64_t r = 1; r <= 200; ++r) {
      for (int64_t s = 1; s <= 200; ++s) {
        const int64_t expect = gcd_b_brute(r, s, b);
        REQUIRE(gcd_b(r, s, b) == expect);
        REQUIRE(gcd_b_with_spf(r, s, b, spf) == expect);
      }
    }
  }
}

TEST_CASE("gcd_1 is the ordinary gcd") {
  for (int64_t r = 1; r <= 200; ++r)
    for (int64_t s = 1; s <= 200; ++s) REQUIRE(gcd_b(r, s, 1) == std::gcd(r, s));
}

TEST_CASE("quotient by gcd_b is b-visible") {
  for (int b = 1; b <= 3; ++b) {
    for (int64_t r = 1; r <= 120; ++r) {
      for (int64_t s = 1; s <= 120; ++s) {
        const int64_t k = gcd_b(r, s, b);
        const auto kb = checked_pow(k, b, s);
        REQUIRE(kb.has_value());
        REQUIRE(r % k == 0);
        REQUIRE(s % *kb == 0);
        REQUIRE(gcd_b(r / k, s / *kb, b) == 1);
      }
    }
  }
}

TEST_CASE("visibility predicate") {
  CHECK(is_b_visible(3, 5, 2));
  CHECK_FALSE(is_b_visible(2, 4, 2));
  CHECK(is_b_visible(1, 1, 5));
}

TEST_CASE("checked_pow caps") {
  CHECK(checked_pow(2, 10, 1 << 20).value() == 1024);
  CHECK_FALSE(checked_pow(10, 19, int64_t{1} << 62).has_value());
  CHECK(checked_pow(7, 0, 1).value() == 1);
}

TEST_CASE("64-bit primality and factorization utilities") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(2147483647));  // 2^31 - 1
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(561));  // Carmichael
  CHECK(is_prime_u64(18446744073709551557ull));

  auto f = factorize_u64(2ull * 2 * 3 * 3 * 3 * 17 * 1000003);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == std::pair<uint64_t, int>{2, 2});
  CHECK(f[1] == std::pair<uint64_t, int>{3, 3});
  CHECK(f[2] == std::pair<uint64_t, int>{17, 1});
  CHECK(f[3] == std::pair<uint64_t, int>{1000003, 1});
}

TEST_CASE("bounded trial division and budgeted factorization") {
  const BigInt n = BigInt("1000003") * 1000033 * 64;
  auto td = trial_division(n, 100);
  CHECK(td.factors.at(2) == 6);
  CHECK(td.cofactor == BigInt("1000003") * 1000033);

  auto full = factorize_with_budget(n, 100, 1 << 22);
  REQUIRE(full.has_value());
  CHECK(full->at(BigInt(1000003)) == 1);
  CHECK(full->at(BigInt(1000033)) == 1);
  CHECK(full->at(BigInt(2)) == 6);

  // reassembles the input
  BigInt back = 1;
  for (const auto& [p, e] : *full)
    for (int i = 0; i < e; ++i) back *= p;
  CHECK(back == n);
}
