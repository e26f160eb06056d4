#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gcdb/averages.hpp"

using namespace gcdb;

namespace {

BigInt avg_gcd_naive(int b, int64_t x) {
  BigInt acc = 0;
  const auto xb = checked_pow(x, b, int64_t{1} << 40).value();
  for (int64_t r = 1; r <= x; ++r)
    for (int64_t s = 1; s <= xb; ++s) acc += gcd_b(r, s, b);
  return acc;
}

}  // namespace

TEST_CASE("avg_gcd_b_exact equals the naive double loop") {
  CHECK(avg_gcd_b_exact(1, 1) == 1);
  CHECK(avg_gcd_b_exact(1, 3) == 12);
  CHECK(avg_gcd_b_exact(2, 2) == avg_gcd_naive(2, 2));
  for (int b = 1; b <= 3; ++b)
    for (int64_t x = 1; x <= (b == 3 ? 12 : 20); ++x)
      REQUIRE(avg_gcd_b_exact(b, x) == avg_gcd_naive(b, x));
}

TEST_CASE("avg_gcd_b_exact matches the naive loop at x = 40") {
  CHECK(avg_gcd_b_exact(1, 40) == avg_gcd_naive(1, 40));
  CHECK(avg_gcd_b_exact(2, 40) == avg_gcd_naive(2, 40));
  CHECK(avg_gcd_b_exact(3, 40) == avg_gcd_naive(3, 40));
}

TEST_CASE("main term for b >= 2") {
  CHECK_THROWS_AS(avg_gcd_b_main_term(1, 100.0), std::invalid_argument);

  SECTION("b = 2 relative deviation shrinks along x = 75, 150, 300") {
    double prev = 1.0;
    for (int64_t x : {75, 150, 300}) {
      const double exact = static_cast<double>(avg_gcd_b_exact(2, x));
      const double main = avg_gcd_b_main_term(2, static_cast<double>(x));
      const double dev = std::abs(exact / main - 1.0);
      REQUIRE(dev < prev);
      prev = dev;
    }
    CHECK(prev <= 0.05);
  }
  SECTION("b = 3 at x = 60") {
    const double exact = static_cast<double>(avg_gcd_b_exact(3, 60));
    const double main = avg_gcd_b_main_term(3, 60.0);
    CHECK(std::abs(exact / main - 1.0) <= 0.05);
  }
}

TEST_CASE("b = 1 main term from the independently derived constants") {
  SECTION("x = 2000 within 1%") {
    const double exact = static_cast<double>(avg_gcd_b_exact(1, 2000));
    const double main = avg_gcd_1_main_term(2000.0);
    CHECK(std::abs(exact / main - 1.0) <= 0.01);
  }
  SECTION("relative error decreases from x = 100 to x = 2000") {
    const double e100 =
        std::abs(static_cast<double>(avg_gcd_b_exact(1, 100)) / avg_gcd_1_main_term(100.0) - 1.0);
    const double e2000 =
        std::abs(static_cast<double>(avg_gcd_b_exact(1, 2000)) / avg_gcd_1_main_term(2000.0) - 1.0);
    CHECK(e2000 < e100);
  }
}

TEST_CASE("phi partial sums against their asymptotics") {
  SECTION("x = 1 sums to exactly 1") {
    CHECK(phi_partial_sum(2.0, 1).exact_sum == 1.0);
    CHECK(phi_partial_sum(3.0, 1).exact_sum == 1.0);
  }
  SECTION("alpha = 2 at x = 1e5: difference within 10 log(x)/x") {
    const auto r = phi_partial_sum(2.0, 100000);
    CHECK(std::abs(r.difference) <= 10.0 * std::log(1e5) / 1e5);
  }
  SECTION("alpha = 3 at x = 1e4 matches zeta(2)/zeta(3) - 1/(x zeta(2))") {
    const auto r = phi_partial_sum(3.0, 10000);
    const double expect = zeta(2.0).value / zeta(3.0).value - 1e-4 / zeta(2.0).value;
    CHECK(r.exact_sum == Catch::Approx(expect).margin(10.0 * std::log(1e4) / 1e8));
    CHECK(std::abs(r.difference) <= 10.0 * std::log(1e4) / 1e8);
  }
  SECTION("alpha at or below 1 rejected") {
    CHECK_THROWS_AS(phi_partial_sum(1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(phi_partial_sum(0.5, 10), std::invalid_argument);
    CHECK_THROWS_AS(phi_partial_sum(1.5, 10), std::invalid_argument);
  }
}
