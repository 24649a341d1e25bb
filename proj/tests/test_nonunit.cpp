#include <doctest.h>

#include <random>
#include <set>

#include "nusq/nonunit.hpp"

using namespace nusq;

namespace {

// r3_nonunit by exhaustive count, all n <= hi at once.
std::vector<u64> brute_nonunit_counts(u64 hi) {
  std::vector<u64> c(hi + 1, 0);
  const i64 r = static_cast<i64>(isqrt(hi));
  for (i64 x = -r; x <= r; ++x) {
    if (x * x == 1) continue;
    for (i64 y = -r; y <= r; ++y) {
      if (y * y == 1 || x * x + y * y > static_cast<i64>(hi)) continue;
      for (i64 z = -r; z <= r; ++z) {
        if (z * z == 1) continue;
        const i64 n = x * x + y * y + z * z;
        if (n <= static_cast<i64>(hi)) ++c[n];
      }
    }
  }
  return c;
}

// Exceptions by marking every x^2 + y^2 + z^2 <= hi with no unit square.
std::vector<u64> brute_exceptions(u64 hi) {
  std::vector<bool> hit(hi + 1, false);
  const u64 r = isqrt(hi);
  for (u64 x = 0; x <= r; ++x) {
    if (x == 1) continue;
    for (u64 y = x; x * x + y * y <= hi; ++y) {
      if (y == 1) continue;
      for (u64 z = y; x * x + y * y + z * z <= hi; ++z) {
        if (z != 1) hit[x * x + y * y + z * z] = true;
      }
    }
  }
  std::vector<u64> out;
  for (u64 n = 1; n <= hi; ++n) {
    if (is_sum_three_squares(n) && !hit[n]) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("r3 nonunit counts") {
  CHECK(r3_nonunit(14) == 0);
  CHECK(r3_nonunit(9) == 6);
  CHECK(r3_nonunit(3) == 0);
  CHECK(r3_nonunit_uncorrected(3) == 8);
  const auto brute = brute_nonunit_counts(10000);
  for (u64 n = 0; n <= 10000; ++n) {
    REQUIRE(r3_nonunit(n) == brute[n]);
    if (n != 3) REQUIRE(r3_nonunit_uncorrected(n) == static_cast<i64>(brute[n]));
    REQUIRE((r3_nonunit(n) > 0) == nonunit_witness(n).has_value());
  }
}

TEST_CASE("nonunit witnesses") {
  CHECK(nonunit_witness(9) == Triple{0, 0, 3});
  CHECK(nonunit_witness(70) == Triple{3, 5, 6});
  CHECK_FALSE(nonunit_witness(19));
  CHECK(nonunit_witness(0) == Triple{0, 0, 0});
  for (u64 n = 0; n <= 3000; ++n) {
    const auto w = nonunit_witness(n);
    if (!w) continue;
    REQUIRE(w->norm() == n);
    REQUIRE(w->is_nonunit());
    REQUIRE(w->is_canonical());
  }
  const auto s = nonunit_status(28);
  CHECK_FALSE(s.in_s3);
  CHECK_FALSE(s.in_s3_nonunit);
  CHECK_FALSE(s.witness);
  const auto t = nonunit_status(90);
  CHECK(t.in_s3_nonunit);
  CHECK(t.witness->norm() == 90);
}

TEST_CASE("Triple canonical form") {
  CHECK(Triple{-5, 2, -3}.canonical() == Triple{2, 3, 5});
  CHECK(Triple{0, -1, 1}.canonical() == Triple{0, 1, 1});
  CHECK_FALSE(Triple{0, -1, 1}.is_nonunit());
}

TEST_CASE("two nonunit squares") {
  CHECK(two_nonunit_decomp(290) == std::pair<i64, i64>{11, 13});
  CHECK_FALSE(two_nonunit_decomp(5));
  CHECK(two_nonunit_decomp(8) == std::pair<i64, i64>{2, 2});
  for (i64 x = -1000; x <= 1000; ++x) {
    if (mod(x, 5) != 2 && mod(x, 5) != 3) continue;
    if (x == 2 || x == -2 || x == 3 || x == -3) continue;
    const u64 n = static_cast<u64>(x * x + 1);
    const auto d = two_nonunit_decomp(n);
    REQUIRE(d);
    REQUIRE(static_cast<u64>(d->first * d->first + d->second * d->second) == n);
    REQUIRE(d->first != 1);
  }
}

TEST_CASE("rewriting (5a)^2 + (5b)^2") {
  CHECK(change_witness(2, 0) == std::pair<i64, i64>{6, 8});
  CHECK(change_witness(3, 0) == std::pair<i64, i64>{9, 12});
  CHECK_FALSE(change_witness(1, 0));
  const std::set<u64> exceptional(kChangeExceptionalNorms.begin(), kChangeExceptionalNorms.end());
  for (i64 a = -60; a <= 60; ++a) {
    for (i64 b = -60; b <= 60; ++b) {
      const u64 s = static_cast<u64>(a * a + b * b);
      if (s == 0) continue;
      const auto w = change_witness(a, b);
      REQUIRE(w.has_value() == !exceptional.count(s));
      if (!w) continue;
      const auto [x, y] = *w;
      REQUIRE(static_cast<u64>(x * x + y * y) == 25 * s);
      REQUIRE(x * x >= 10);
      REQUIRE(y * y >= 10);
      REQUIRE(x * y % 5 != 0);
    }
  }
}

TEST_CASE("tilde r2") {
  CHECK(tilde_r2(25) == 8);
  CHECK(tilde_r2(50) == 8);
  CHECK(tilde_r2(125) == 8);
  // Direct count including signs and order.
  auto brute = [](u64 n) {
    u64 c = 0;
    const i64 r = static_cast<i64>(isqrt(n));
    for (i64 x = -r; x <= r; ++x)
      for (i64 y = -r; y <= r; ++y)
        if (static_cast<u64>(x * x + y * y) == n && x * y % 5 != 0) ++c;
    return c;
  };
  for (u64 n = 1; n <= 2000; ++n) REQUIRE(tilde_r2(n) == brute(n));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<u64> d(1, 200000);
  for (int t = 0; t < 200; ++t) {
    const u64 s = d(rng);
    REQUIRE(tilde_r2(25 * s) == tilde_r2_divisor_formula(s));
  }
  CHECK_THROWS_AS(tilde_r2_divisor_formula(0), std::invalid_argument);
}

TEST_CASE("2^i 5^n = a + y^2") {
  using V = std::vector<SoleqnSolution>;
  CHECK(soleqn_solutions(0, 4, 40) == V{{1, 1}, {3, 11}});
  CHECK(soleqn_solutions(1, 9, 40) == V{{1, 1}, {5, 79}});
  CHECK(soleqn_solutions(0, 1, 40) == V{{1, 2}});
  CHECK(soleqn_solutions(0, 9, 40) == V{{2, 4}});
  CHECK(soleqn_solutions(1, 1, 40) == V{{1, 3}, {2, 7}});
  CHECK(soleqn_solutions(1, 4, 64).empty());
  CHECK(soleqn_solutions(1, 9, 64) == V{{1, 1}, {5, 79}});
  CHECK_THROWS_AS(soleqn_solutions(2, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(soleqn_solutions(0, 2, 10), std::invalid_argument);
  CHECK_THROWS_AS(soleqn_solutions(0, 1, 65), std::invalid_argument);
  CHECK_THROWS_AS(soleqn_solutions(0, 1, 0), std::invalid_argument);
}

TEST_CASE("essentially distinct representations") {
  CHECK(essentially_distinct_count(5) == 1);
  CHECK(essentially_distinct_count(9) == 2);
  CHECK(essentially_distinct_count(0) == 1);
  const auto table = essentially_distinct_table(100000);
  for (u64 n = 0; n <= 500; ++n) REQUIRE(table[n] == essentially_distinct_count(n));
  std::vector<u64> unique;
  for (u64 n = 5; n <= 100000; n += 5) {
    if (is_sum_three_squares(n) && is_square_free(n) && table[n] == 1) unique.push_back(n);
  }
  CHECK(unique == std::vector<u64>{5, 10, 30, 35, 70, 115, 190, 235});
}

TEST_CASE("nonunit exception sieve") {
  CHECK(sieve_nonunit_exceptions(1, 500, std::set<int>{0, 1, 4}).exceptions ==
        std::vector<u64>{1, 5, 6, 10, 11, 14, 19, 21, 26, 30, 35, 46, 51, 91, 235});
  CHECK(sieve_nonunit_exceptions(1, 500, std::set<int>{2, 3}).exceptions == std::vector<u64>{2, 3, 37, 42, 163});
  CHECK(sieve_nonunit_exceptions(236, 100000, std::nullopt).exceptions.empty());
  CHECK(sieve_nonunit_exceptions(0, 0, std::nullopt).exceptions.empty());

  SieveOptions four;
  four.threads = 4;
  four.chunk_size = 7919;
  const auto full = sieve_nonunit_exceptions(1, 100000, std::nullopt, four);
  CHECK(full.exceptions == brute_exceptions(100000));
  CHECK(full.filter == "none");

  // Residue 1 (mod 5) consistency up to 10^5.
  const std::set<u64> listed{1, 6, 11, 21, 26, 46, 51, 91};
  for (u64 n = 1; n <= 100000; n += 5) {
    if (!is_sum_three_squares(n) || listed.count(n)) continue;
    REQUIRE(r3_nonunit(n) > 0);
  }
}

TEST_CASE("nonunit oracle") {
  const NonunitOracle oracle(5000);
  for (u64 n = 0; n <= 5000; ++n) REQUIRE(oracle.contains(n) == nonunit_witness(n).has_value());
}
