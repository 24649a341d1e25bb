#include <doctest.h>

#include <cmath>

#include "nusq/genus.hpp"

using namespace nusq;

namespace {

// #E(F_p) by evaluating y^2 + xy + y - (x^3 + x^2 - 3x + 1) at every affine
// point, plus infinity.
u64 naive_point_count(u64 p) {
  const i64 P = static_cast<i64>(p);
  u64 count = 1;
  for (i64 x = 0; x < P; ++x)
    for (i64 y = 0; y < P; ++y) {
      const i64 lhs = (y * y + x * y + y) % P;
      const i64 rhs = mod(x * x % P * x + x * x - 3 * x + 1, P);
      if (lhs == rhs) ++count;
    }
  return count;
}

// n / m is a square in Q_p (p in {2, 5}).
bool square_in_qp(u64 n, u64 m, u64 p) {
  int vn = 0, vm = 0;
  while (n % p == 0) n /= p, ++vn;
  while (m % p == 0) m /= p, ++vm;
  if ((vn - vm) % 2 != 0) return false;
  if (p == 2) return (n * m) % 8 == 1;
  const u64 u = (n * m) % 5;
  return u == 1 || u == 4;
}

}  // namespace

TEST_CASE("eligibility") {
  CHECK(is_genus_eligible(2));
  CHECK(is_genus_eligible(3));
  CHECK_FALSE(is_genus_eligible(7));   // 7 mod 8
  CHECK_FALSE(is_genus_eligible(12));  // not square-free
  CHECK_FALSE(is_genus_eligible(11));  // 1 mod 5
  CHECK_FALSE(is_genus_eligible(47));  // 7 mod 8
}

TEST_CASE("local densities") {
  CHECK(alpha_p(2, 5) == Rational(2));
  CHECK(alpha_p(3, 2) == Rational(1));
  CHECK(alpha_p(2, 2) == Rational(3, 2));
  CHECK(alpha_p(13, 13) == Rational(168, 169));
  CHECK(alpha_p(2, 3) == Rational(4, 3));  // -2 is a residue mod 3
  CHECK(alpha_p(3, 7) == Rational(8, 7));  // -3 = 2^2 mod 7
  CHECK(alpha_p(2, 11) == Rational(12, 11));
  CHECK_THROWS_AS(alpha_p(7, 3), std::invalid_argument);
  CHECK_THROWS_AS(alpha_p(2, 9), std::invalid_argument);
  const auto prof = local_density_profile(42);
  for (const auto& [p, a] : prof.factors) {
    CHECK((p == 2 || p == 3 || p == 5 || p == 7));
    CHECK(a == alpha_p(42, p));
  }
  CHECK(b_n_times_pi(3) == Rational(4, 3));
  CHECK(b_n_times_pi(2) == Rational(2));
}

TEST_CASE("genus weights") {
  const auto [wf, wg] = genus_weights();
  CHECK(wf == Rational(2, 5));
  CHECK(wg == Rational(3, 5));
  CHECK(weighted_genus_average(0) == Rational(1));
  CHECK(weighted_genus_average(2) == Rational(6, 5));
  CHECK(weighted_genus_average(3) == Rational(4, 5));
  const u64 f13 = rep_count(form_f(), 13), g13 = rep_count(form_g(), 13);
  CHECK(static_cast<i64>(g13) - static_cast<i64>(f13) == 4);
  CHECK(weighted_genus_average(13) == weighted_genus_average(f13, g13));
}

TEST_CASE("closed-form genus count") {
  CHECK(r_gen_f(2).exact == Rational(6, 5));
  CHECK(r_gen_f(3).exact == Rational(4, 5));
  CHECK(rep_count(form_f(), 37) == 0);
  CHECK(r_gen_f(37).exact == Rational(3, 5) * static_cast<i64>(rep_count(form_g(), 37)));
  CHECK(r_gen_f(2).value == doctest::Approx(1.2).epsilon(1e-12));
  CHECK_THROWS_AS(r_gen_f(7), std::invalid_argument);
  CHECK_THROWS_AS(r_gen_f(8), std::invalid_argument);

  const auto tf = theta_coeffs(form_f(), 2000);
  const auto tg = theta_coeffs(form_g(), 2000);
  for (u64 n = 1; n <= 2000; ++n) {
    if (!is_genus_eligible(n)) continue;
    const auto r = r_gen_f(n);
    const Rational avg = Rational(2, 5) * static_cast<i64>(tf[n]) + Rational(3, 5) * static_cast<i64>(tg[n]);
    REQUIRE(r.exact == avg);
    REQUIRE(r.value == doctest::Approx(avg.convert_to<double>()).epsilon(1e-9));
    REQUIRE(avg > 0);
  }
}

TEST_CASE("cusp form phi") {
  CHECK(phi_coeff(2) == 1);
  CHECK(phi_coeff(22) == -3);
  CHECK(phi_coeff(5) == 0);
  const QSeries expected{0, 0, 1, -1, 0, 0, 0, 0, 1, 0, 0, 0, -1, 2, 0,
                         0, 0, -1, -2, 0, 0, 0, -3, 0, 0, 0, 0, 1};
  const auto phi = phi_series(27);
  CHECK(phi == expected);
  CHECK(phi_series(2000, 4) == phi_series(2000, 1));

  const auto tf = theta_coeffs(form_f(), 10000);
  const auto tg = theta_coeffs(form_g(), 10000);
  for (u64 n = 1; n <= 10000; ++n) {
    REQUIRE((tg[n] - tf[n]) % 2 == 0);
    const i64 a = (tg[n] - tf[n]) / 2;
    if (n <= 300) REQUIRE(phi_coeff(n) == a);
    const Rational E = weighted_genus_average(static_cast<u64>(tf[n]), static_cast<u64>(tg[n]));
    if (E > 0) REQUIRE(Rational(std::abs(a)) <= E * Rational(5, 4));
    if (n <= 1000) {
      REQUIRE(Rational(static_cast<i64>(tf[n])) - E == Rational(-6, 5) * a);
      REQUIRE(Rational(static_cast<i64>(tg[n])) - E == Rational(4, 5) * a);
    }
  }
}

TEST_CASE("elliptic curve traces") {
  CHECK(elliptic_ap(3).a_p == -1);
  CHECK(elliptic_ap(7).a_p == -2);
  CHECK(elliptic_ap(11).a_p == -3);
  CHECK_THROWS_AS(elliptic_ap(9), std::invalid_argument);
  for (u64 p = 3; p <= 400; ++p) {
    if (!is_prime(p) || p == 5) continue;
    REQUIRE(curve_point_count(p) == naive_point_count(p));
    const i64 ap = elliptic_ap(p).a_p;
    REQUIRE(ap == static_cast<i64>(p + 1) - static_cast<i64>(naive_point_count(p)));
    REQUIRE(static_cast<double>(ap * ap) <= 4.0 * static_cast<double>(p));
  }
}

TEST_CASE("newform coefficients") {
  const auto A = shimura_coeffs(11);
  CHECK(A == QSeries{0, 1, 1, -1, 1, 0, -1, -2, 1, -2, 0, -3});
  const auto big = shimura_coeffs(3000);
  for (u64 m = 1; m <= 3000; ++m)
    for (u64 n = 1; m * n <= 3000; ++n)
      if (std::gcd(m, n) == 1) REQUIRE(big[m * n] == big[m] * big[n]);
  for (u64 p = 3; p * p <= 3000; ++p) {
    if (!is_prime(p) || p == 5) continue;
    REQUIRE(big[p] == elliptic_ap(p).a_p);
    REQUIRE(big[p * p] == big[p] * big[p] - static_cast<i64>(p));
  }
  for (u64 n = 5; n <= 3000; n += 5) REQUIRE(big[n] == 0);
  CHECK_THROWS(shimura_coeffs(kShimuraMaxPrecision + 1));
}

TEST_CASE("square-class representatives") {
  CHECK(waldspurger_representative(2) == 2);
  CHECK(waldspurger_representative(3) == 3);
  CHECK_THROWS_AS(waldspurger_representative(7), std::invalid_argument);
  for (u64 n = 1; n <= 5000; ++n) {
    if (!is_genus_eligible(n)) continue;
    const u64 m = waldspurger_representative(n);
    REQUIRE(square_in_qp(n, m, 2));
    REQUIRE(square_in_qp(n, m, 5));
  }
}
