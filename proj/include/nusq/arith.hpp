#pragma once

// Exact integer arithmetic: primes, factorization, quadratic symbols,
// sums-of-squares counts, class numbers and L(1, chi_d) for d < 0.

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nusq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Small helpers

u64 isqrt(u64 n);
bool is_square(i64 n);
i64 gcd(i64 a, i64 b);
// Least nonnegative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}
u64 powmod(u64 base, u64 exp, u64 m);

// Exact square root of a nonnegative rational, if it is a rational square.
bool rational_sqrt(const Rational& q, Rational& root);

// ---------------------------------------------------------------------------
// Primes

// Immutable table of primes below a bound. The shared instance covers
// [2, 10^6] and is built on first use.
class PrimeTable {
 public:
  explicit PrimeTable(u64 bound);
  static const PrimeTable& shared();

  u64 bound() const { return bound_; }
  const std::vector<u64>& primes() const { return primes_; }
  bool contains(u64 n) const;

 private:
  u64 bound_;
  std::vector<u64> primes_;
  std::vector<bool> composite_;
};

bool is_prime(u64 n);

struct Factorization {
  u64 n = 1;
  std::vector<std::pair<u64, int>> factors;  // (prime, exponent), primes ascending

  u64 product() const;
  bool is_square_free() const;
  // Ascending.
  std::vector<u64> divisors() const;
};

// Trial division by the shared prime table, then by odd numbers past it.
// Throws std::invalid_argument for n == 0.
Factorization factorize(u64 n);
bool is_square_free(u64 n);

// ---------------------------------------------------------------------------
// Quadratic symbols

// (a/p) for an odd prime p. Throws std::invalid_argument otherwise.
int legendre_symbol(i64 a, i64 p);
// Kronecker symbol (a/n), any integers.
int kronecker(i64 a, i64 n);

// ---------------------------------------------------------------------------
// Sums of squares

// Ordered signed k-tuples with sum of squares n, k in {1,2,3}. r_k(n) = 0 for n < 0.
u64 rk_count(i64 n, int k);
// 4 * sum_{d | n} (-4/d), n >= 1.
u64 r2_divisor_formula(u64 n);
// n is not of the form 4^a (8b + 7).
bool is_sum_three_squares(u64 n);

// ---------------------------------------------------------------------------
// Discriminants, class numbers, L-values

class Discriminant {
 public:
  // Throws std::invalid_argument unless D < 0 and D = 0, 1 (mod 4).
  explicit Discriminant(i64 D);

  i64 value() const { return value_; }
  i64 fundamental() const { return fundamental_; }
  i64 conductor() const { return conductor_; }
  bool is_fundamental() const { return conductor_ == 1; }

 private:
  i64 value_;
  i64 fundamental_;
  i64 conductor_;
};

// Number of reduced primitive forms ax^2+bxy+cy^2 of discriminant D:
// |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
u64 class_number(const Discriminant& D);
u64 class_number(i64 D);

// L(1, chi_d) = coefficient * pi / sqrt(|fundamental|).
struct QuadraticLValue {
  Rational coefficient;
  i64 fundamental = 0;

  double value() const;
};

// d must be a negative discriminant; chi_d(m) = chi_{D*}(m) for gcd(m, d) = 1
// and 0 otherwise. Positive d (including the principal, square case) is rejected.
QuadraticLValue l_value_quadratic(i64 d);

}  // namespace nusq
