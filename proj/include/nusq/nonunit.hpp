#pragma once

// Sums of three nonunit squares: n = x^2 + y^2 + z^2 with no x^2 equal to 1
// (zero coordinates are allowed). Counts, witnesses, the two-square helper
// helpers, and the exceptional-set sieve.

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nusq/arith.hpp"
#include "nusq/sieve.hpp"

namespace nusq {

struct Triple {
  i64 x = 0;
  i64 y = 0;
  i64 z = 0;

  u64 norm() const { return static_cast<u64>(x * x + y * y + z * z); }
  bool is_nonunit() const { return x * x != 1 && y * y != 1 && z * z != 1; }
  // 0 <= |x| <= |y| <= |z| with nonnegative entries.
  bool is_canonical() const { return 0 <= x && x <= y && y <= z; }
  Triple canonical() const;
  auto operator<=>(const Triple&) const = default;
};

struct NonunitStatus {
  u64 n = 0;
  bool in_s3 = false;
  bool in_s3_nonunit = false;
  std::optional<Triple> witness;
};

NonunitStatus nonunit_status(u64 n);

// Ordered signed triples with sum n and no coordinate equal to +-1:
// r3(n) - 6 r2(n-1) + 12 r1(n-2) - 8 [n = 3].
u64 r3_nonunit(u64 n);
// The three-term inclusion-exclusion without the triple-intersection
// correction; differs from r3_nonunit only at n = 3.
i64 r3_nonunit_uncorrected(u64 n);

// Lexicographically least canonical triple (0 <= x <= y <= z) with
// x^2 + y^2 + z^2 = n whose entries all satisfy `accept`.
std::optional<Triple> canonical_triple_search(u64 n, const std::function<bool(i64)>& accept);

// Lexicographically least canonical nonunit triple.
std::optional<Triple> nonunit_witness(u64 n);

// Least (x, y), 0 <= x <= y, with x^2 + y^2 = n and x^2, y^2 != 1.
std::optional<std::pair<i64, i64>> two_nonunit_decomp(u64 n);

// #{(x, y) in Z^2 : x^2 + y^2 = n, xy != 0 mod 5}.
u64 tilde_r2(u64 n);
// 8 * sum_{d | u} (-4/d) where s = 5^t u, (u, 5) = 1. Equals tilde_r2(25 s).
u64 tilde_r2_divisor_formula(u64 s);

// Norms a^2 + b^2 for which no rewriting of (5a)^2 + (5b)^2 exists.
inline constexpr std::array<u64, 6> kChangeExceptionalNorms{1, 2, 5, 8, 18, 250};

// Least (x, y), 0 < x <= y, with x^2 + y^2 = 25 (a^2 + b^2), x^2, y^2 >= 10
// and xy != 0 mod 5.
std::optional<std::pair<i64, i64>> change_witness(i64 a, i64 b);

struct SoleqnSolution {
  unsigned n = 0;
  BigInt y;
  bool operator==(const SoleqnSolution&) const = default;
};

// All (n, y) with 1 <= n <= n_max, y >= 1 and 2^i 5^n = a + y^2.
// i in {0, 1}, a in {1, 4, 9}, n_max in [1, 64].
std::vector<SoleqnSolution> soleqn_solutions(int i, int a, unsigned n_max);

// #{0 <= x <= y <= z : x^2 + y^2 + z^2 = n}.
u64 essentially_distinct_count(u64 n);
// The same count for every n in [0, hi].
std::vector<std::uint32_t> essentially_distinct_table(u64 hi);

// Membership in the nonunit set for all n <= hi, backed by a bitmap of sums
// of two nonunit squares. Immutable after construction.
class NonunitOracle {
 public:
  explicit NonunitOracle(u64 hi);
  u64 bound() const { return hi_; }
  bool contains(u64 n) const;

 private:
  u64 hi_;
  std::vector<bool> two_squares_;
  std::vector<u64> squares_;  // nonunit squares 0, 4, 9, ... <= hi
};

// All n in [max(lo, 1), hi] with n in S3 but not a sum of three nonunit
// squares, optionally only those whose residue mod 5 is in `residues_mod5`.
SieveReport sieve_nonunit_exceptions(u64 lo, u64 hi, const std::optional<std::set<int>>& residues_mod5,
                                     const SieveOptions& options = {});

}  // namespace nusq
