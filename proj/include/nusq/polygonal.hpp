#pragma once

// Generalized polygonal numbers P_m(x) = ((m-2)x^2 - (m-4)x)/2, x in Z.
//
// Three-term problems for m in {3, 5, 7, 8} are reduced to constrained sums
// of three squares:
//   m = 3:  8n + 3  = sum (2x + 1)^2
//   m = 5:  24n + 3 = sum (6x - 1)^2
//   m = 7:  40n + 27 = sum (10x - 3)^2
//   m = 8:  3n + 3  = sum (3x - 1)^2
// Longer sums recurse on k down to those tables. A plain DP over the values
// P_m(x) <= n solves any m and is kept as an independent cross-check.
//
// "Nonzero" excludes terms whose value is 0. For m >= 5 that is x = 0; for
// triangular numbers it excludes both x = 0 and x = -1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nusq/arith.hpp"
#include "nusq/nonunit.hpp"
#include "nusq/sieve.hpp"

namespace nusq {

// Throws std::invalid_argument for m < 3.
i64 polygonal_value(i64 m, i64 x);

struct PolygonalProblem {
  int m = 3;
  int k = 3;
  bool nonzero = true;
};

bool has_square_reduction(int m);

// Arguments x_1..x_k with sum P_m(x_i) = n, or nullopt.
std::optional<std::vector<i64>> decompose_polygonal(u64 n, const PolygonalProblem& prob);
// Same question answered by the bounded DP only.
std::optional<std::vector<i64>> decompose_polygonal_dp(u64 n, const PolygonalProblem& prob);

// Representability for every n <= hi and every term count 1..k_max.
class PolygonalTables {
 public:
  // use_reduction: fill the three-term level from the square reductions
  // (requires has_square_reduction(m)); otherwise every level is a sumset.
  PolygonalTables(int m, bool nonzero, u64 hi, int k_max, bool use_reduction = true);

  u64 bound() const { return hi_; }
  int max_terms() const { return static_cast<int>(levels_.size()) - 1; }
  bool representable(u64 n, int k) const { return levels_.at(k).at(n); }

 private:
  int m_;
  bool nonzero_;
  u64 hi_;
  std::vector<std::vector<bool>> levels_;  // levels_[k][n]
};

// ---------------------------------------------------------------------------
// 9m lifting

enum class LiftVariant { z1, z2, z3, y, yy, r0, r, rr, p, pp, a, aa, q, qq, search };

LiftVariant parse_lift_variant(const std::string& name);
std::string to_string(LiftVariant v);
bool is_family_variant(LiftVariant v);
inline constexpr std::array<LiftVariant, 8> kLinearVariants{
    LiftVariant::z1, LiftVariant::z2, LiftVariant::z3, LiftVariant::y,
    LiftVariant::yy, LiftVariant::r0, LiftVariant::r,  LiftVariant::rr};
inline constexpr std::array<LiftVariant, 6> kFamilyVariants{
    LiftVariant::p, LiftVariant::pp, LiftVariant::a, LiftVariant::aa, LiftVariant::q, LiftVariant::qq};

// One of the linear identities A^2 + B^2 + C^2 = 9(a^2 + b^2 + c^2).
// Throws std::invalid_argument for family variants and `search`.
Triple identity_lift(i64 a, i64 b, i64 c, LiftVariant v);

struct FamilyLift {
  Triple input;   // the parametrised (a, b, c)
  Triple output;  // squares summing to 9 * input.norm()
};
// Parametrised families p/pp, a/aa, q/qq evaluated at u.
FamilyLift family_lift(i64 u, LiftVariant v);

struct LiftWitness {
  Triple input;
  Triple output;  // canonical (sorted absolute values)
  Triple raw;     // as produced by the identity
  LiftVariant variant = LiftVariant::search;
};

// x^2 + y^2 + z^2 = 9m, xyz != 0 (mod 3), no x^2 equal to 1.
bool is_nine_m_lift(const Triple& t, u64 m);

// Case analysis on m mod 3 through the identities and families.
std::optional<LiftWitness> nine_m_lift_by_identities(u64 m);
// Exhaustive search for the least canonical triple.
std::optional<LiftWitness> nine_m_lift_by_search(u64 m);
// Identity route, checked against the search route for existence; throws
// std::logic_error if they disagree. m must be a positive element of S3.
std::optional<LiftWitness> nine_m_lift(u64 m);

// ---------------------------------------------------------------------------
// Exceptional sets

inline constexpr std::array<u64, 9> kOctagonalB{1, 2, 3, 5, 6, 9, 10, 13, 17};
inline constexpr std::array<u64, 12> kOctagonalFourSquareE{7, 10, 13, 19, 22, 25, 31, 34, 43, 46, 55, 67};

// All n in [1, hi] that are not sums of k terms of the problem's kind. For
// (m = 8, k = 3, nonzero) only n with 3n + 3 in S3 are considered.
SieveReport polygonal_sieve(const PolygonalProblem& prob, u64 hi, const SieveOptions& options = {});
SieveReport polygonal_sieve(const PolygonalProblem& prob, u64 lo, u64 hi, const SieveOptions& options);
// m in {3, 5, 8}, k >= 3, nonzero terms.
SieveReport k_sum_exceptions(int m, int k, u64 hi, const SieveOptions& options = {});

// x^2 + y^2 + z^2 + w^2 = N with xyzw != 0 (mod 3) and no square equal to 1.
bool octagonal_four_square_check(u64 N);

}  // namespace nusq
