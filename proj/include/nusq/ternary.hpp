#pragma once

// Positive-definite ternary lattices given by integral Gram matrices:
// bounded lattice-point enumeration, representation numbers, theta series,
// isometries between lattices and their orbits, and the genus sieves for
// the forms f and g.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nusq/arith.hpp"
#include "nusq/sieve.hpp"

namespace nusq {

using Vec3 = std::array<i64, 3>;
using Mat3 = std::array<std::array<i64, 3>, 3>;
using Gram = Mat3;
// Coefficients c(0..N) of a truncated q-series.
using QSeries = std::vector<i64>;

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TernaryLattice {
 public:
  // Throws std::invalid_argument unless gram is symmetric positive definite.
  explicit TernaryLattice(const Gram& gram);

  static TernaryLattice identity();

  const Gram& gram() const { return gram_; }
  i64 det() const { return det_; }
  // Lower-triangular L with L L^T = gram.
  const std::array<std::array<double, 3>, 3>& cholesky() const { return chol_; }

  i64 evaluate(const Vec3& v) const;
  i64 inner(const Vec3& u, const Vec3& v) const;

  // Range of the last coordinate over all vectors of norm <= hi.
  std::pair<i64, i64> outer_range(u64 hi) const;

  // Calls visit(v, norm) for every v with lo <= v^T G v <= hi, optionally
  // restricting the last coordinate to [outer->first, outer->second].
  // The innermost coordinate is solved in exact integer arithmetic, so the
  // widened floating-point bounds of the outer loops never drop a vector.
  template <class Visitor>
  void for_each_vector(u64 lo, u64 hi, Visitor&& visit,
                       std::optional<std::pair<i64, i64>> outer = std::nullopt) const;

 private:
  Gram gram_;
  i64 det_;
  std::array<std::array<double, 3>, 3> chol_{};
  double q22_;  // g11 - g01^2 / g00
  double q23_;  // (g12 - g01 g02 / g00) / q22
  double q33_;  // det / (g00 g11 - g01^2)
};

struct Isometry {
  // Column j is the image of the j-th source basis vector in target coordinates.
  Mat3 matrix{};
  auto operator<=>(const Isometry&) const = default;
};

// Gram [[e, ap, bp], [ap, p^2, 0], [bp, 0, p^2]] with e = a^2 + b^2 + 1,
// the sublattice Z(e1 + a e2 + b e3) + Z(p e2) + Z(p e3) of I3.
TernaryLattice ell_ab(i64 p, i64 a, i64 b);
// Basis matrix of ell_ab inside I3 (columns are basis vectors).
Mat3 ell_ab_basis(i64 p, i64 a, i64 b);

// f = 3x^2 + 25y^2 + 25z^2 - 10xy - 10xz, g = 2x^2 + 25y^2 + 25z^2 - 10xy.
TernaryLattice form_f();
TernaryLattice form_g();

enum class FormId { f, g };
const TernaryLattice& form(FormId id);

// Parses nine comma-separated integers (row-major).
TernaryLattice parse_gram(const std::string& text);

u64 rep_count(const TernaryLattice& L, u64 n);
std::vector<Vec3> vectors_of_norm(const TernaryLattice& L, u64 n);

// c(n) = rep_count(L, n) for 0 <= n <= N in one enumeration sweep. The last
// coordinate is partitioned across `threads` workers.
QSeries theta_coeffs(const TernaryLattice& L, u64 N, unsigned threads = 1);
inline constexpr u64 kThetaMaxPrecision = 100'000'000;

Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 transpose(const Mat3& a);
bool is_isometry(const TernaryLattice& source, const TernaryLattice& target, const Mat3& m);

// All isometries source -> target, sorted.
std::vector<Isometry> isometries(const TernaryLattice& source, const TernaryLattice& target);
u64 isometry_count(const TernaryLattice& source, const TernaryLattice& target);
u64 automorphism_count(const TernaryLattice& L);

struct Orbit {
  Isometry representative;
  u64 size = 0;
};

// Orbits of O(target) acting on R(source, target) by left multiplication.
// Representatives are the least members of their orbits.
std::vector<Orbit> orbit_decomposition(const TernaryLattice& source, const TernaryLattice& target);
std::vector<Isometry> orbit_representatives(const TernaryLattice& source, const TernaryLattice& target);

// Square-free n <= hi with n = 2 (mod 5) for f (3 (mod 5) for g),
// n != 7 (mod 8), not represented by the form.
SieveReport genus_exception_sieve(FormId id, u64 hi, const SieveOptions& options = {});
SieveReport genus_exception_sieve(FormId id, u64 lo, u64 hi, const SieveOptions& options);

// ---------------------------------------------------------------------------

namespace detail {
inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }
inline i64 ceil_sqrt(i64 n) {
  if (n <= 0) return 0;
  i64 r = static_cast<i64>(isqrt(static_cast<u64>(n)));
  return r * r == n ? r : r + 1;
}
}  // namespace detail

template <class Visitor>
void TernaryLattice::for_each_vector(u64 lo, u64 hi, Visitor&& visit,
                                     std::optional<std::pair<i64, i64>> outer) const {
  if (lo > hi) return;
  const i64 g00 = gram_[0][0], g01 = gram_[0][1], g02 = gram_[0][2];
  const i64 g11 = gram_[1][1], g12 = gram_[1][2], g22 = gram_[2][2];
  const i64 H = static_cast<i64>(hi);
  const i64 Lo = static_cast<i64>(lo);

  auto [zmin, zmax] = outer_range(hi);
  if (outer) {
    zmin = std::max(zmin, outer->first);
    zmax = std::min(zmax, outer->second);
  }
  for (i64 z = zmin; z <= zmax; ++z) {
    const double rest = static_cast<double>(H) - q33_ * static_cast<double>(z) * static_cast<double>(z);
    if (rest < -1e-6 * (1.0 + static_cast<double>(H))) continue;
    const double half = std::sqrt(std::max(0.0, rest) / q22_);
    const double centre = -q23_ * static_cast<double>(z);
    const double slack = 1e-6 * (1.0 + std::abs(centre) + half);
    const i64 ymin = static_cast<i64>(std::floor(centre - half - slack));
    const i64 ymax = static_cast<i64>(std::ceil(centre + half + slack));
    for (i64 y = ymin; y <= ymax; ++y) {
      // g00 * Q = t^2 + g00 * C - B^2 with t = g00 x + B.
      const i64 B = g01 * y + g02 * z;
      const i64 C = g11 * y * y + 2 * g12 * y * z + g22 * z * z;
      const i64 dhi = g00 * (H - C) + B * B;
      if (dhi < 0) continue;
      const i64 sh = static_cast<i64>(isqrt(static_cast<u64>(dhi)));
      const i64 dlo = g00 * (Lo - C) + B * B;
      const i64 sl = detail::ceil_sqrt(dlo);
      auto run = [&](i64 tlo, i64 thi) {
        const i64 xlo = detail::ceil_div(tlo - B, g00);
        const i64 xhi = detail::floor_div(thi - B, g00);
        for (i64 x = xlo; x <= xhi; ++x) {
          const i64 norm = g00 * x * x + 2 * B * x + C;
          visit(Vec3{x, y, z}, norm);
        }
      };
      if (sl <= 0) {
        run(-sh, sh);
      } else if (sl <= sh) {
        run(-sh, -sl);
        run(sl, sh);
      }
    }
  }
}

}  // namespace nusq
