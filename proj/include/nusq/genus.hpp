#pragma once

// The genus {f, g}: local densities and the closed-form genus count, the
// Eisenstein/cusp split phi = (theta_g - theta_f) / 2, and the weight-2
// newform attached to y^2 + xy + y = x^3 + x^2 - 3x + 1 (Cremona 50b1).

#include <array>
#include <utility>
#include <vector>

#include "nusq/arith.hpp"
#include "nusq/ternary.hpp"

namespace nusq {

// Square-free, n != 7 (mod 8), n = 2 or 3 (mod 5): the square-free integers
// represented by the genus of f.
bool is_genus_eligible(u64 n);

// Local density alpha_p(n, f). Throws std::invalid_argument for ineligible n
// or composite p.
Rational alpha_p(u64 n, u64 p);

struct LocalDensityProfile {
  u64 n = 0;
  // Primes dividing 10n. Every other prime p contributes 1 + (-n/p)/p,
  // which is carried by L(1, chi_{-100n}).
  std::vector<std::pair<u64, Rational>> factors;
};
LocalDensityProfile local_density_profile(u64 n);

// b_n * pi: 4/3 if n = 3 (mod 8), else 2.
Rational b_n_times_pi(u64 n);

struct GenusCount {
  Rational exact;
  double value = 0.0;
};

// r(n, gen f) = b_n sqrt(n) L(1, chi_{-100n}) for eligible n, with pi and the
// square roots cancelled exactly.
GenusCount r_gen_f(u64 n);

// (w_f, w_g) = mass weights 1/o(.) normalised to sum to 1.
std::pair<Rational, Rational> genus_weights();
Rational weighted_genus_average(u64 n);
Rational weighted_genus_average(u64 r_f, u64 r_g);

// a(n) = (r(n, g) - r(n, f)) / 2.
i64 phi_coeff(u64 n);
QSeries phi_series(u64 N, unsigned threads = 1);

struct EllipticTrace {
  u64 p = 0;
  i64 a_p = 0;
};

// #E(F_p) including the point at infinity.
u64 curve_point_count(u64 p);
// a_p = p + 1 - #E(F_p). Throws std::invalid_argument for composite p.
EllipticTrace elliptic_ap(u64 p);

// A(1..N) of the newform, A(0) = 0. N <= 10^5.
QSeries shimura_coeffs(u64 N);
inline constexpr u64 kShimuraMaxPrecision = 100'000;

inline constexpr std::array<u64, 7> kSquareClassRepresentatives{2, 3, 13, 17, 22, 42, 62};
// The unique m above with n/m a square in Q_2 and Q_5.
u64 waldspurger_representative(u64 n);

}  // namespace nusq
