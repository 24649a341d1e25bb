#include "nusq/genus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nusq {

bool is_genus_eligible(u64 n) {
  if (n == 0 || n % 8 == 7) return false;
  if (n % 5 != 2 && n % 5 != 3) return false;
  return is_square_free(n);
}

namespace {

void require_eligible(u64 n, const char* who) {
  if (!is_genus_eligible(n)) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(n) +
                                " is not a square-free integer represented by the genus");
  }
}

}  // namespace

Rational alpha_p(u64 n, u64 p) {
  require_eligible(n, "alpha_p");
  if (!is_prime(p)) throw std::invalid_argument("alpha_p: p must be prime");
  if (p == 5) return Rational(2);
  if (p == 2) return n % 8 == 3 ? Rational(1) : Rational(3, 2);
  const i64 pp = static_cast<i64>(p);
  if (n % p == 0) return Rational(pp * pp - 1, pp * pp);
  return Rational(pp + legendre_symbol(-static_cast<i64>(n), pp), pp);
}

LocalDensityProfile local_density_profile(u64 n) {
  require_eligible(n, "local_density_profile");
  LocalDensityProfile profile;
  profile.n = n;
  std::vector<u64> primes{2, 5};
  for (auto [p, e] : factorize(n).factors) {
    if (p != 2) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) profile.factors.emplace_back(p, alpha_p(n, p));
  return profile;
}

Rational b_n_times_pi(u64 n) { return n % 8 == 3 ? Rational(4, 3) : Rational(2); }

GenusCount r_gen_f(u64 n) {
  require_eligible(n, "r_gen_f");
  // Minkowski-Siegel: r = (2 pi / 25) sqrt(n) prod_p alpha_p. The odd primes
  // away from 5 collapse to (25 / (3 pi^2)) L(1, chi_{-100n}), leaving
  // r = (2 / (3 pi)) alpha_2 alpha_5 sqrt(n) L.
  const Rational scale = Rational(2, 3) * alpha_p(n, 2) * alpha_p(n, 5);
  if (scale != b_n_times_pi(n)) throw std::logic_error("r_gen_f: b_n disagrees with local densities");

  const QuadraticLValue L = l_value_quadratic(-100 * static_cast<i64>(n));
  // sqrt(n) * pi / sqrt(|D*|) with the pi cancelled by b_n.
  Rational root;
  if (!rational_sqrt(Rational(static_cast<i64>(n), -L.fundamental), root)) {
    throw std::logic_error("r_gen_f: n / |D*| is not a rational square");
  }
  GenusCount out;
  out.exact = scale * L.coefficient * root;
  out.value = out.exact.convert_to<double>();
  return out;
}

std::pair<Rational, Rational> genus_weights() {
  static const std::pair<Rational, Rational> weights = [] {
    const Rational inv_f(1, static_cast<i64>(automorphism_count(form(FormId::f))));
    const Rational inv_g(1, static_cast<i64>(automorphism_count(form(FormId::g))));
    const Rational total = inv_f + inv_g;
    return std::pair<Rational, Rational>(inv_f / total, inv_g / total);
  }();
  return weights;
}

Rational weighted_genus_average(u64 r_f, u64 r_g) {
  const auto [wf, wg] = genus_weights();
  return wf * static_cast<i64>(r_f) + wg * static_cast<i64>(r_g);
}

Rational weighted_genus_average(u64 n) {
  return weighted_genus_average(rep_count(form(FormId::f), n), rep_count(form(FormId::g), n));
}

i64 phi_coeff(u64 n) {
  const i64 diff = static_cast<i64>(rep_count(form(FormId::g), n)) - static_cast<i64>(rep_count(form(FormId::f), n));
  if (diff % 2 != 0) throw std::logic_error("phi_coeff: r(n,g) - r(n,f) is odd at n = " + std::to_string(n));
  return diff / 2;
}

QSeries phi_series(u64 N, unsigned threads) {
  const QSeries tf = theta_coeffs(form(FormId::f), N, threads);
  const QSeries tg = theta_coeffs(form(FormId::g), N, threads);
  QSeries phi(N + 1, 0);
  for (u64 n = 0; n <= N; ++n) {
    const i64 diff = tg[n] - tf[n];
    if (diff % 2 != 0) throw std::logic_error("phi_series: odd difference at n = " + std::to_string(n));
    phi[n] = diff / 2;
  }
  return phi;
}

// ---------------------------------------------------------------------------

u64 curve_point_count(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("curve_point_count: p must be prime");
  const i64 P = static_cast<i64>(p);
  u64 count = 1;  // point at infinity
  if (p == 2) {
    for (i64 x = 0; x < 2; ++x)
      for (i64 y = 0; y < 2; ++y)
        if (mod(y * y + x * y + y - (x * x * x + x * x - 3 * x + 1), 2) == 0) ++count;
    return count;
  }
  // y^2 + (x + 1) y - r(x) = 0 has 1 + ((x+1)^2 + 4 r(x) / p) roots.
  for (i64 x = 0; x < P; ++x) {
    const i64 r = mod(mod(mod(x * x, P) * x, P) + mod(x * x, P) - 3 * x + 1, P);
    const i64 disc = mod(mod((x + 1) * (x + 1), P) + 4 * r, P);
    count += static_cast<u64>(1 + legendre_symbol(disc, P));
  }
  return count;
}

EllipticTrace elliptic_ap(u64 p) {
  EllipticTrace t;
  t.p = p;
  t.a_p = static_cast<i64>(p) + 1 - static_cast<i64>(curve_point_count(p));
  return t;
}

QSeries shimura_coeffs(u64 N) {
  if (N > kShimuraMaxPrecision) {
    throw ResourceLimitError("shimura_coeffs: N above " + std::to_string(kShimuraMaxPrecision));
  }
  QSeries A(N + 1, 0);
  if (N == 0) return A;
  A[1] = 1;
  std::vector<u64> spf(N + 1, 0);
  for (u64 i = 2; i <= N; ++i) {
    if (spf[i]) continue;
    for (u64 j = i; j <= N; j += i)
      if (!spf[j]) spf[j] = i;
  }
  for (u64 n = 2; n <= N; ++n) {
    const u64 p = spf[n];
    u64 pk = 1;
    u64 m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      pk *= p;
      ++k;
    }
    if (m > 1) {
      A[n] = A[pk] * A[m];
      continue;
    }
    // n = p^k.
    const bool bad = (p == 2 || p == 5);
    // Bad primes: a_2 = +1 (split multiplicative), a_5 = 0 (additive).
    const i64 ap = p == 2 ? 1 : (p == 5 ? 0 : elliptic_ap(p).a_p);
    if (k == 1) {
      A[n] = ap;
    } else if (bad) {
      A[n] = ap * A[n / p];
    } else {
      A[n] = ap * A[n / p] - static_cast<i64>(p) * A[n / (p * p)];
    }
  }
  return A;
}

namespace {

// a/b is a square in Q_p, for positive integers a, b.
bool same_square_class(u64 a, u64 b, u64 p) {
  auto split = [p](u64 v) {
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    return std::pair<int, u64>(e, v);
  };
  const auto [ea, ua] = split(a);
  const auto [eb, ub] = split(b);
  if ((ea - eb) % 2 != 0) return false;
  if (p == 2) return ua % 8 == ub % 8;
  return legendre_symbol(static_cast<i64>((ua % p) * (ub % p)), static_cast<i64>(p)) == 1;
}

}  // namespace

u64 waldspurger_representative(u64 n) {
  require_eligible(n, "waldspurger_representative");
  u64 found = 0;
  int matches = 0;
  for (u64 m : kSquareClassRepresentatives) {
    if (same_square_class(n, m, 2) && same_square_class(n, m, 5)) {
      found = m;
      ++matches;
    }
  }
  if (matches != 1) throw std::logic_error("waldspurger_representative: square class not unique");
  return found;
}

}  // namespace nusq
