#include "nusq/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nusq {

u64 isqrt(u64 n) {
  constexpr u64 kMaxRoot = 0xFFFFFFFFULL;
  u64 r = std::min<u64>(static_cast<u64>(std::sqrt(static_cast<long double>(n))), kMaxRoot);
  while (r > 0 && r * r > n) --r;
  while (r < kMaxRoot && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n) {
  if (n < 0) return false;
  u64 r = isqrt(static_cast<u64>(n));
  return r * r == static_cast<u64>(n);
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 powmod(u64 base, u64 exp, u64 m) {
  unsigned __int128 result = 1 % m;
  unsigned __int128 b = base % m;
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<u64>(result);
}

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt sn = boost::multiprecision::sqrt(num);
  BigInt sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return false;
  root = Rational(sn, sd);
  return true;
}

// ---------------------------------------------------------------------------

PrimeTable::PrimeTable(u64 bound) : bound_(bound), composite_(bound + 1, false) {
  composite_[0] = true;
  if (bound >= 1) composite_[1] = true;
  for (u64 i = 2; i <= bound; ++i) {
    if (composite_[i]) continue;
    primes_.push_back(i);
    for (u64 j = i * i; j <= bound; j += i) composite_[j] = true;
  }
}

const PrimeTable& PrimeTable::shared() {
  static const PrimeTable table(1'000'000);
  return table;
}

bool PrimeTable::contains(u64 n) const {
  if (n > bound_) throw std::out_of_range("PrimeTable: query above bound");
  return !composite_[n];
}

bool is_prime(u64 n) {
  const auto& table = PrimeTable::shared();
  if (n <= table.bound()) return table.contains(n);
  for (u64 p : table.primes()) {
    if (p * p > n) return true;
    if (n % p == 0) return false;
  }
  for (u64 d = table.bound() | 1; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

u64 Factorization::product() const {
  u64 result = 1;
  for (auto [p, e] : factors) {
    for (int i = 0; i < e; ++i) result *= p;
  }
  return result;
}

bool Factorization::is_square_free() const {
  for (auto [p, e] : factors) {
    if (e > 1) return false;
  }
  return true;
}

std::vector<u64> Factorization::divisors() const {
  std::vector<u64> divs{1};
  for (auto [p, e] : factors) {
    std::size_t count = divs.size();
    u64 pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization f;
  f.n = n;
  u64 m = n;
  auto take = [&](u64 p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) f.factors.emplace_back(p, e);
  };
  const auto& table = PrimeTable::shared();
  bool done = false;
  for (u64 p : table.primes()) {
    if (p * p > m) {
      done = true;
      break;
    }
    take(p);
  }
  if (!done) {
    for (u64 d = table.bound() | 1; d * d <= m; d += 2) take(d);
  }
  if (m > 1) f.factors.emplace_back(m, 1);
  return f;
}

bool is_square_free(u64 n) { return factorize(n).is_square_free(); }

// ---------------------------------------------------------------------------

int legendre_symbol(i64 a, i64 p) {
  if (p <= 2 || !is_prime(static_cast<u64>(p))) {
    throw std::invalid_argument("legendre_symbol: modulus must be an odd prime, got " +
                                std::to_string(p));
  }
  u64 r = static_cast<u64>(mod(a, p));
  if (r == 0) return 0;
  return powmod(r, static_cast<u64>((p - 1) / 2), static_cast<u64>(p)) == 1 ? 1 : -1;
}

namespace {

// (2/n) indexed by n mod 8, for odd n.
constexpr int kTwoTable[8] = {0, 1, 0, -1, 0, -1, 0, 1};

int jacobi(u64 a, u64 n) {
  int result = 1;
  a %= n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      u64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v & 1) k *= kTwoTable[a & 7];
  if (n == 1) return k;
  return k * jacobi(static_cast<u64>(mod(a, n)), static_cast<u64>(n));
}

// ---------------------------------------------------------------------------

namespace {

u64 r1(i64 n) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  return is_square(n) ? 2 : 0;
}

u64 r2(i64 n) {
  if (n < 0) return 0;
  u64 count = 0;
  u64 s = isqrt(static_cast<u64>(n));
  for (u64 x = 0; x <= s; ++x) {
    u64 c = r1(n - static_cast<i64>(x * x));
    count += (x == 0 ? 1 : 2) * c;
  }
  return count;
}

u64 r3(i64 n) {
  if (n < 0) return 0;
  u64 count = 0;
  u64 s = isqrt(static_cast<u64>(n));
  for (u64 x = 0; x <= s; ++x) {
    count += (x == 0 ? 1 : 2) * r2(n - static_cast<i64>(x * x));
  }
  return count;
}

}  // namespace

u64 rk_count(i64 n, int k) {
  switch (k) {
    case 1: return r1(n);
    case 2: return r2(n);
    case 3: return r3(n);
    default:
      throw std::invalid_argument("rk_count: k must be 1, 2 or 3");
  }
}

u64 r2_divisor_formula(u64 n) {
  if (n == 0) throw std::invalid_argument("r2_divisor_formula: n must be positive");
  u64 product = 1;
  for (auto [p, e] : factorize(n).factors) {
    if (p == 2) continue;
    if (p % 4 == 1) {
      product *= static_cast<u64>(e + 1);
    } else if (e % 2 == 1) {
      return 0;
    }
  }
  return 4 * product;
}

bool is_sum_three_squares(u64 n) {
  if (n == 0) return true;
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

// ---------------------------------------------------------------------------

Discriminant::Discriminant(i64 D) : value_(D) {
  if (D >= 0) throw std::invalid_argument("Discriminant: must be negative");
  if (mod(D, 4) != 0 && mod(D, 4) != 1) {
    throw std::invalid_argument("Discriminant: must be 0 or 1 mod 4, got " + std::to_string(D));
  }
  i64 kernel = 1;
  for (auto [p, e] : factorize(static_cast<u64>(-D)).factors) {
    if (e % 2 == 1) kernel *= static_cast<i64>(p);
  }
  kernel = -kernel;
  fundamental_ = mod(kernel, 4) == 1 ? kernel : 4 * kernel;
  i64 ratio = D / fundamental_;
  conductor_ = static_cast<i64>(isqrt(static_cast<u64>(ratio)));
  if (conductor_ * conductor_ * fundamental_ != D) {
    throw std::logic_error("Discriminant: conductor bookkeeping failed");
  }
}

u64 class_number(const Discriminant& disc) {
  const i64 D = disc.value();
  const i64 absD = -D;
  u64 h = 0;
  for (i64 a = 1; 3 * a * a <= absD; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      if (mod(b - D, 2) != 0) continue;
      i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if ((a == c) && b < 0) continue;
      if (gcd(gcd(a, b), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

u64 class_number(i64 D) { return class_number(Discriminant(D)); }

double QuadraticLValue::value() const {
  const double pi = std::acos(-1.0);
  return coefficient.convert_to<double>() * pi / std::sqrt(static_cast<double>(-fundamental));
}

QuadraticLValue l_value_quadratic(i64 d) {
  if (d == 0) throw std::invalid_argument("l_value_quadratic: d must be nonzero");
  if (d > 0) {
    throw std::invalid_argument(is_square(d) ? "l_value_quadratic: principal character"
                                             : "l_value_quadratic: d > 0 is not supported");
  }
  Discriminant disc(d);
  const i64 D0 = disc.fundamental();
  const u64 h = class_number(D0);
  const int w = D0 == -3 ? 6 : (D0 == -4 ? 4 : 2);

  QuadraticLValue result;
  result.fundamental = D0;
  result.coefficient = Rational(2 * static_cast<i64>(h), w);
  for (auto [p, e] : factorize(static_cast<u64>(-d)).factors) {
    if (D0 % static_cast<i64>(p) == 0) continue;
    result.coefficient *= Rational(static_cast<i64>(p) - kronecker(D0, static_cast<i64>(p)),
                                   static_cast<i64>(p));
  }
  return result;
}

}  // namespace nusq
