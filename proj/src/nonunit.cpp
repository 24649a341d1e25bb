#include "nusq/nonunit.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace nusq {

Triple Triple::canonical() const {
  std::array<i64, 3> v{std::abs(x), std::abs(y), std::abs(z)};
  std::sort(v.begin(), v.end());
  return {v[0], v[1], v[2]};
}

NonunitStatus nonunit_status(u64 n) {
  NonunitStatus s;
  s.n = n;
  s.in_s3 = is_sum_three_squares(n);
  if (s.in_s3) s.witness = nonunit_witness(n);
  s.in_s3_nonunit = s.witness.has_value();
  return s;
}

i64 r3_nonunit_uncorrected(u64 n) {
  const i64 m = static_cast<i64>(n);
  return static_cast<i64>(rk_count(m, 3)) - 6 * static_cast<i64>(rk_count(m - 1, 2)) +
         12 * static_cast<i64>(rk_count(m - 2, 1));
}

u64 r3_nonunit(u64 n) {
  // All three coordinates +-1 only happens at n = 3; those 8 triples are
  // removed three times and restored three times by the pairwise terms.
  i64 value = r3_nonunit_uncorrected(n) - (n == 3 ? 8 : 0);
  return static_cast<u64>(value);
}

std::optional<Triple> canonical_triple_search(u64 n, const std::function<bool(i64)>& accept) {
  for (u64 x = 0; 3 * x * x <= n; ++x) {
    if (!accept(static_cast<i64>(x))) continue;
    for (u64 y = x; x * x + 2 * y * y <= n; ++y) {
      if (!accept(static_cast<i64>(y))) continue;
      const u64 rest = n - x * x - y * y;
      const u64 z = isqrt(rest);
      if (z * z == rest && z >= y && accept(static_cast<i64>(z))) {
        return Triple{static_cast<i64>(x), static_cast<i64>(y), static_cast<i64>(z)};
      }
    }
  }
  return std::nullopt;
}

std::optional<Triple> nonunit_witness(u64 n) {
  return canonical_triple_search(n, [](i64 v) { return v != 1; });
}

std::optional<std::pair<i64, i64>> two_nonunit_decomp(u64 n) {
  for (u64 x = 0; 2 * x * x <= n; ++x) {
    if (x == 1) continue;
    const u64 rest = n - x * x;
    const u64 y = isqrt(rest);
    if (y * y == rest && y != 1) return std::pair<i64, i64>(static_cast<i64>(x), static_cast<i64>(y));
  }
  return std::nullopt;
}

u64 tilde_r2(u64 n) {
  u64 count = 0;
  const u64 s = isqrt(n);
  for (u64 x = 1; x <= s; ++x) {
    if (x % 5 == 0) continue;
    const u64 rest = n - x * x;
    const u64 y = isqrt(rest);
    if (y * y == rest && y != 0 && y % 5 != 0) count += 4;  // signs of x and y
  }
  return count;
}

u64 tilde_r2_divisor_formula(u64 s) {
  if (s == 0) throw std::invalid_argument("tilde_r2_divisor_formula: s must be positive");
  u64 u = s;
  while (u % 5 == 0) u /= 5;
  i64 sum = 0;
  for (u64 d : factorize(u).divisors()) sum += kronecker(-4, static_cast<i64>(d));
  return static_cast<u64>(8 * sum);
}

std::optional<std::pair<i64, i64>> change_witness(i64 a, i64 b) {
  const u64 target = 25 * static_cast<u64>(a * a + b * b);
  for (u64 x = 1; 2 * x * x <= target; ++x) {
    if (x * x < 10 || x % 5 == 0) continue;
    const u64 rest = target - x * x;
    const u64 y = isqrt(rest);
    if (y * y == rest && y >= x && y % 5 != 0) {
      return std::pair<i64, i64>(static_cast<i64>(x), static_cast<i64>(y));
    }
  }
  return std::nullopt;
}

std::vector<SoleqnSolution> soleqn_solutions(int i, int a, unsigned n_max) {
  if ((i != 0 && i != 1) || (a != 1 && a != 4 && a != 9)) {
    throw std::invalid_argument("soleqn_solutions: need i in {0,1} and a in {1,4,9}");
  }
  if (n_max < 1 || n_max > 64) throw std::invalid_argument("soleqn_solutions: n_max must be in [1, 64]");
  std::vector<SoleqnSolution> out;
  BigInt power = i == 1 ? 2 : 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    power *= 5;
    BigInt rest = power - a;
    if (rest < 1) continue;
    BigInt y = boost::multiprecision::sqrt(rest);
    if (y * y == rest) out.push_back({n, y});
  }
  return out;
}

u64 essentially_distinct_count(u64 n) {
  u64 count = 0;
  for (u64 x = 0; 3 * x * x <= n; ++x) {
    for (u64 y = x; x * x + 2 * y * y <= n; ++y) {
      const u64 rest = n - x * x - y * y;
      const u64 z = isqrt(rest);
      if (z * z == rest && z >= y) ++count;
    }
  }
  return count;
}

std::vector<std::uint32_t> essentially_distinct_table(u64 hi) {
  std::vector<std::uint32_t> table(hi + 1, 0);
  for (u64 x = 0; 3 * x * x <= hi; ++x) {
    for (u64 y = x; x * x + 2 * y * y <= hi; ++y) {
      for (u64 z = y, s = x * x + y * y + z * z; s <= hi; ++z, s = x * x + y * y + z * z) {
        ++table[s];
      }
    }
  }
  return table;
}

NonunitOracle::NonunitOracle(u64 hi) : hi_(hi), two_squares_(hi + 1, false) {
  for (u64 v = 0; v * v <= hi; ++v) {
    if (v != 1) squares_.push_back(v * v);
  }
  for (std::size_t i = 0; i < squares_.size(); ++i) {
    for (std::size_t j = i; j < squares_.size() && squares_[i] + squares_[j] <= hi; ++j) {
      two_squares_[squares_[i] + squares_[j]] = true;
    }
  }
}

bool NonunitOracle::contains(u64 n) const {
  if (n > hi_) throw std::out_of_range("NonunitOracle: query above bound");
  for (u64 sq : squares_) {
    if (sq > n) break;
    if (two_squares_[n - sq]) return true;
  }
  return false;
}

SieveReport sieve_nonunit_exceptions(u64 lo, u64 hi, const std::optional<std::set<int>>& residues_mod5,
                                     const SieveOptions& options) {
  const NonunitOracle oracle(hi);
  std::string filter = "none";
  if (residues_mod5) {
    std::ostringstream os;
    os << "n mod 5 in {";
    bool first = true;
    for (int r : *residues_mod5) {
      os << (first ? "" : ",") << r;
      first = false;
    }
    os << "}";
    filter = os.str();
  }
  nlohmann::json job = {{"target", "nonunit"}, {"lo", lo}, {"hi", hi}, {"filter", filter},
                        {"chunk_size", options.chunk_size}};
  auto work = [&](u64 clo, u64 chi) {
    std::vector<u64> found;
    for (u64 n = std::max<u64>(clo, 1); n <= chi; ++n) {
      if (residues_mod5 && !residues_mod5->count(static_cast<int>(n % 5))) continue;
      if (is_sum_three_squares(n) && !oracle.contains(n)) found.push_back(n);
    }
    return found;
  };
  SieveReport report = run_chunked("nonunit", lo, hi, job, work, options);
  report.filter = filter;
  return report;
}

}  // namespace nusq
