#include "nusq/polygonal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace nusq {

i64 polygonal_value(i64 m, i64 x) {
  if (m < 3) throw std::invalid_argument("polygonal_value: m must be at least 3");
  return ((m - 2) * x * x - (m - 4) * x) / 2;
}

bool has_square_reduction(int m) { return m == 3 || m == 5 || m == 7 || m == 8; }

namespace {

void require_problem(const PolygonalProblem& prob) {
  if (prob.m < 3) throw std::invalid_argument("polygonal problem: m must be at least 3");
  if (prob.k < 1) throw std::invalid_argument("polygonal problem: k must be at least 1");
}

// scale * P_m(x) + offset = X^2 for the admissible roots X.
struct SquareReduction {
  i64 scale;
  i64 offset;
  i64 modulus;
  std::array<i64, 2> residues;  // admissible X mod modulus
  i64 zero_root;                // |X| giving P_m(x) = 0

  bool admissible(i64 X, bool nonzero) const {
    const i64 r = mod(X, modulus);
    if (r != residues[0] && r != residues[1]) return false;
    return !(nonzero && (X == zero_root || X == -zero_root));
  }
  u64 target(u64 n) const { return static_cast<u64>(scale) * n + 3 * static_cast<u64>(offset); }

  // The argument x with scale * P_m(x) + offset = X^2.
  i64 argument(int m, i64 X) const {
    switch (m) {
      case 3:
        return (std::abs(X) - 1) / 2;
      case 5: {
        const i64 s = mod(X, 6) == 5 ? 1 : -1;
        return (s * X + 1) / 6;
      }
      case 7: {
        const i64 s = mod(X, 10) == 7 ? 1 : -1;
        return (s * X + 3) / 10;
      }
      default: {
        const i64 s = mod(X, 3) == 2 ? 1 : -1;
        return (s * X + 1) / 3;
      }
    }
  }
};

const SquareReduction& reduction_for(int m) {
  static const SquareReduction tri{8, 1, 2, {1, 1}, 1};
  static const SquareReduction penta{24, 1, 6, {1, 5}, 1};
  static const SquareReduction hepta{40, 9, 10, {3, 7}, 3};
  static const SquareReduction octa{3, 1, 3, {1, 2}, 1};
  switch (m) {
    case 3: return tri;
    case 5: return penta;
    case 7: return hepta;
    case 8: return octa;
    default: throw std::invalid_argument("no square reduction for m = " + std::to_string(m));
  }
}

struct ValueEntry {
  i64 value;
  i64 arg;
};

// Distinct values P_m(x) <= n, descending, each with its least |x|
// (nonnegative preferred).
std::vector<ValueEntry> values_upto(int m, u64 n, bool nonzero) {
  std::map<i64, i64> best;
  auto offer = [&](i64 x) {
    const i64 v = polygonal_value(m, x);
    if (v < 0 || static_cast<u64>(v) > n) return false;
    if (nonzero && v == 0) return true;
    auto it = best.find(v);
    if (it == best.end()) {
      best.emplace(v, x);
    } else {
      const i64 cur = it->second;
      if (std::abs(x) < std::abs(cur) || (std::abs(x) == std::abs(cur) && x > cur)) it->second = x;
    }
    return true;
  };
  for (i64 x = 0; offer(x); ++x) {
  }
  for (i64 x = -1; offer(x); --x) {
  }
  std::vector<ValueEntry> out;
  for (auto it = best.rbegin(); it != best.rend(); ++it) out.push_back({it->first, it->second});
  return out;
}

std::optional<std::vector<i64>> three_by_reduction(u64 n, int m, bool nonzero) {
  const SquareReduction& red = reduction_for(m);
  const auto t = canonical_triple_search(red.target(n), [&](i64 X) { return red.admissible(X, nonzero); });
  if (!t) return std::nullopt;
  return std::vector<i64>{red.argument(m, t->z), red.argument(m, t->y), red.argument(m, t->x)};
}

class Decomposer {
 public:
  Decomposer(u64 n, const PolygonalProblem& prob)
      : prob_(prob), values_(values_upto(prob.m, n, prob.nonzero)) {
    for (const auto& e : values_) arg_of_.emplace(e.value, e.arg);
  }

  std::optional<std::vector<i64>> solve(u64 n, int k) {
    if (k == 0) {
      if (n == 0) return std::vector<i64>{};
      return std::nullopt;
    }
    if (k == 1) {
      auto it = arg_of_.find(static_cast<i64>(n));
      if (it == arg_of_.end()) return std::nullopt;
      return std::vector<i64>{it->second};
    }
    if (k == 3 && has_square_reduction(prob_.m)) return three_by_reduction(n, prob_.m, prob_.nonzero);
    if (failed_.count({n, k})) return std::nullopt;
    for (const auto& e : values_) {
      if (static_cast<u64>(e.value) > n) continue;
      if (auto rest = solve(n - static_cast<u64>(e.value), k - 1)) {
        rest->insert(rest->begin(), e.arg);
        return rest;
      }
    }
    failed_.insert({n, k});
    return std::nullopt;
  }

 private:
  PolygonalProblem prob_;
  std::vector<ValueEntry> values_;
  std::unordered_map<i64, i64> arg_of_;
  std::set<std::pair<u64, int>> failed_;
};

}  // namespace

std::optional<std::vector<i64>> decompose_polygonal(u64 n, const PolygonalProblem& prob) {
  require_problem(prob);
  if (!has_square_reduction(prob.m)) return decompose_polygonal_dp(n, prob);
  Decomposer d(n, prob);
  return d.solve(n, prob.k);
}

std::optional<std::vector<i64>> decompose_polygonal_dp(u64 n, const PolygonalProblem& prob) {
  require_problem(prob);
  const auto values = values_upto(prob.m, n, prob.nonzero);
  const std::size_t k = static_cast<std::size_t>(prob.k);
  // via[j][s]: index into values of the last term of some j-term sum s, or -1.
  std::vector<std::vector<int>> via(k + 1, std::vector<int>(n + 1, -1));
  std::vector<std::vector<bool>> reach(k + 1, std::vector<bool>(n + 1, false));
  reach[0][0] = true;
  for (std::size_t j = 1; j <= k; ++j) {
    for (u64 s = 0; s <= n; ++s) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        const u64 v = static_cast<u64>(values[i].value);
        if (v <= s && reach[j - 1][s - v]) {
          reach[j][s] = true;
          via[j][s] = static_cast<int>(i);
          break;
        }
      }
    }
  }
  if (!reach[k][n]) return std::nullopt;
  std::vector<i64> args;
  u64 s = n;
  for (std::size_t j = k; j >= 1; --j) {
    const auto& e = values[static_cast<std::size_t>(via[j][s])];
    args.push_back(e.arg);
    s -= static_cast<u64>(e.value);
  }
  return args;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<bool> sumset(const std::vector<bool>& level, const std::vector<ValueEntry>& values) {
  std::vector<bool> next(level.size(), false);
  for (std::size_t s = 0; s < level.size(); ++s) {
    if (!level[s]) continue;
    for (const auto& e : values) {
      const std::size_t t = s + static_cast<std::size_t>(e.value);
      if (t < next.size()) next[t] = true;
    }
  }
  return next;
}

std::vector<bool> three_term_level(int m, bool nonzero, u64 hi) {
  const SquareReduction& red = reduction_for(m);
  const u64 top = red.target(hi);
  std::vector<u64> squares;
  for (u64 X = 0; X * X <= top; ++X) {
    if (red.admissible(static_cast<i64>(X), nonzero)) squares.push_back(X * X);
  }
  std::vector<bool> two(top + 1, false);
  for (std::size_t i = 0; i < squares.size(); ++i) {
    for (std::size_t j = i; j < squares.size() && squares[i] + squares[j] <= top; ++j) {
      two[squares[i] + squares[j]] = true;
    }
  }
  std::vector<bool> level(hi + 1, false);
  for (u64 n = 0; n <= hi; ++n) {
    const u64 N = red.target(n);
    for (u64 sq : squares) {
      if (sq > N) break;
      if (two[N - sq]) {
        level[n] = true;
        break;
      }
    }
  }
  return level;
}

}  // namespace

PolygonalTables::PolygonalTables(int m, bool nonzero, u64 hi, int k_max, bool use_reduction)
    : m_(m), nonzero_(nonzero), hi_(hi) {
  require_problem(PolygonalProblem{m, k_max, nonzero});
  const auto values = values_upto(m, hi, nonzero);
  levels_.resize(static_cast<std::size_t>(k_max) + 1);
  levels_[0].assign(hi + 1, false);
  levels_[0][0] = true;
  for (int k = 1; k <= k_max; ++k) {
    if (k == 3 && use_reduction && has_square_reduction(m)) {
      levels_[3] = three_term_level(m, nonzero, hi);
    } else {
      levels_[k] = sumset(levels_[k - 1], values);
    }
  }
}

// ---------------------------------------------------------------------------

LiftVariant parse_lift_variant(const std::string& name) {
  static const std::map<std::string, LiftVariant> names{
      {"z1", LiftVariant::z1}, {"z2", LiftVariant::z2}, {"z3", LiftVariant::z3}, {"y", LiftVariant::y},
      {"yy", LiftVariant::yy}, {"r0", LiftVariant::r0}, {"r", LiftVariant::r},   {"rr", LiftVariant::rr},
      {"p", LiftVariant::p},   {"pp", LiftVariant::pp}, {"a", LiftVariant::a},   {"aa", LiftVariant::aa},
      {"q", LiftVariant::q},   {"qq", LiftVariant::qq}, {"search", LiftVariant::search}};
  auto it = names.find(name);
  if (it == names.end()) throw std::invalid_argument("unknown lift variant '" + name + "'");
  return it->second;
}

std::string to_string(LiftVariant v) {
  switch (v) {
    case LiftVariant::z1: return "z1";
    case LiftVariant::z2: return "z2";
    case LiftVariant::z3: return "z3";
    case LiftVariant::y: return "y";
    case LiftVariant::yy: return "yy";
    case LiftVariant::r0: return "r0";
    case LiftVariant::r: return "r";
    case LiftVariant::rr: return "rr";
    case LiftVariant::p: return "p";
    case LiftVariant::pp: return "pp";
    case LiftVariant::a: return "a";
    case LiftVariant::aa: return "aa";
    case LiftVariant::q: return "q";
    case LiftVariant::qq: return "qq";
    case LiftVariant::search: return "search";
  }
  return "?";
}

bool is_family_variant(LiftVariant v) {
  return std::find(kFamilyVariants.begin(), kFamilyVariants.end(), v) != kFamilyVariants.end();
}

Triple identity_lift(i64 a, i64 b, i64 c, LiftVariant v) {
  switch (v) {
    case LiftVariant::z1:
    case LiftVariant::yy:
    case LiftVariant::r:
      return {a + 2 * b + 2 * c, -b + 2 * c - 2 * a, -c - 2 * a + 2 * b};
    case LiftVariant::z2:
    case LiftVariant::rr:
      return {-a - 2 * b + 2 * c, b + 2 * c + 2 * a, -c + 2 * a - 2 * b};
    case LiftVariant::z3:
      return {-a + 2 * b - 2 * c, -b - 2 * c + 2 * a, c + 2 * a + 2 * b};
    case LiftVariant::y:
    case LiftVariant::r0:
      return {-a + 2 * b + 2 * c, -b + 2 * c + 2 * a, -c + 2 * a + 2 * b};
    default:
      throw std::invalid_argument("identity_lift: '" + to_string(v) + "' is not a linear identity");
  }
}

FamilyLift family_lift(i64 u, LiftVariant v) {
  switch (v) {
    case LiftVariant::p:
      return {{-18 * u - 3, 6 * u + 1, -15 * u - 2}, {19 * u + 2, 2 * u + 1, 70 * u + 11}};
    case LiftVariant::pp:
      return {{-18 * u - 3, 6 * u + 1, -15 * u - 2}, {10 * u + 1, 26 * u + 5, 67 * u + 10}};
    case LiftVariant::a:
      return {{0, 6 * u + 1, 3 * u + 1}, {u - 1, 2 * u + 1, 20 * u + 4}};
    case LiftVariant::aa:
      return {{0, 6 * u + 1, 3 * u + 1}, {4 * u, 10 * u + 3, 17 * u + 3}};
    case LiftVariant::q:
      return {{9 * u, 6 * u + 1, -6 * u + 1}, {2 * u - 3, 2 * u + 3, 37 * u}};
    case LiftVariant::qq:
      return {{9 * u, 6 * u + 1, -6 * u + 1}, {5 * u - 4, 14 * u - 1, 34 * u + 1}};
    default:
      throw std::invalid_argument("family_lift: '" + to_string(v) + "' is not a parametrised family");
  }
}

bool is_nine_m_lift(const Triple& t, u64 m) {
  if (t.norm() != 9 * m) return false;
  for (i64 v : {t.x, t.y, t.z}) {
    if (v % 3 == 0 || v * v == 1) return false;
  }
  return true;
}

namespace {

// Replacement triples for family parameters where the family output has a
// coordinate equal to +-1.
std::optional<Triple> family_special_value(LiftVariant family, i64 u) {
  if (family == LiftVariant::p && u == -1) return Triple{11, 13, 59};
  if (family == LiftVariant::a && u == -1) return Triple{4, 7, 14};
  if (family == LiftVariant::a && u == 2) return Triple{5, 16, 41};
  if (family == LiftVariant::q && (u == 1 || u == -1)) return Triple{7, 11, 35};
  if (family == LiftVariant::q && (u == 2 || u == -2)) return Triple{10, 55, 49};
  return std::nullopt;
}

// All ordered signed (a, b, c) with a^2 + b^2 + c^2 = m.
std::vector<Triple> all_representations(u64 m) {
  std::set<Triple> reps;
  for (u64 x = 0; 3 * x * x <= m; ++x) {
    for (u64 y = x; x * x + 2 * y * y <= m; ++y) {
      const u64 rest = m - x * x - y * y;
      const u64 z = isqrt(rest);
      if (z * z != rest) continue;
      std::array<i64, 3> base{static_cast<i64>(x), static_cast<i64>(y), static_cast<i64>(z)};
      std::sort(base.begin(), base.end());
      do {
        for (int signs = 0; signs < 8; ++signs) {
          reps.insert(Triple{signs & 1 ? -base[0] : base[0], signs & 2 ? -base[1] : base[1],
                             signs & 4 ? -base[2] : base[2]});
        }
      } while (std::next_permutation(base.begin(), base.end()));
    }
  }
  return {reps.begin(), reps.end()};
}

std::optional<LiftWitness> accept(const Triple& input, const Triple& raw, LiftVariant v, u64 m) {
  if (!is_nine_m_lift(raw, m)) return std::nullopt;
  return LiftWitness{input, raw.canonical(), raw, v};
}

std::optional<LiftWitness> try_linear(const Triple& in, std::initializer_list<LiftVariant> variants, u64 m) {
  for (LiftVariant v : variants) {
    if (auto w = accept(in, identity_lift(in.x, in.y, in.z, v), v, m)) return w;
  }
  return std::nullopt;
}

// (a, b, c) equal to a family input at some u: apply the family, its
// companion, then the listed special values.
std::optional<LiftWitness> try_families(const Triple& in, u64 m) {
  if ((in.y - 1) % 6 != 0) return std::nullopt;
  const i64 u = (in.y - 1) / 6;
  const std::array<std::pair<LiftVariant, LiftVariant>, 3> families{
      {{LiftVariant::p, LiftVariant::pp}, {LiftVariant::a, LiftVariant::aa}, {LiftVariant::q, LiftVariant::qq}}};
  for (auto [first, second] : families) {
    if (family_lift(u, first).input != in) continue;
    for (LiftVariant v : {first, second}) {
      if (auto w = accept(in, family_lift(u, v).output, v, m)) return w;
    }
    if (auto special = family_special_value(first, u)) {
      if (auto w = accept(in, *special, first, m)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<LiftWitness> nine_m_lift_by_identities(u64 m) {
  const auto reps = all_representations(m);
  auto res = [](i64 v) { return mod(v, 3); };
  switch (m % 3) {
    case 0:
      // Inputs with a = b = c = 1 (mod 3).
      if (m == 3) return std::nullopt;
      for (const Triple& t : reps) {
        if (res(t.x) != 1 || res(t.y) != 1 || res(t.z) != 1) continue;
        if (auto w = try_linear(t, {LiftVariant::z1, LiftVariant::z2, LiftVariant::z3}, m)) return w;
      }
      break;
    case 1:
      // a = b = 0, c = 1 (mod 3).
      for (const Triple& t : reps) {
        if (res(t.x) != 0 || res(t.y) != 0 || res(t.z) != 1) continue;
        if (auto w = try_linear(t, {LiftVariant::r0, LiftVariant::r, LiftVariant::rr}, m)) return w;
      }
      if (m == 19) return accept(Triple{-3, -3, 1}, Triple{5, 5, 11}, LiftVariant::r0, m);
      break;
    default:
      // a = 0, b = c = 1 (mod 3).
      for (const Triple& t : reps) {
        if (res(t.x) != 0 || res(t.y) != 1 || res(t.z) != 1) continue;
        if (auto w = try_linear(t, {LiftVariant::y, LiftVariant::yy}, m)) return w;
      }
      for (const Triple& t : reps) {
        if (res(t.x) != 0 || res(t.y) != 1 || res(t.z) != 1) continue;
        if (auto w = try_families(t, m)) return w;
      }
      break;
  }
  return std::nullopt;
}

std::optional<LiftWitness> nine_m_lift_by_search(u64 m) {
  const auto t = canonical_triple_search(9 * m, [](i64 v) { return v % 3 != 0 && v != 1; });
  if (!t) return std::nullopt;
  LiftWitness w;
  w.input = canonical_triple_search(m, [](i64) { return true; }).value_or(Triple{});
  w.output = *t;
  w.raw = *t;
  w.variant = LiftVariant::search;
  return w;
}

std::optional<LiftWitness> nine_m_lift(u64 m) {
  if (m == 0 || !is_sum_three_squares(m)) {
    throw std::invalid_argument("nine_m_lift: " + std::to_string(m) + " is not a positive sum of three squares");
  }
  auto by_identities = nine_m_lift_by_identities(m);
  const auto by_search = nine_m_lift_by_search(m);
  if (by_identities.has_value() != by_search.has_value()) {
    throw std::logic_error("nine_m_lift: identity and search routes disagree at m = " + std::to_string(m));
  }
  return by_identities;
}

// ---------------------------------------------------------------------------

SieveReport polygonal_sieve(const PolygonalProblem& prob, u64 hi, const SieveOptions& options) {
  return polygonal_sieve(prob, 1, hi, options);
}

SieveReport polygonal_sieve(const PolygonalProblem& prob, u64 lo, u64 hi, const SieveOptions& options) {
  require_problem(prob);
  lo = std::max<u64>(lo, 1);
  const bool octa_three = prob.m == 8 && prob.k == 3;
  nlohmann::json job = {{"target", "polygonal"}, {"m", prob.m},   {"k", prob.k},
                        {"nonzero", prob.nonzero}, {"lo", lo}, {"hi", hi},
                        {"chunk_size", options.chunk_size}};
  std::optional<PolygonalTables> tables;
  if (lo <= hi) tables.emplace(prob.m, prob.nonzero, hi, prob.k);
  auto work = [&](u64 clo, u64 chi) {
    std::vector<u64> found;
    for (u64 n = clo; n <= chi; ++n) {
      if (octa_three && !is_sum_three_squares(3 * n + 3)) continue;
      if (!tables->representable(n, prob.k)) found.push_back(n);
    }
    return found;
  };
  SieveReport report = run_chunked("polygonal", lo, hi, job, work, options);
  report.filter = octa_three ? "3n+3 in S3" : "none";
  report.metadata["m"] = prob.m;
  report.metadata["k"] = prob.k;
  report.metadata["nonzero"] = prob.nonzero;
  if (prob.k == 3 && has_square_reduction(prob.m)) report.metadata["grh_conditional_completeness"] = true;
  return report;
}

SieveReport k_sum_exceptions(int m, int k, u64 hi, const SieveOptions& options) {
  if (m != 3 && m != 5 && m != 8) throw std::invalid_argument("k_sum_exceptions: m must be 3, 5 or 8");
  if (k < 3) throw std::invalid_argument("k_sum_exceptions: k must be at least 3");
  return polygonal_sieve(PolygonalProblem{m, k, true}, hi, options);
}

bool octagonal_four_square_check(u64 N) {
  auto ok = [](u64 v) { return v % 3 != 0 && v != 1; };
  for (u64 x = 2; 4 * x * x <= N; ++x) {
    if (!ok(x)) continue;
    for (u64 y = x; x * x + 3 * y * y <= N; ++y) {
      if (!ok(y)) continue;
      for (u64 z = y; x * x + y * y + 2 * z * z <= N; ++z) {
        if (!ok(z)) continue;
        const u64 rest = N - x * x - y * y - z * z;
        const u64 w = isqrt(rest);
        if (w * w == rest && w >= z && ok(w)) return true;
      }
    }
  }
  return false;
}

}  // namespace nusq
