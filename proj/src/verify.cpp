#include "nusq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nusq/genus.hpp"
#include "nusq/nonunit.hpp"
#include "nusq/polygonal.hpp"
#include "nusq/ternary.hpp"

namespace nusq {

namespace {

using json = nlohmann::json;

VerifyCase make_case(std::string label, json expected, json found) {
  VerifyCase c;
  c.label = std::move(label);
  c.pass = expected == found;
  c.expected = std::move(expected);
  c.found = std::move(found);
  return c;
}

json clipped(std::initializer_list<u64> values, u64 hi) {
  json out = json::array();
  for (u64 v : values) {
    if (v >= 1 && v <= hi) out.push_back(v);
  }
  return out;
}

SieveOptions sieve_options(const RunConfig& cfg) {
  SieveOptions o;
  o.threads = cfg.threads;
  return o;
}

std::vector<VerifyCase> nonunit_class(const RunConfig& cfg, u64 hi, std::optional<std::set<int>> residues,
                                      std::initializer_list<u64> expected, const std::string& label) {
  const auto report = sieve_nonunit_exceptions(1, hi, residues, sieve_options(cfg));
  return {make_case(label, clipped(expected, hi), json(report.exceptions))};
}

std::vector<VerifyCase> polygonal_three(const RunConfig& cfg, u64 hi, PolygonalProblem prob,
                                        std::initializer_list<u64> expected, const std::string& label) {
  const auto report = polygonal_sieve(prob, hi, sieve_options(cfg));
  return {make_case(label, clipped(expected, hi), json(report.exceptions))};
}

// k = 4..10 from one set of tables.
std::vector<VerifyCase> polygonal_families(u64 hi, int m, const std::function<std::set<u64>(int)>& expected) {
  const PolygonalTables tables(m, true, hi, 10);
  std::vector<VerifyCase> cases;
  for (int k = 4; k <= 10; ++k) {
    json want = json::array();
    for (u64 n : expected(k)) {
      if (n <= hi) want.push_back(n);
    }
    json got = json::array();
    for (u64 n = 1; n <= hi; ++n) {
      if (!tables.representable(n, k)) got.push_back(n);
    }
    cases.push_back(make_case("k=" + std::to_string(k), want, got));
  }
  return cases;
}

std::set<u64> first_k_minus_one(int k) {
  std::set<u64> s;
  for (int i = 1; i < k; ++i) s.insert(static_cast<u64>(i));
  return s;
}

// ---------------------------------------------------------------------------

std::vector<VerifyCase> check_x2_plus_one(const RunConfig&, u64 hi) {
  json found = json::array();
  for (u64 x = 2; x <= hi; ++x) {
    if (x % 5 != 2 && x % 5 != 3) continue;
    if (!two_nonunit_decomp(x * x + 1)) found.push_back(x);
  }
  return {make_case("x = +-2 (mod 5), x^2 + 1 not a sum of two nonunit squares", clipped({2, 3}, hi), found)};
}

std::vector<VerifyCase> check_change(const RunConfig&, u64 hi) {
  const i64 B = static_cast<i64>(hi);
  std::set<u64> norms, failures;
  for (i64 a = -B; a <= B; ++a) {
    for (i64 b = -B; b <= B; ++b) {
      const u64 s = static_cast<u64>(a * a + b * b);
      if (s == 0) continue;
      norms.insert(s);
      if (!change_witness(a, b)) failures.insert(s);
    }
  }
  json expected = json::array();
  for (u64 s : kChangeExceptionalNorms) {
    if (norms.count(s)) expected.push_back(s);
  }
  return {make_case("norms a^2 + b^2 without a rewriting, |a|,|b| <= " + std::to_string(hi), expected,
                    json(std::vector<u64>(failures.begin(), failures.end())))};
}

std::vector<VerifyCase> check_soleqn(const RunConfig&, u64 hi) {
  const unsigned n_max = static_cast<unsigned>(std::min<u64>(hi, 64));
  const std::map<std::pair<int, int>, std::vector<std::pair<unsigned, const char*>>> table{
      {{0, 1}, {{1, "2"}}},           {{0, 4}, {{1, "1"}, {3, "11"}}}, {{0, 9}, {{2, "4"}}},
      {{1, 1}, {{1, "3"}, {2, "7"}}}, {{1, 4}, {}},                    {{1, 9}, {{1, "1"}, {5, "79"}}}};
  std::vector<VerifyCase> cases;
  for (const auto& [key, rows] : table) {
    json expected = json::array();
    for (const auto& [n, y] : rows) {
      if (n <= n_max) expected.push_back({n, y});
    }
    json found = json::array();
    for (const auto& s : soleqn_solutions(key.first, key.second, n_max)) found.push_back({s.n, s.y.str()});
    cases.push_back(make_case("i=" + std::to_string(key.first) + " a=" + std::to_string(key.second), expected, found));
  }
  return cases;
}

std::vector<VerifyCase> check_lattice_ratios(const RunConfig& cfg, u64) {
  std::vector<u64> primes{3, 5, 7, 11, 13};
  if (cfg.prime) primes = {*cfg.prime};
  const TernaryLattice I3 = TernaryLattice::identity();
  std::vector<VerifyCase> cases;
  for (u64 p : primes) {
    const i64 P = static_cast<i64>(p);
    json found = json::array();
    for (i64 a = 0; a < P; ++a) {
      for (i64 b = 0; b < P; ++b) {
        const u64 count = isometry_count(ell_ab(P, a, b), I3);
        const int symbol = legendre_symbol(-(a * a + b * b + 1), P);
        const u64 ratio = symbol == 1 ? 3 : (symbol == -1 ? 1 : 2);
        if (count != 48 * ratio) found.push_back({a, b, count});
      }
    }
    cases.push_back(make_case("p=" + std::to_string(p) + ": " + std::to_string(p * p) + " pairs (a,b) off the trichotomy",
                              json::array(), found));
  }
  return cases;
}

std::vector<VerifyCase> check_genus_sieve(const RunConfig& cfg, u64 hi, FormId id) {
  const auto report = genus_exception_sieve(id, 1, hi, sieve_options(cfg));
  if (id == FormId::f) {
    return {make_case("square-free n = 2 (mod 5) not represented by f",
                      clipped({2, 37, 42, 97, 142, 262, 277, 427, 562, 667, 982, 1642, 3067, 3502, 4537, 12307}, hi),
                      json(report.exceptions))};
  }
  return {make_case("square-free n = 3 (mod 5) not represented by g", clipped({3, 133, 163, 478, 883}, hi),
                    json(report.exceptions))};
}

std::vector<VerifyCase> check_genus_count(const RunConfig& cfg, u64 hi) {
  const QSeries tf = theta_coeffs(form(FormId::f), hi, cfg.threads);
  const QSeries tg = theta_coeffs(form(FormId::g), hi, cfg.threads);
  json found = json::array();
  for (u64 n = 1; n <= hi; ++n) {
    if (!is_genus_eligible(n)) continue;
    const Rational average = weighted_genus_average(static_cast<u64>(tf[n]), static_cast<u64>(tg[n]));
    if (r_gen_f(n).exact != average) found.push_back(n);
  }
  return {make_case("eligible n with analytic genus count != weighted average", json::array(), found)};
}

std::vector<VerifyCase> check_phi(const RunConfig& cfg, u64 hi) {
  const u64 N = std::min<u64>(hi, 30);
  const std::vector<std::pair<u64, i64>> displayed{{2, 1},   {3, -1},  {8, 1},   {12, -1}, {13, 2},
                                                   {17, -1}, {18, -2}, {22, -3}, {27, 1}};
  json expected = json::array();
  for (auto [n, a] : displayed) {
    if (n <= N) expected.push_back({n, a});
  }
  const QSeries phi = phi_series(N, cfg.threads);
  json found = json::array();
  for (u64 n = 1; n <= N; ++n) {
    if (phi[n] != 0) found.push_back({n, phi[n]});
  }
  return {make_case("nonzero coefficients (n, a(n)), n <= " + std::to_string(N), expected, found)};
}

std::vector<VerifyCase> check_shimura(const RunConfig&, u64 hi) {
  std::vector<VerifyCase> cases;
  const u64 N = std::min<u64>(hi, 11);
  const std::vector<std::pair<u64, i64>> displayed{{1, 1},  {2, 1},  {3, -1}, {4, 1},  {6, -1},
                                                   {7, -2}, {8, 1},  {9, -2}, {11, -3}};
  json expected = json::array();
  for (auto [n, a] : displayed) {
    if (n <= N) expected.push_back({n, a});
  }
  const QSeries A = shimura_coeffs(std::max<u64>(N, std::min<u64>(hi, 2000)));
  json found = json::array();
  for (u64 n = 1; n <= N; ++n) {
    if (A[n] != 0) found.push_back({n, A[n]});
  }
  cases.push_back(make_case("nonzero coefficients (n, A(n)), n <= " + std::to_string(N), expected, found));

  // a_p from a direct count of affine solutions over F_p.
  json mismatches = json::array();
  const u64 P = std::min<u64>(std::max<u64>(hi, 11), 2000);
  for (u64 p = 3; p <= P; ++p) {
    if (p == 5 || !is_prime(p)) continue;
    const i64 q = static_cast<i64>(p);
    i64 affine = 0;
    for (i64 x = 0; x < q; ++x) {
      const i64 rhs = mod(mod(mod(x * x, q) * x, q) + mod(x * x, q) - 3 * x + 1, q);
      for (i64 y = 0; y < q; ++y) {
        if (mod(y * y + x * y + y, q) == rhs) ++affine;
      }
    }
    const i64 ap = q - affine;
    if (ap != A[p] || ap * ap > 4 * q) mismatches.push_back({p, A[p], ap});
  }
  cases.push_back(make_case("primes p <= " + std::to_string(P) + " with A(p) != p + 1 - #E(F_p)", json::array(),
                            mismatches));
  return cases;
}

// Every representation of m with abc != 0 (mod 3), signs normalised to
// a = b = c = 1 (mod 3), admits one of z1..z3.
std::vector<VerifyCase> check_penta_tec(const RunConfig&, u64 hi) {
  json failures = json::array();
  for (u64 m = 1; m <= hi; ++m) {
    if (m == 3) continue;
    bool any_input = false;
    bool ok = true;
    for (u64 x = 1; 3 * x * x <= m && ok; ++x) {
      if (x % 3 == 0) continue;
      for (u64 y = x; x * x + 2 * y * y <= m && ok; ++y) {
        if (y % 3 == 0) continue;
        const u64 rest = m - x * x - y * y;
        const u64 z = isqrt(rest);
        if (z * z != rest || z < y || z % 3 == 0) continue;
        any_input = true;
        std::array<i64, 3> t{static_cast<i64>(x), static_cast<i64>(y), static_cast<i64>(z)};
        for (auto& v : t) {
          if (mod(v, 3) != 1) v = -v;
        }
        std::sort(t.begin(), t.end());
        do {
          bool lifted = false;
          for (LiftVariant v : {LiftVariant::z1, LiftVariant::z2, LiftVariant::z3}) {
            if (is_nine_m_lift(identity_lift(t[0], t[1], t[2], v), m)) lifted = true;
          }
          if (!lifted) ok = false;
        } while (ok && std::next_permutation(t.begin(), t.end()));
      }
    }
    if (any_input && !ok) failures.push_back(m);
  }
  std::vector<VerifyCase> cases;
  cases.push_back(make_case("m <= " + std::to_string(hi) + " with an input (a,b,c) admitting no z-identity",
                            json::array(), failures));

  json seeds = json::array();
  for (auto [n, t] : std::vector<std::pair<u64, Triple>>{
           {9, {1, 2, 2}}, {18, {1, 1, 4}}, {27, {1, 1, 5}}, {126, {1, 2, 11}}}) {
    const bool inlet = t.norm() == n && t.x % 3 != 0 && t.y % 3 != 0 && t.z % 3 != 0;
    if (!inlet) seeds.push_back(n);
  }
  cases.push_back(make_case("seeds 9, 18, 27, 126 failing the inlet condition", json::array(), seeds));
  return cases;
}

std::vector<VerifyCase> check_penta_octa(const RunConfig& cfg, u64 hi) {
  std::vector<VerifyCase> cases;
  json absent = json::array();
  json disagreements = json::array();
  for (u64 m = 1; m <= hi; ++m) {
    if (!is_sum_three_squares(m)) continue;
    try {
      if (!nine_m_lift(m)) absent.push_back(m);
    } catch (const std::logic_error&) {
      disagreements.push_back(m);
    }
  }
  cases.push_back(make_case("m in S3 without a lift of 9m", clipped({1, 2, 3, 14}, hi), absent));
  cases.push_back(make_case("m where identity and search routes disagree", json::array(), disagreements));

  // Random soundness of every identity, with the mod-3 behaviour of each
  // proof branch.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<i64> coord(-50, 50);
  std::uniform_int_distribution<i64> third(-16, 16);
  std::uniform_int_distribution<i64> param(-100, 100);
  constexpr int kTrials = 10000;
  json broken = json::array();
  for (LiftVariant v : kLinearVariants) {
    bool ok = true;
    for (int t = 0; t < kTrials && ok; ++t) {
      const i64 a = coord(rng), b = coord(rng), c = coord(rng);
      const Triple out = identity_lift(a, b, c, v);
      if (out.norm() != 9 * static_cast<u64>(a * a + b * b + c * c)) ok = false;
    }
    // Inputs in the congruence pattern of the branch using v.
    for (int t = 0; t < kTrials && ok; ++t) {
      i64 a = 3 * third(rng) + 1, b = 3 * third(rng) + 1, c = 3 * third(rng) + 1;
      i64 want = 2;
      if (v == LiftVariant::y || v == LiftVariant::yy) {
        a = 3 * third(rng);
        want = 1;
      } else if (v == LiftVariant::r0 || v == LiftVariant::r || v == LiftVariant::rr) {
        a = 3 * third(rng);
        b = 3 * third(rng);
      }
      const Triple out = identity_lift(a, b, c, v);
      if (mod(out.x, 3) != want || mod(out.y, 3) != want || mod(out.z, 3) != want) ok = false;
    }
    if (!ok) broken.push_back(to_string(v));
  }
  for (LiftVariant v : kFamilyVariants) {
    bool ok = true;
    for (int t = 0; t < kTrials && ok; ++t) {
      const auto lift = family_lift(param(rng), v);
      if (lift.output.norm() != 9 * lift.input.norm()) ok = false;
    }
    if (!ok) broken.push_back(to_string(v));
  }
  cases.push_back(make_case("identity variants failing on random inputs", json::array(), broken));
  return cases;
}

std::vector<VerifyCase> check_octagonal_k(const RunConfig&, u64 hi) {
  auto cases = polygonal_families(hi, 8, [](int k) {
    auto s = first_k_minus_one(k);
    for (u64 b : kOctagonalB) s.insert(static_cast<u64>(k) + b);
    return s;
  });
  json small = json::array();
  for (u64 N = 7; N <= 226; N += 3) {
    if (N % 4 != 0 && !octagonal_four_square_check(N)) small.push_back(N);
  }
  json expected_e(std::vector<u64>(kOctagonalFourSquareE.begin(), kOctagonalFourSquareE.end()));
  cases.push_back(make_case("N = 3n + 4 <= 226, 4 !| N, without an admissible four-square solution", expected_e, small));
  json scaled = json::array();
  for (u64 N : kOctagonalFourSquareE) {
    if (!octagonal_four_square_check(4 * N)) scaled.push_back(4 * N);
  }
  cases.push_back(make_case("4N for N in E without an admissible solution", json::array(), scaled));
  return cases;
}

std::vector<TheoremCheck> build_registry() {
  std::vector<TheoremCheck> r;
  r.push_back({"thm-2.4", "n in S3, n = 4 (mod 5), not a sum of three nonunit squares", 100000,
               [](const RunConfig& c, u64 hi) { return nonunit_class(c, hi, std::set<int>{4}, {14, 19}, "n = 4 (mod 5)"); }});
  r.push_back({"thm-2.6", "n in S3, n = 0 (mod 5), not a sum of three nonunit squares", 100000,
               [](const RunConfig& c, u64 hi) {
                 return nonunit_class(c, hi, std::set<int>{0}, {5, 10, 30, 35, 235}, "n = 0 (mod 5)");
               }});
  r.push_back({"thm-2.8", "n in S3, n = 1 (mod 5), not a sum of three nonunit squares", 100000,
               [](const RunConfig& c, u64 hi) {
                 return nonunit_class(c, hi, std::set<int>{1}, {1, 6, 11, 21, 26, 46, 51, 91}, "n = 1 (mod 5)");
               }});
  r.push_back({"lem-2.5", "x^2 + 1 as a sum of two nonunit squares for x = +-2 (mod 5)", 1000, check_x2_plus_one});
  r.push_back({"lem-2.7-change", "rewriting (5a)^2 + (5b)^2 with squares >= 10 prime to 5", 60, check_change});
  r.push_back({"lem-soleqn", "solutions of 2^i 5^n = a + y^2", 40, check_soleqn});
  r.push_back({"prop-2.3", "r(l_ab, I3) / r(I3, I3) against (-e/p)", 13, check_lattice_ratios});
  r.push_back({"thm-3.2-f", "square-free n = 2 (mod 5) in the genus but not represented by f", 100000,
               [](const RunConfig& c, u64 hi) { return check_genus_sieve(c, hi, FormId::f); }});
  r.push_back({"thm-3.2-g", "square-free n = 3 (mod 5) in the genus but not represented by g", 100000,
               [](const RunConfig& c, u64 hi) { return check_genus_sieve(c, hi, FormId::g); }});
  r.push_back({"cor-heptagonal", "n not a sum of three generalized heptagonal numbers", 100000,
               [](const RunConfig& c, u64 hi) {
                 return polygonal_three(c, hi, {7, 3, false}, {10, 16, 76, 307}, "three heptagonal terms");
               }});
  r.push_back({"lem-rngenf", "closed-form genus count against (2/5) r(n,f) + (3/5) r(n,g)", 2000, check_genus_count});
  r.push_back({"phi-series", "coefficients of (theta_g - theta_f) / 2", 30, check_phi});
  r.push_back({"shimura-series", "newform coefficients and elliptic curve point counts", 11, check_shimura});
  r.push_back({"thm-octause", "n in S3 not a sum of three nonunit squares", 100000,
               [](const RunConfig& c, u64 hi) {
                 return nonunit_class(c, hi, std::nullopt,
                                      {1, 2, 3, 5, 6, 10, 11, 14, 19, 21, 26, 30, 35, 37, 42, 46, 51, 91, 163, 235},
                                      "all residues");
               }});
  r.push_back({"lem-penta-tec", "9m from representations with abc != 0 (mod 3)", 10000, check_penta_tec});
  r.push_back({"thm-penta-octa", "9m as x^2 + y^2 + z^2 with xyz != 0 (mod 3), no unit squares", 10000,
               check_penta_octa});
  r.push_back({"tri-3", "n not a sum of three nonzero triangular numbers", 10000,
               [](const RunConfig& c, u64 hi) {
                 return polygonal_three(c, hi, {3, 3, true}, {1, 2, 4, 6, 11, 20, 29}, "three triangular terms");
               }});
  r.push_back({"tri-k", "n not a sum of k nonzero triangular numbers, k = 4..10", 10000,
               [](const RunConfig&, u64 hi) {
                 return polygonal_families(hi, 3, [](int k) {
                   auto s = first_k_minus_one(k);
                   s.insert(static_cast<u64>(k) + 1);
                   s.insert(static_cast<u64>(k) + 3);
                   return s;
                 });
               }});
  r.push_back({"pent-3", "n not a sum of three nonzero generalized pentagonal numbers", 10000,
               [](const RunConfig& c, u64 hi) {
                 return polygonal_three(c, hi, {5, 3, true}, {1, 2}, "three pentagonal terms");
               }});
  r.push_back({"pent-k", "n not a sum of k nonzero generalized pentagonal numbers, k = 4..10", 10000,
               [](const RunConfig&, u64 hi) { return polygonal_families(hi, 5, first_k_minus_one); }});
  r.push_back({"oct-3", "n with 3n + 3 in S3 not a sum of three nonzero generalized octagonal numbers", 10000,
               [](const RunConfig& c, u64 hi) {
                 return polygonal_three(c, hi, {8, 3, true}, {1, 2, 5, 6, 8, 9, 13, 16, 41}, "three octagonal terms");
               }});
  r.push_back({"oct-k", "n not a sum of k nonzero generalized octagonal numbers, k = 4..10", 10000, check_octagonal_k});
  return r;
}

std::string join_json(const json& list) {
  std::string s = list.dump();
  return s;
}

}  // namespace

const std::vector<TheoremCheck>& theorem_registry() {
  static const std::vector<TheoremCheck> registry = build_registry();
  return registry;
}

const TheoremCheck& find_check(const std::string& id) {
  for (const auto& c : theorem_registry()) {
    if (c.id == id) return c;
  }
  throw std::invalid_argument("unknown check id '" + id + "'");
}

VerifyReport run_verify(const std::string& id, const RunConfig& cfg) {
  const TheoremCheck& check = find_check(id);
  VerifyReport report;
  report.id = check.id;
  report.description = check.description;
  report.max_bound = cfg.max_bound ? cfg.max_bound : check.default_max;
  const auto start = std::chrono::steady_clock::now();
  report.cases = check.run(cfg, report.max_bound);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.pass = std::all_of(report.cases.begin(), report.cases.end(), [](const VerifyCase& c) { return c.pass; });
  return report;
}

nlohmann::json VerifyReport::to_json(bool with_timing) const {
  json j;
  j["id"] = id;
  j["description"] = description;
  j["max"] = max_bound;
  j["pass"] = pass;
  json list = json::array();
  for (const auto& c : cases) {
    list.push_back({{"label", c.label}, {"expected", c.expected}, {"found", c.found}, {"pass", c.pass}});
  }
  j["cases"] = list;
  if (with_timing) j["elapsed_ms"] = elapsed_ms;
  return j;
}

std::string VerifyReport::to_text(bool with_timing) const {
  std::ostringstream os;
  os << id << " (max " << max_bound << "): " << (pass ? "pass" : "FAIL");
  if (with_timing) os << " in " << static_cast<long long>(elapsed_ms) << " ms";
  os << '\n';
  for (const auto& c : cases) {
    os << "  " << (c.pass ? "ok   " : "FAIL ") << c.label << '\n';
    os << "       found    " << join_json(c.found) << '\n';
    if (!c.pass) os << "       expected " << join_json(c.expected) << '\n';
  }
  return os.str();
}

std::string VerifyReport::csv_header() { return "id,max,case,pass,expected,found"; }

std::string VerifyReport::to_csv() const {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& c : cases) {
    os << id << ',' << max_bound << ',' << quote(c.label) << ',' << (c.pass ? "true" : "false") << ','
       << quote(c.expected.dump()) << ',' << quote(c.found.dump()) << '\n';
  }
  return os.str();
}

}  // namespace nusq
