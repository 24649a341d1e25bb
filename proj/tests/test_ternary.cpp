#include <doctest.h>

#include <set>

#include "nusq/nonunit.hpp"
#include "nusq/ternary.hpp"

using namespace nusq;

namespace {

// Representation counts over a cube, doubled until the counts up to hi stop
// changing.
std::vector<u64> box_counts(const TernaryLattice& L, u64 hi, i64 r) {
  std::vector<u64> c(hi + 1, 0);
  for (i64 x = -r; x <= r; ++x)
    for (i64 y = -r; y <= r; ++y)
      for (i64 z = -r; z <= r; ++z) {
        const i64 n = L.evaluate({x, y, z});
        if (n >= 0 && n <= static_cast<i64>(hi)) ++c[n];
      }
  return c;
}

std::vector<u64> stable_box_counts(const TernaryLattice& L, u64 hi) {
  i64 r = 4;
  auto c = box_counts(L, hi, r);
  while (true) {
    r *= 2;
    auto next = box_counts(L, hi, r);
    if (next == c) return c;
    c = std::move(next);
  }
}

Mat3 basis_gram(const Mat3& B) { return multiply(transpose(B), B); }

}  // namespace

TEST_CASE("lattice construction") {
  CHECK(ell_ab(5, 2, 2).gram() == Gram{{{9, 10, 10}, {10, 25, 0}, {10, 0, 25}}});
  CHECK(ell_ab(5, 0, 0).gram() == Gram{{{1, 0, 0}, {0, 25, 0}, {0, 0, 25}}});
  CHECK(ell_ab(3, 1, 1).gram() == Gram{{{3, 3, 3}, {3, 9, 0}, {3, 0, 9}}});
  CHECK_THROWS_AS(ell_ab(2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ell_ab(9, 1, 1), std::invalid_argument);
  for (i64 p : {3, 5, 7}) {
    for (i64 a = 0; a < p; ++a)
      for (i64 b = 0; b < p; ++b) {
        const auto L = ell_ab(p, a, b);
        REQUIRE(L.gram() == basis_gram(ell_ab_basis(p, a, b)));
        REQUIRE(L.det() == p * p * p * p);  // index p^2 in I3
      }
  }
  CHECK(form_f().evaluate({1, 0, 0}) == 3);
  CHECK(form_g().evaluate({1, 0, 0}) == 2);
  CHECK(form_f().det() == 625);
  CHECK(form_g().det() == 625);
  CHECK_THROWS_AS(TernaryLattice(Gram{{{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(TernaryLattice(Gram{{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}}), std::invalid_argument);
}

TEST_CASE("cholesky factor reproduces the Gram matrix") {
  for (const auto& L : {form_f(), form_g(), ell_ab(13, 4, 9), TernaryLattice::identity()}) {
    const auto& c = L.cholesky();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int k = 0; k < 3; ++k) s += c[i][k] * c[j][k];
        const double g = static_cast<double>(L.gram()[i][j]);
        REQUIRE(std::abs(s - g) <= 1e-9 * std::max(1.0, std::abs(g)));
      }
  }
}

TEST_CASE("parse_gram") {
  CHECK(parse_gram("3,-5,-5,-5,25,0,-5,0,25").gram() == form_f().gram());
  CHECK(parse_gram(" 1, 0,0,0,1,0,0,0,1").gram() == TernaryLattice::identity().gram());
  CHECK_THROWS_AS(parse_gram("1,0,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gram("1,0,0,0,1,0,0,0,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_gram("1,0,0,0,-1,0,0,0,1"), std::invalid_argument);
}

TEST_CASE("representation counts") {
  CHECK(rep_count(form_f(), 2) == 0);
  CHECK(rep_count(form_g(), 2) == 2);
  CHECK(rep_count(TernaryLattice::identity(), 14) == 48);
  CHECK(theta_coeffs(TernaryLattice::identity(), 3) == QSeries{1, 6, 12, 8});
  CHECK(theta_coeffs(form_f(), 3) == QSeries{1, 0, 0, 2});
  CHECK(theta_coeffs(form_g(), 2) == QSeries{1, 0, 2});
  CHECK_THROWS_AS(theta_coeffs(form_f(), kThetaMaxPrecision + 1), ResourceLimitError);

  for (const auto& L : {TernaryLattice::identity(), form_f(), form_g(), ell_ab(5, 2, 2)}) {
    const auto brute = stable_box_counts(L, 300);
    const auto theta = theta_coeffs(L, 1000);
    const auto theta4 = theta_coeffs(L, 1000, 4);
    REQUIRE(theta == theta4);
    for (u64 n = 0; n <= 300; ++n) REQUIRE(static_cast<u64>(theta[n]) == brute[n]);
    for (u64 n = 0; n <= 1000; n += 7) REQUIRE(rep_count(L, n) == static_cast<u64>(theta[n]));
  }
  const auto id = theta_coeffs(TernaryLattice::identity(), 2000);
  for (u64 n = 0; n <= 2000; ++n) REQUIRE(static_cast<u64>(id[n]) == rk_count(static_cast<i64>(n), 3));
}

TEST_CASE("vectors of a given norm") {
  const auto vs = vectors_of_norm(form_g(), 27);
  CHECK(vs.size() == rep_count(form_g(), 27));
  for (const auto& v : vs) CHECK(form_g().evaluate(v) == 27);
}

TEST_CASE("isometries") {
  const auto I3 = TernaryLattice::identity();
  CHECK(isometry_count(I3, I3) == 48);
  CHECK(isometry_count(ell_ab(5, 2, 2), I3) == 144);
  CHECK(isometry_count(ell_ab(5, 1, 1), I3) == 48);
  CHECK(automorphism_count(I3) == 48);
  for (const auto& iso : isometries(ell_ab(7, 3, 5), I3)) REQUIRE(is_isometry(ell_ab(7, 3, 5), I3, iso.matrix));
  for (const auto& iso : isometries(form_f(), form_f())) REQUIRE(is_isometry(form_f(), form_f(), iso.matrix));
  // The inclusion itself.
  CHECK(is_isometry(ell_ab(5, 2, 2), I3, ell_ab_basis(5, 2, 2)));
  // f and g are in different classes.
  CHECK(isometry_count(form_f(), form_g()) == 0);

  const u64 of = automorphism_count(form_f());
  const u64 og = automorphism_count(form_g());
  const Rational wf = Rational(1, static_cast<i64>(of)) /
                      (Rational(1, static_cast<i64>(of)) + Rational(1, static_cast<i64>(og)));
  CHECK(wf == Rational(2, 5));
  CHECK(Rational(static_cast<i64>(og)) == Rational(2, 3) * static_cast<i64>(of));
}

TEST_CASE("orbits of embeddings") {
  const auto I3 = TernaryLattice::identity();
  const auto orbits = orbit_decomposition(ell_ab(5, 2, 2), I3);
  CHECK(orbits.size() == 3);
  for (const auto& o : orbits) CHECK(o.size == 48);
  // Each orbit's image is a sublattice containing a vector of norm 9.
  std::set<Mat3> reps;
  for (const auto& r : orbit_representatives(ell_ab(5, 2, 2), I3)) reps.insert(r.matrix);
  CHECK(reps.size() == 3);
  // The inclusion's orbit is one of them: some group element maps it to a representative.
  bool found = false;
  for (const auto& g : isometries(I3, I3)) found = found || reps.count(multiply(g.matrix, ell_ab_basis(5, 2, 2)));
  CHECK(found);
  CHECK(orbit_representatives(ell_ab(5, 1, 1), I3).size() == 1);
  CHECK(orbit_representatives(I3, I3).size() == 1);
  CHECK(orbit_representatives(form_f(), form_g()).empty());
}

TEST_CASE("genus exception sieves") {
  CHECK(genus_exception_sieve(FormId::f, 20000).exceptions ==
        std::vector<u64>{2, 37, 42, 97, 142, 262, 277, 427, 562, 667, 982, 1642, 3067, 3502, 4537, 12307});
  CHECK(genus_exception_sieve(FormId::g, 1000).exceptions == std::vector<u64>{3, 133, 163, 478, 883});
  CHECK(genus_exception_sieve(FormId::f, 1).exceptions.empty());
  SieveOptions o;
  o.threads = 3;
  o.chunk_size = 1001;
  const auto r = genus_exception_sieve(FormId::g, 1, 30000, o);
  CHECK(r.exceptions == std::vector<u64>{3, 133, 163, 478, 883});
  CHECK(r.metadata["grh_conditional_completeness"] == true);
}

TEST_CASE("representations by f and g are nonunit sums") {
  const auto tf = theta_coeffs(form_f(), 10000);
  const auto tg = theta_coeffs(form_g(), 10000);
  for (u64 n = 1; n <= 10000; ++n) {
    if (!is_square_free(n)) continue;
    if (n % 5 == 2 && tf[n] > 0) REQUIRE(nonunit_witness(n));
    if (n % 5 == 3 && tg[n] > 0) REQUIRE(nonunit_witness(n));
  }
  // Non-square-free genus members prime to 5 with ord_2 <= 1 are represented by both.
  for (u64 n = 1; n <= 10000; ++n) {
    if (is_square_free(n) || n % 5 == 0 || n % 4 == 0) continue;
    if (tf[n] == 0 && tg[n] == 0) continue;
    REQUIRE(tf[n] > 0);
    REQUIRE(tg[n] > 0);
  }
  for (u64 n = 1; n <= 1000; ++n) {
    REQUIRE((tf[n] > 0) == (rep_count(form_f(), 16 * n) > 0));
    REQUIRE((tg[n] > 0) == (rep_count(form_g(), 16 * n) > 0));
  }
}
