#include "nusq/ternary.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nusq {

namespace {

i64 det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TernaryLattice::TernaryLattice(const Gram& gram) : gram_(gram) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("TernaryLattice: Gram matrix not symmetric");
    }
  }
  const i64 m1 = gram_[0][0];
  const i64 m2 = gram_[0][0] * gram_[1][1] - gram_[0][1] * gram_[0][1];
  det_ = det3(gram_);
  if (m1 <= 0 || m2 <= 0 || det_ <= 0) {
    throw std::invalid_argument("TernaryLattice: Gram matrix not positive definite");
  }

  const double g00 = static_cast<double>(gram_[0][0]);
  const double g01 = static_cast<double>(gram_[0][1]);
  const double g02 = static_cast<double>(gram_[0][2]);
  const double g11 = static_cast<double>(gram_[1][1]);
  const double g12 = static_cast<double>(gram_[1][2]);
  q22_ = g11 - g01 * g01 / g00;
  q23_ = (g12 - g01 * g02 / g00) / q22_;
  q33_ = static_cast<double>(det_) / static_cast<double>(m2);

  // Cholesky: L L^T = G.
  std::array<std::array<double, 3>, 3> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = static_cast<double>(gram_[i][j]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g[i][j];
      for (int k = 0; k < j; ++k) s -= chol_[i][k] * chol_[j][k];
      chol_[i][j] = (i == j) ? std::sqrt(s) : s / chol_[j][j];
    }
  }
}

TernaryLattice TernaryLattice::identity() { return TernaryLattice(Gram{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}); }

i64 TernaryLattice::evaluate(const Vec3& v) const { return inner(v, v); }

i64 TernaryLattice::inner(const Vec3& u, const Vec3& v) const {
  i64 s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += u[i] * gram_[i][j] * v[j];
  return s;
}

std::pair<i64, i64> TernaryLattice::outer_range(u64 hi) const {
  const double r = std::sqrt(static_cast<double>(hi) / q33_);
  const i64 bound = static_cast<i64>(std::ceil(r + 1e-6 * (1.0 + r)));
  return {-bound, bound};
}

// ---------------------------------------------------------------------------

TernaryLattice ell_ab(i64 p, i64 a, i64 b) {
  if (p < 3 || !is_prime(static_cast<u64>(p))) {
    throw std::invalid_argument("ell_ab: p must be an odd prime");
  }
  const i64 e = a * a + b * b + 1;
  return TernaryLattice(Gram{{{e, a * p, b * p}, {a * p, p * p, 0}, {b * p, 0, p * p}}});
}

Mat3 ell_ab_basis(i64 p, i64 a, i64 b) { return Mat3{{{1, 0, 0}, {a, p, 0}, {b, 0, p}}}; }

TernaryLattice form_f() { return TernaryLattice(Gram{{{3, -5, -5}, {-5, 25, 0}, {-5, 0, 25}}}); }

TernaryLattice form_g() { return TernaryLattice(Gram{{{2, -5, 0}, {-5, 25, 0}, {0, 0, 25}}}); }

const TernaryLattice& form(FormId id) {
  static const TernaryLattice f = form_f();
  static const TernaryLattice g = form_g();
  return id == FormId::f ? f : g;
}

TernaryLattice parse_gram(const std::string& text) {
  std::vector<i64> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_gram: bad entry '" + item + "'");
    }
  }
  if (values.size() != 9) throw std::invalid_argument("parse_gram: need nine comma-separated integers");
  Gram g{};
  for (int i = 0; i < 9; ++i) g[i / 3][i % 3] = values[i];
  return TernaryLattice(g);
}

// ---------------------------------------------------------------------------

u64 rep_count(const TernaryLattice& L, u64 n) {
  u64 count = 0;
  L.for_each_vector(n, n, [&](const Vec3&, i64) { ++count; });
  return count;
}

std::vector<Vec3> vectors_of_norm(const TernaryLattice& L, u64 n) {
  std::vector<Vec3> out;
  L.for_each_vector(n, n, [&](const Vec3& v, i64) { out.push_back(v); });
  return out;
}

QSeries theta_coeffs(const TernaryLattice& L, u64 N, unsigned threads) {
  if (N > kThetaMaxPrecision) {
    throw ResourceLimitError("theta_coeffs: precision " + std::to_string(N) + " exceeds " +
                             std::to_string(kThetaMaxPrecision));
  }
  const auto [zmin, zmax] = L.outer_range(N);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(zmax - zmin + 1)));
  std::vector<QSeries> partial(workers);
  const i64 span = zmax - zmin + 1;
  parallel_for(workers, workers, [&](std::size_t w) {
    QSeries& c = partial[w];
    c.assign(N + 1, 0);
    const i64 first = zmin + span * static_cast<i64>(w) / workers;
    const i64 last = zmin + span * static_cast<i64>(w + 1) / workers - 1;
    L.for_each_vector(0, N, [&](const Vec3&, i64 norm) { ++c[static_cast<std::size_t>(norm)]; },
                      std::pair<i64, i64>(first, last));
  });
  QSeries total = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) {
    for (std::size_t n = 0; n <= N; ++n) total[n] += partial[w][n];
  }
  return total;
}

// ---------------------------------------------------------------------------

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat3 transpose(const Mat3& a) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

bool is_isometry(const TernaryLattice& source, const TernaryLattice& target, const Mat3& m) {
  return multiply(multiply(transpose(m), target.gram()), m) == source.gram();
}

std::vector<Isometry> isometries(const TernaryLattice& source, const TernaryLattice& target) {
  const Gram& gs = source.gram();
  const auto v0 = vectors_of_norm(target, static_cast<u64>(gs[0][0]));
  const auto v1 = vectors_of_norm(target, static_cast<u64>(gs[1][1]));
  const auto v2 = vectors_of_norm(target, static_cast<u64>(gs[2][2]));
  std::vector<Isometry> out;
  std::vector<const Vec3*> third;
  for (const auto& a : v0) {
    third.clear();
    for (const auto& c : v2) {
      if (target.inner(a, c) == gs[0][2]) third.push_back(&c);
    }
    if (third.empty()) continue;
    for (const auto& b : v1) {
      if (target.inner(a, b) != gs[0][1]) continue;
      for (const Vec3* c : third) {
        if (target.inner(b, *c) != gs[1][2]) continue;
        Isometry iso;
        for (int i = 0; i < 3; ++i) {
          iso.matrix[i][0] = a[i];
          iso.matrix[i][1] = b[i];
          iso.matrix[i][2] = (*c)[i];
        }
        out.push_back(iso);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 isometry_count(const TernaryLattice& source, const TernaryLattice& target) {
  return isometries(source, target).size();
}

u64 automorphism_count(const TernaryLattice& L) { return isometry_count(L, L); }

std::vector<Orbit> orbit_decomposition(const TernaryLattice& source, const TernaryLattice& target) {
  const auto all = isometries(source, target);
  const auto group = isometries(target, target);
  std::set<Mat3> seen;
  std::vector<Orbit> orbits;
  for (const auto& sigma : all) {
    if (seen.count(sigma.matrix)) continue;
    Orbit orbit{sigma, 0};
    for (const auto& g : group) {
      if (seen.insert(multiply(g.matrix, sigma.matrix)).second) ++orbit.size;
    }
    orbits.push_back(orbit);
  }
  u64 total = 0;
  for (const auto& o : orbits) total += o.size;
  if (total != all.size()) throw std::logic_error("orbit_decomposition: orbit sizes do not sum to |R|");
  return orbits;
}

std::vector<Isometry> orbit_representatives(const TernaryLattice& source, const TernaryLattice& target) {
  std::vector<Isometry> reps;
  for (const auto& o : orbit_decomposition(source, target)) reps.push_back(o.representative);
  return reps;
}

// ---------------------------------------------------------------------------

SieveReport genus_exception_sieve(FormId id, u64 hi, const SieveOptions& options) {
  return genus_exception_sieve(id, 1, hi, options);
}

SieveReport genus_exception_sieve(FormId id, u64 lo, u64 hi, const SieveOptions& options) {
  const TernaryLattice& L = form(id);
  const u64 residue = id == FormId::f ? 2 : 3;
  const std::string name = id == FormId::f ? "form-f" : "form-g";
  nlohmann::json job = {{"target", name}, {"lo", lo}, {"hi", hi}, {"chunk_size", options.chunk_size}};
  auto work = [&](u64 clo, u64 chi) {
    std::vector<bool> represented(chi - clo + 1, false);
    L.for_each_vector(clo, chi, [&](const Vec3&, i64 norm) {
      represented[static_cast<u64>(norm) - clo] = true;
    });
    const auto square_free = square_free_flags(clo, chi);
    std::vector<u64> found;
    for (u64 n = clo; n <= chi; ++n) {
      if (n % 5 != residue || n % 8 == 7) continue;
      if (square_free[n - clo] && !represented[n - clo]) found.push_back(n);
    }
    return found;
  };
  SieveReport report = run_chunked(name, lo, hi, job, work, options);
  report.filter = "square-free, n mod 5 = " + std::to_string(residue) + ", n mod 8 != 7";
  report.metadata["grh_conditional_completeness"] = true;
  return report;
}

}  // namespace nusq
