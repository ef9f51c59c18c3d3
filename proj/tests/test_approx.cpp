#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "multipole/approx.hpp"
#include "multipole/error.hpp"
#include "multipole/harmonic.hpp"
#include "test_util.hpp"

using namespace multipole;
using namespace multipole::testing;

namespace {

const Monomial X{1, 0, 0}, Z{0, 0, 1}, XX{2, 0, 0}, XY{1, 1, 0};

SurfaceFunction of(const Poly& p) {
  return [p](const Vec3& v) { return p(v); };
}

const SurfaceFunction exp_x = [](const Vec3& v) { return std::exp(v[0]); };

// Bands of a polynomial from its parity chains, indexed by degree.
std::vector<HomogPoly> oracle_bands(const Poly& p, const QuadForm& q, int d_max) {
  std::vector<HomogPoly> out;
  for (int k = 0; k <= d_max; ++k) out.emplace_back(k);
  auto [even, odd] = grade_split(p);
  for (const Poly* part : {&even, &odd}) {
    if (part->effective_degree() < 0) continue;
    for (const HomogPoly& h : harmonic_decompose(homogenize_on_quadric(*part, q).first, q).components) {
      out[static_cast<std::size_t>(h.degree())] += h;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("harmonic bases are orthonormal and harmonic") {
  const QuadratureRule rule = sphere_rule(16);
  for (const QuadForm& q : {QuadForm::sphere(), QuadForm(Mat3(Eigen::Vector3cd(1.0, 2.0, 0.5).asDiagonal()))}) {
    for (int k = 0; k <= 8; ++k) {
      const auto basis = harmonic_basis(q, k, rule);
      CHECK(basis.size() == static_cast<std::size_t>(2 * k + 1));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(apply_delta_q(basis[i], q).norm() < 1e-9 * basis[i].norm());
        for (std::size_t j = 0; j < basis.size(); ++j) {
          const cd ip = inner_product(basis[i], basis[j], q, rule);
          CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("l2_project examples") {
  const QuadForm s = QuadForm::sphere();
  const QuadratureRule rule = sphere_rule(8);

  const BandDecomposition dx2 = l2_project(of(Poly(HomogPoly::monomial(XX))), s, 4, rule);
  CHECK(std::abs(dx2.bands[0].coeffs()[0] - 1.0 / 3.0) < 1e-12);
  CHECK(rel_diff(dx2.bands[2], HomogPoly::monomial(XX) - s.as_poly() * (1.0 / 3.0)) < 1e-12);
  CHECK(dx2.bands[1].is_zero(1e-12));
  CHECK(dx2.bands[3].is_zero(1e-12));
  CHECK(dx2.bands[4].is_zero(1e-12));

  const BandDecomposition dz = l2_project(of(Poly(HomogPoly::monomial(Z))), s, 4, rule);
  CHECK(rel_diff(dz.bands[1], HomogPoly::monomial(Z)) < 1e-12);
  for (int k : {0, 2, 3, 4}) CHECK(dz.bands[static_cast<std::size_t>(k)].is_zero(1e-12));

  const BandDecomposition de = l2_project(exp_x, s, 12, sphere_rule(24));
  for (std::size_t k = 1; k < de.band_norms.size(); ++k) {
    CHECK(de.band_norms[k] < de.band_norms[k - 1]);
  }
  CHECK(de.residual_norm < 1e-6 * de.f_norm);

  CHECK_THROWS_AS(l2_project(exp_x, s, 5, sphere_rule(8)), Error);
}

TEST_CASE("parseval gap") {
  const QuadForm s = QuadForm::sphere();
  std::mt19937_64 rng(3);
  const Poly p = random_poly(4, rng);
  const QuadratureRule rule = sphere_rule(8);
  const BandDecomposition d = l2_project(of(p), s, 4, rule);
  CHECK(std::abs(parseval_gap(d)) < 1e-9 * d.f_norm * d.f_norm);
  CHECK(std::abs(parseval_gap(of(p), d, s, rule) - parseval_gap(d)) < 1e-12 * d.f_norm * d.f_norm);

  const QuadratureRule big = sphere_rule(16);
  const double g4 = parseval_gap(l2_project(exp_x, s, 4, big));
  const double g8 = parseval_gap(l2_project(exp_x, s, 8, big));
  CHECK(g8 < g4);
  CHECK(g8 >= -1e-10);

  const SurfaceFunction one = [](const Vec3&) { return cd(1.0); };
  for (int d_max : {0, 2, 5}) {
    CHECK(std::abs(parseval_gap(l2_project(one, s, d_max, big))) < 1e-12);
  }
}

TEST_CASE("bands are mutually orthogonal") {
  std::mt19937_64 rng(5);
  const QuadratureRule rule = sphere_rule(16);
  for (const QuadForm& q : {QuadForm::sphere(), QuadForm(Mat3(Eigen::Vector3cd(0.5, 1.5, 3.0).asDiagonal()))}) {
    const BandDecomposition d = l2_project(exp_x, q, 8, rule);
    for (std::size_t k = 0; k < d.bands.size(); ++k) {
      CHECK(apply_delta_q(d.bands[k], q).norm() <= 1e-9 * std::max(1.0, d.bands[k].norm()));
      for (std::size_t l = k + 1; l < d.bands.size(); ++l) {
        CHECK(std::abs(inner_product(d.bands[k], d.bands[l], q, rule)) <=
              1e-8 * d.band_norms[k] * d.band_norms[l] + 1e-300);
      }
    }
  }
}

TEST_CASE("projection is optimal") {
  std::mt19937_64 rng(7);
  const QuadForm q = QuadForm::sphere();
  const QuadratureRule rule = sphere_rule(12);
  const BandDecomposition d = l2_project(exp_x, q, 6, rule);
  const double base = l2_error(exp_x, d.bands, q, rule);
  for (std::size_t k = 0; k < d.bands.size(); ++k) {
    const HomogPoly dir = harmonic_project(random_homog(static_cast<int>(k), rng), q).first;
    for (double eps : {1e-3, -1e-3}) {
      auto bands = d.bands;
      bands[k] += eps * (1.0 / dir.norm()) * dir;
      CHECK(l2_error(exp_x, bands, q, rule) > base);
    }
  }
}

TEST_CASE("projection of a polynomial reproduces its harmonic decomposition") {
  std::mt19937_64 rng(11);
  for (const QuadForm& q : {QuadForm::sphere(), QuadForm(Mat3(Eigen::Vector3cd(2.0, 1.0, 0.7).asDiagonal()))}) {
    for (int d = 0; d <= 6; ++d) {
      const Poly p = random_poly(d, rng);
      const BandDecomposition bd = l2_project(of(p), q, d, sphere_rule(2 * d));
      const auto expected = oracle_bands(p, q, d);
      for (int k = 0; k <= d; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        CHECK((bd.bands[kk] - expected[kk]).norm() <= 1e-8 * std::max(1.0, p.norm()));
      }
    }
  }
}

TEST_CASE("reconstruction error equals the residual norm") {
  const QuadForm q = QuadForm::sphere();
  const QuadratureRule rule = sphere_rule(16);
  const BandDecomposition d = l2_project(exp_x, q, 8, rule);
  CHECK(std::abs(l2_error(exp_x, d.bands, q, rule) - d.residual_norm) < 1e-10);
}

TEST_CASE("multipole_series examples") {
  const QuadForm s = QuadForm::sphere();
  const QuadratureRule rule = sphere_rule(8);
  const BandDecomposition dxy = l2_project(of(Poly(HomogPoly::monomial(XY))), s, 4, rule);
  const SeriesMultipoles sxy = multipole_series(dxy, s, rule);
  REQUIRE(sxy.multipoles.size() == 5);
  CHECK(sxy.multipoles[2].approx_equal(
      Multipole::from(1.0, {HomogPoly::monomial(X), HomogPoly::monomial({0, 1, 0})}), 1e-10));
  for (int k : {0, 1, 3, 4}) CHECK(sxy.multipoles[static_cast<std::size_t>(k)].is_zero());
  CHECK(sxy.multipoles[3].degree() == 3);

  const SurfaceFunction one = [](const Vec3&) { return cd(1.0); };
  const SeriesMultipoles s1 = multipole_series(l2_project(one, s, 4, rule), s, rule);
  CHECK(std::abs(s1.multipoles[0].lambda - 1.0) < 1e-12);
  for (std::size_t k = 1; k < s1.multipoles.size(); ++k) CHECK(s1.multipoles[k].is_zero());

  const QuadratureRule big = sphere_rule(12);
  const BandDecomposition de = l2_project(exp_x, s, 6, big);
  const SeriesMultipoles se = multipole_series(de, s, big, SeriesStrategy::Canonical);
  const auto rec = reconstruct_bands(se, s);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rec.size(); ++k) {
    CHECK(rel_diff(rec[k], de.bands[k]) < 1e-8);
    const std::vector<HomogPoly> partial(rec.begin(), rec.begin() + static_cast<long>(k) + 1);
    const double err = l2_error(exp_x, partial, s, big);
    CHECK(err < prev);
    prev = err;
  }
  for (std::size_t k = 1; k < se.multipoles.size(); ++k) {
    CHECK(se.multipoles[k].degree() == static_cast<int>(k));
    CHECK_FALSE(se.multipoles[k].is_zero());
  }

  // Real bands on the sphere admit the real multipoles.
  const SeriesMultipoles sr = multipole_series(de, s, big);
  for (const Multipole& m : sr.multipoles) {
    for (const Vec3& w : m.lines) CHECK(w.imag().norm() == 0.0);
  }
  const auto rec_r = reconstruct_bands(sr, s);
  for (std::size_t k = 0; k < rec_r.size(); ++k) CHECK(rel_diff(rec_r[k], de.bands[k]) < 1e-8);

  // Canonical pairing of the xy roots is not the real one.
  const SeriesMultipoles sc = multipole_series(dxy, s, rule, SeriesStrategy::Canonical);
  CHECK(rel_diff(harmonic_project(sc.multipoles[2].expand(), s).first, dxy.bands[2]) < 1e-10);
  CHECK_THROWS_AS(multipole_series(dxy, QuadForm::hyperboloid(), rule, SeriesStrategy::RealUnique),
                  Error);
}

TEST_CASE("corollary20_stat") {
  const QuadForm s = QuadForm::sphere();
  const QuadratureRule rule = sphere_rule(12);
  std::mt19937_64 rng(13);
  const Poly p = random_poly(3, rng);
  const auto st = corollary20_stat(multipole_series(l2_project(of(p), s, 6, rule), s, rule));
  REQUIRE(st.rho_squared.size() == 7);
  for (std::size_t k = 4; k < 7; ++k) CHECK(st.rho_squared[k] == 0.0);
  CHECK(st.partial_sums.back() == st.partial_sums[3]);

  const auto se = corollary20_stat(multipole_series(l2_project(exp_x, s, 6, rule), s, rule));
  for (std::size_t k = 0; k < se.rho_squared.size(); ++k) {
    CHECK(std::isfinite(se.partial_sums[k]));
    CHECK(se.rho_squared[k] > 0.0);
  }

  const auto z = corollary20_stat(SeriesMultipoles{{Multipole{}, Multipole{}}, {0.0, 0.0}});
  CHECK(z.partial_sums == std::vector<double>{0.0, 0.0});
}

TEST_CASE("exp(x) approximation to degree 12") {
  const auto t0 = std::chrono::steady_clock::now();
  const QuadForm s = QuadForm::sphere();
  const QuadratureRule rule = sphere_rule(24);
  const BandDecomposition d = l2_project(exp_x, s, 12, rule);
  CHECK(parseval_gap(d) < 1e-6 * d.f_norm * d.f_norm);
  for (std::size_t k = 3; k < d.band_norms.size(); ++k) CHECK(d.band_norms[k] < d.band_norms[k - 1]);
  const SeriesMultipoles sm = multipole_series(d, s, rule);
  const double err = l2_error(exp_x, reconstruct_bands(sm, s), s, rule);
  CHECK(std::abs(err - d.residual_norm) < 1e-9);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
}
