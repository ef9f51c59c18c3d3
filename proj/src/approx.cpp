#include "multipole/approx.hpp"

#include <cmath>
#include <string>

#include "multipole/error.hpp"
#include "multipole/harmonic.hpp"

namespace multipole {

namespace {

cd dot(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, const QuadratureRule& rule) {
  cd sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    sum += rule.weights[static_cast<std::size_t>(i)] * f[i] * std::conj(g[i]);
  }
  return sum;
}

Eigen::VectorXcd sample_function(const SurfaceFunction& f, const std::vector<Vec3>& pts) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) out[static_cast<Eigen::Index>(i)] = f(pts[i]);
  return out;
}

void require_exact(const QuadratureRule& rule, int degree) {
  if (rule.exact_degree < degree) {
    throw Error(ErrorKind::InsufficientQuadrature,
                "rule exact to degree " + std::to_string(rule.exact_degree) + " < " +
                    std::to_string(degree));
  }
}

}  // namespace

std::vector<HomogPoly> harmonic_basis(const QuadForm& q, int k, const QuadratureRule& rule) {
  require_exact(rule, 2 * k);
  const auto pts = ellipsoid_points(q, rule);
  const std::size_t dim = static_cast<std::size_t>(2 * k + 1);
  std::vector<HomogPoly> basis;
  std::vector<Eigen::VectorXcd> samples;
  for (const Monomial& m : monomials(k)) {
    HomogPoly h = harmonic_project(HomogPoly::monomial(m), q).first;
    Eigen::VectorXcd s = sample(h, pts);
    const double before = std::sqrt(std::abs(dot(s, s, rule)));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const cd c = dot(s, samples[j], rule);
        s -= c * samples[j];
        h -= c * basis[j];
      }
    }
    const double after = std::sqrt(std::abs(dot(s, s, rule)));
    if (after <= 1e-8 * before) continue;
    basis.push_back(h * (1.0 / after));
    samples.push_back(s / after);
    if (basis.size() == dim) break;
  }
  if (basis.size() != dim) throw Error(ErrorKind::SolveFailure, "harmonic basis is rank deficient");
  return basis;
}

BandDecomposition l2_project(const SurfaceFunction& f, const QuadForm& q, int d_max,
                             const QuadratureRule& rule) {
  if (d_max < 0) throw Error(ErrorKind::InvalidArgument, "negative band limit");
  require_exact(rule, 2 * d_max);
  const auto pts = ellipsoid_points(q, rule);
  const Eigen::VectorXcd fs = sample_function(f, pts);
  BandDecomposition out;
  const double ff = dot(fs, fs, rule).real();
  out.f_norm = std::sqrt(ff);
  double captured = 0.0;
  Eigen::VectorXcd resid = fs;
  for (int k = 0; k <= d_max; ++k) {
    HomogPoly band(k);
    for (const HomogPoly& e : harmonic_basis(q, k, rule)) band += dot(fs, sample(e, pts), rule) * e;
    const Eigen::VectorXcd bs = sample(band, pts);
    const double nn = dot(bs, bs, rule).real();
    out.bands.push_back(band);
    out.band_norms.push_back(std::sqrt(nn));
    captured += nn;
    resid -= bs;
  }
  out.gap = ff - captured;
  // Same quantity as sqrt(gap) by Pythagoras, without the cancellation.
  out.residual_norm = std::sqrt(dot(resid, resid, rule).real());
  return out;
}

double parseval_gap(const SurfaceFunction& f, const BandDecomposition& d, const QuadForm& q,
                    const QuadratureRule& rule) {
  const Eigen::VectorXcd fs = sample_function(f, ellipsoid_points(q, rule));
  double gap = dot(fs, fs, rule).real();
  for (double n : d.band_norms) gap -= n * n;
  return gap;
}

SeriesMultipoles multipole_series(const BandDecomposition& d, const QuadForm& q,
                                  const QuadratureRule& rule, SeriesStrategy strategy,
                                  const Tolerances& tol) {
  SeriesMultipoles out;
  for (std::size_t k = 0; k < d.bands.size(); ++k) {
    const HomogPoly& band = d.bands[k];
    Multipole m;
    if (d.band_norms[k] <= 1e-12 * d.f_norm) {
      m.lines.assign(k, Vec3(0, 0, 0));
      m.lambda = 0.0;
      out.multipoles.push_back(m);
      out.rho.push_back(0.0);
      continue;
    }
    if (k == 0) {
      m.lambda = band.coeffs()[0];
    } else {
      const bool real = strategy == SeriesStrategy::RealUnique ||
                        (strategy == SeriesStrategy::Auto && q.is_real() && q.is_definite() &&
                         band.is_real(tol.fact));
      const MultipoleFactorization f = real ? real_factor(band, q, tol) : canonical_factor(band, q, tol);
      m = Multipole::from(f);
    }
    out.multipoles.push_back(m);
    out.rho.push_back(std::sqrt(std::abs(inner_product(m.expand(), m.expand(), q, rule))));
  }
  return out;
}

std::vector<HomogPoly> reconstruct_bands(const SeriesMultipoles& s, const QuadForm& q,
                                         const Tolerances& tol) {
  std::vector<HomogPoly> out;
  for (std::size_t k = 0; k < s.multipoles.size(); ++k) {
    const Multipole& m = s.multipoles[k];
    if (m.is_zero()) {
      out.emplace_back(static_cast<int>(k));
    } else {
      out.push_back(harmonic_project(m.expand(), q, tol.harm).first);
    }
  }
  return out;
}

double l2_error(const SurfaceFunction& f, const std::vector<HomogPoly>& bands, const QuadForm& q,
                const QuadratureRule& rule) {
  const auto pts = ellipsoid_points(q, rule);
  Eigen::VectorXcd r = sample_function(f, pts);
  for (const HomogPoly& b : bands) {
    require_exact(rule, 2 * b.degree());
    r -= sample(b, pts);
  }
  return std::sqrt(std::max(0.0, dot(r, r, rule).real()));
}

Corollary20Stat corollary20_stat(const SeriesMultipoles& s) {
  Corollary20Stat out;
  double sum = 0.0;
  for (double r : s.rho) {
    out.rho_squared.push_back(r * r);
    sum += r * r;
    out.partial_sums.push_back(sum);
  }
  return out;
}

}  // namespace multipole
