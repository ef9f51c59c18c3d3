#pragma once

#include <functional>
#include <vector>

#include "multipole/quadrature.hpp"
#include "multipole/sylvester.hpp"

namespace multipole {

using SurfaceFunction = std::function<cd(const Vec3&)>;

// Orthonormal basis of Har_Q(k) under the ellipsoid inner product, by
// twice-repeated Gram-Schmidt over harmonic projections of the monomials.
std::vector<HomogPoly> harmonic_basis(const QuadForm& q, int k, const QuadratureRule& rule);

struct BandDecomposition {
  std::vector<HomogPoly> bands;     // f_k in Har_Q(k), k = 0..d_max
  std::vector<double> band_norms;   // |f_k|
  double f_norm = 0.0;              // |f|
  double residual_norm = 0.0;       // |f - sum f_k|
  double gap = 0.0;                 // |f|^2 - sum |f_k|^2, unclamped
};

// Throws InsufficientQuadrature unless rule.exact_degree >= 2 d_max.
BandDecomposition l2_project(const SurfaceFunction& f, const QuadForm& q, int d_max,
                             const QuadratureRule& rule);

// |f|^2 - sum |f_k|^2.
inline double parseval_gap(const BandDecomposition& d) { return d.gap; }
double parseval_gap(const SurfaceFunction& f, const BandDecomposition& d, const QuadForm& q,
                    const QuadratureRule& rule);

// One multipole per band (index k); zero bands give the zero multipole of
// degree k. rho[k] = |lambda prod L| on the ellipsoid.
struct SeriesMultipoles {
  std::vector<Multipole> multipoles;
  std::vector<double> rho;
};

enum class SeriesStrategy {
  Auto,       // RealUnique for real bands on a real definite Q, else Canonical
  Canonical,
  RealUnique, // throws when a band or Q does not qualify
};

// One factorization per band.
SeriesMultipoles multipole_series(const BandDecomposition& d, const QuadForm& q,
                                  const QuadratureRule& rule,
                                  SeriesStrategy strategy = SeriesStrategy::Auto,
                                  const Tolerances& tol = {});

// Q-harmonic part of each multipole's product, which recovers the band.
std::vector<HomogPoly> reconstruct_bands(const SeriesMultipoles& s, const QuadForm& q,
                                         const Tolerances& tol = {});

// L2 distance from f to the sum of the given bands.
double l2_error(const SurfaceFunction& f, const std::vector<HomogPoly>& bands, const QuadForm& q,
                const QuadratureRule& rule);

struct Corollary20Stat {
  std::vector<double> rho_squared;
  std::vector<double> partial_sums;
};

Corollary20Stat corollary20_stat(const SeriesMultipoles& s);

}  // namespace multipole
