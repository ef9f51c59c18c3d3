#pragma once

#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "multipole/algebra.hpp"
#include "multipole/conic.hpp"

namespace multipole {

using BigInt = boost::multiprecision::cpp_int;

// Multiset of pieces over root-cluster indices. A piece (a, b) with a < b
// joins two clusters by a secant; (a, a) is a tangent at cluster a.
struct Parcelling {
  std::vector<std::pair<int, int>> pieces;

  friend bool operator==(const Parcelling&, const Parcelling&) = default;
};

// (2d - 1)!!, with 1 for d = 0.
BigInt count_parcellings(int d);

// All parcellings of the multiplicity function mu (sum 2d), in a fixed order:
// the smallest index with remaining multiplicity is paired first, preferring
// distinct partners in increasing order before a tangent piece. Throws
// OddTotal.
std::vector<Parcelling> enumerate_parcellings(const std::vector<int>& mu);

// The first element of enumerate_parcellings(mu), built directly.
Parcelling canonical_parcelling(const std::vector<int>& mu);

// Root clusters of P on the conic, sorted by normalized parameter.
struct ConicRoots {
  ConicParam param;
  BinaryForm form;  // P restricted to the conic
  std::vector<RootCluster> clusters;
  // Two clusters closer than 10 eps_cluster.
  bool ill_conditioned = false;

  std::vector<int> multiplicities() const;
  int max_multiplicity() const;
};

ConicRoots conic_roots(const HomogPoly& p, const QuadForm& q, const Tolerances& tol = {});

// Line coefficients scaled so that the first max-modulus entry equals 1.
Vec3 normalize_line(const Vec3& w);

// Q^q_power * (lambda * prod(lines) + Q * remainder).
struct MultipoleFactorization {
  int q_power = 0;
  cd lambda = 0.0;
  std::vector<HomogPoly> lines;
  HomogPoly remainder;
  Parcelling parcelling;
  bool ill_conditioned = false;

  HomogPoly product() const;  // lambda * prod(lines)
  HomogPoly reconstruct(const QuadForm& q) const;
};

// Canonical representative of (lambda, lines): normalized lines in
// lexicographic (Re, Im) order.
struct Multipole {
  cd lambda = 0.0;
  std::vector<Vec3> lines;

  static Multipole from(cd lambda, const std::vector<HomogPoly>& lines);
  static Multipole from(const MultipoleFactorization& f) { return from(f.lambda, f.lines); }
  int degree() const { return static_cast<int>(lines.size()); }
  bool is_zero() const { return lambda == 0.0; }
  HomogPoly expand() const;
  // Equal up to reordering, to tol relative.
  bool approx_equal(const Multipole& o, double tol = 1e-8) const;
};

// P = lambda * prod(L) + Q * R for a parcelling of the clusters of
// conic_roots(P, Q). eval_skip skips that many admissible evaluation
// points. Throws DivisibleByQ, NoEvaluationPoint, SolveFailure.
MultipoleFactorization factor_on_quadric(const HomogPoly& p, const QuadForm& q,
                                         const Parcelling& parcelling,
                                         const Tolerances& tol = {}, int eval_skip = 0);
MultipoleFactorization factor_on_quadric(const HomogPoly& p, const QuadForm& q,
                                         const ConicRoots& roots, const Parcelling& parcelling,
                                         const Tolerances& tol = {}, int eval_skip = 0);

// One factorization per parcelling, after stripping Q powers (recorded in
// q_power). Throws ZeroForm for P = 0.
std::vector<MultipoleFactorization> all_factorizations(const HomogPoly& p, const QuadForm& q,
                                                       const Tolerances& tol = {});

// Factorization by the first parcelling in enumeration order.
MultipoleFactorization canonical_factor(const HomogPoly& p, const QuadForm& q,
                                        const Tolerances& tol = {});

// For each cluster, the index of the cluster whose conic point is the
// complex conjugate of its own. Throws ConjugationPairingFailure.
std::vector<int> conjugation_on_clusters(const ConicRoots& roots, double tol);

// The unique conjugation-invariant factorization for real P and real
// definite Q. Throws NotReal, NotDefinite, ConjugationPairingFailure.
MultipoleFactorization real_factor(const HomogPoly& p, const QuadForm& q,
                                   const Tolerances& tol = {});

// All conjugation-invariant factorizations for real P and real Q.
std::vector<MultipoleFactorization> real_factorizations(const HomogPoly& p, const QuadForm& q,
                                                        const Tolerances& tol = {});

struct DiscriminantReport {
  double relative_discriminant = 0.0;
  int max_multiplicity = 0;
  bool in_discriminant = false;
};

// Throws DivisibleByQ.
DiscriminantReport discriminant_report(const HomogPoly& p, const QuadForm& q,
                                       const Tolerances& tol = {});
inline bool in_discriminant(const HomogPoly& p, const QuadForm& q, const Tolerances& tol = {}) {
  return discriminant_report(p, q, tol).in_discriminant;
}

}  // namespace multipole
