#pragma once

#include <array>
#include <vector>

#include "multipole/algebra.hpp"

namespace multipole {

using Vec2 = Eigen::Vector2cd;

// Point of the projective plane, scaled so that its first max-modulus
// coordinate equals 1.
class ProjPoint2 {
 public:
  ProjPoint2() : coords_(0, 0, 1) {}
  explicit ProjPoint2(const Vec3& v);

  const Vec3& coords() const { return coords_; }
  cd operator[](int i) const { return coords_[i]; }

 private:
  Vec3 coords_;
};

// Point [u0 : u1] of the projective line, normalized like ProjPoint2.
class ProjPoint1 {
 public:
  ProjPoint1() : coords_(1, 0) {}
  explicit ProjPoint1(const Vec2& u);
  ProjPoint1(cd u0, cd u1) : ProjPoint1(Vec2(u0, u1)) {}

  const Vec2& coords() const { return coords_; }
  cd operator[](int i) const { return coords_[i]; }

 private:
  Vec2 coords_;
};

// Chordal distance |a x b| / (|a| |b|), in [0, 1].
double proj_distance(const Vec3& a, const Vec3& b);
double proj_distance(const Vec2& a, const Vec2& b);
inline double proj_distance(const ProjPoint2& a, const ProjPoint2& b) {
  return proj_distance(a.coords(), b.coords());
}
inline double proj_distance(const ProjPoint1& a, const ProjPoint1& b) {
  return proj_distance(a.coords(), b.coords());
}

// Homogeneous binary form sum_k c_k u0^k u1^(n-k).
struct BinaryForm {
  int degree = 0;
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(1);

  BinaryForm() = default;
  BinaryForm(int n, Eigen::VectorXcd c);
  static BinaryForm zero(int n) { return {n, Eigen::VectorXcd::Zero(n + 1)}; }
  // u1 * a0 - u0 * a1, vanishing exactly at [a0 : a1].
  static BinaryForm linear_vanishing_at(const ProjPoint1& a);

  cd operator()(const Vec2& u) const;
  double max_abs() const { return coeffs.cwiseAbs().maxCoeff(); }
  BinaryForm d_u0() const;

  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(cd s, BinaryForm a) {
    a.coeffs *= s;
    return a;
  }
};

// Rational parameterization u -> (alpha0(u), alpha1(u), alpha2(u)) of {Q = 0}.
struct ConicParam {
  std::array<BinaryForm, 3> alphas;
  Mat3 reduction;

  Vec3 eval(const Vec2& u) const;
  ProjPoint2 point(const ProjPoint1& u) const { return ProjPoint2(eval(u.coords())); }
};

struct RootCluster {
  ProjPoint1 point;
  int multiplicity = 1;
};

// Sphere parameterization (i(u0^2 - u1^2), 2i u0 u1, u0^2 + u1^2) composed
// with A^{-1}.
ConicParam conic_param(const QuadForm& q);

// P(alpha0, alpha1, alpha2) as a binary form of degree 2 deg P.
BinaryForm restrict_to_conic(const HomogPoly& p, const ConicParam& param);

// Projective roots with multiplicities, summing to p.degree. Roots closer
// than eps_cluster (chordal) are merged; a second pass merges nearby
// clusters whose merged center passes a derivative test for a multiple root
// (skipped when merge_multiple is false).
// Throws ZeroForm when max |coeff| <= 1e-14 * ref_norm (or is exactly 0).
std::vector<RootCluster> roots_projective(const BinaryForm& p,
                                          double eps_cluster = Tolerances{}.eps_cluster,
                                          double ref_norm = 0.0, bool merge_multiple = true);

// Line through two points of the conic, or the tangent line when they
// coincide within eps_cluster. Throws NotOnConic.
HomogPoly line_through(const ProjPoint2& pa, const ProjPoint2& pb, const QuadForm& q,
                       double eps_cluster = Tolerances{}.eps_cluster);

// Resultant of p and dp/du0 (Sylvester determinant after dropping vanishing
// leading coefficients); exactly 0 when [1:0] is a root of multiplicity >= 2.
// p is scaled to unit max coefficient first.
cd binary_discriminant(const BinaryForm& p);

// Smallest over largest singular value of the same Sylvester matrix, in
// [0, 1]; 0 exactly when binary_discriminant is 0.
double relative_discriminant(const BinaryForm& p);

ProjPoint2 conj_point(const ProjPoint2& p);

// Whether Q(p) vanishes to tol relative to |B| |p|^2.
bool on_conic(const Vec3& p, const QuadForm& q, double tol = 1e-9);

}  // namespace multipole
