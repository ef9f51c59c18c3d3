#include "multipole/maxwell.hpp"

#include "multipole/error.hpp"
#include "multipole/harmonic.hpp"
#include "multipole/sylvester.hpp"

namespace multipole {

PotentialTerm directional_derivative_potential(const PotentialTerm& t, const Vec3& u,
                                               const QuadForm& q) {
  if (u.norm() == 0.0) throw Error(ErrorKind::ZeroVector, "zero direction vector");
  const HomogPoly du_q = HomogPoly::linear(2.0 * (q.matrix() * u));
  PotentialTerm out;
  out.numerator = -(0.5 * t.half_exponent) * t.numerator * du_q;
  if (t.numerator.degree() > 0) out.numerator += q.as_poly() * t.numerator.directional_derivative(u);
  out.half_exponent = t.half_exponent + 2;
  return out;
}

HomogPoly maxwell_poly(const QuadForm& q, const std::vector<Vec3>& vectors) {
  PotentialTerm t;
  for (const Vec3& v : vectors) t = directional_derivative_potential(t, v, q);
  return t.numerator;
}

MaxwellVectors maxwell_vectors_from_lines(const HomogPoly& p, const QuadForm& q,
                                          const std::vector<HomogPoly>& lines) {
  MaxwellVectors out;
  for (const HomogPoly& l : lines) out.vectors.push_back(q.inverse() * l.linear_coeffs());
  const HomogPoly m = maxwell_poly(q, out.vectors);
  const Eigen::VectorXcd& mc = m.coeffs();
  const double mm = mc.squaredNorm();
  if (mm == 0.0) throw Error(ErrorKind::SolveFailure, "Maxwell polynomial vanishes");
  out.scale = mc.dot(p.coeffs()) / mm;
  return out;
}

MaxwellVectors maxwell_decompose(const HomogPoly& p, const QuadForm& q, const Tolerances& tol) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroForm, "zero polynomial");
  const HomogPoly h = harmonic_project(p, q, tol.harm).first;
  if ((p - h).norm() > tol.harm * p.norm()) {
    throw Error(ErrorKind::NotHarmonic, "polynomial is not Q-harmonic");
  }
  const bool real = q.is_definite() && p.is_real(tol.fact);
  const MultipoleFactorization f = real ? real_factor(p, q, tol) : canonical_factor(p, q, tol);
  return maxwell_vectors_from_lines(p, q, f.lines);
}

}  // namespace multipole
