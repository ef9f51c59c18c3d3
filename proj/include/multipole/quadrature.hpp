#pragma once

#include <array>
#include <vector>

#include "multipole/algebra.hpp"

namespace multipole {

// Tensor rule on the unit sphere: uniform in theta, Gauss-Legendre in cos(phi).
struct QuadratureRule {
  std::vector<std::array<double, 2>> nodes;  // (theta, phi)
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
  // Unit vector (cos t sin p, sin t sin p, cos p) of node i.
  Eigen::Vector3d unit_point(std::size_t i) const;
};

// Exact for every polynomial of total degree <= exact_degree.
QuadratureRule sphere_rule(int exact_degree);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Closed-form integral of x^a y^b z^c over the unit sphere.
double monomial_sphere_integral(int a, int b, int c);

// Points s A^{-1} of the ellipsoid {Q = 1} that correspond to the rule's
// unit-sphere nodes s.
std::vector<Vec3> ellipsoid_points(const QuadForm& q, const QuadratureRule& rule);

// Values of P at the ellipsoid points.
Eigen::VectorXcd sample(const HomogPoly& p, const std::vector<Vec3>& points);

// Hermitian product of f and g over the ellipsoid with the pulled-back
// sphere measure. Throws InsufficientQuadrature.
cd inner_product(const HomogPoly& f, const HomogPoly& g, const QuadForm& q,
                 const QuadratureRule& rule);

}  // namespace multipole
