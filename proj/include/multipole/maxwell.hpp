#pragma once

#include <utility>
#include <vector>

#include "multipole/algebra.hpp"

namespace multipole {

// N * Q^(-m/2).
struct PotentialTerm {
  HomogPoly numerator = HomogPoly::constant(1.0);
  int half_exponent = 1;
};

// d/du of N Q^(-m/2) = (Q d_u N - (m/2) N d_u Q) Q^(-(m+2)/2). Throws ZeroVector.
PotentialTerm directional_derivative_potential(const PotentialTerm& t, const Vec3& u,
                                               const QuadForm& q);

// Q^(d+1/2) d_{v1} ... d_{vd} Q^(-1/2). Throws ZeroVector.
HomogPoly maxwell_poly(const QuadForm& q, const std::vector<Vec3>& vectors);

struct MaxwellVectors {
  std::vector<Vec3> vectors;
  cd scale = 1.0;  // P = scale * maxwell_poly(q, vectors)
};

// Vectors u = B^{-1} w from the lines w of a factorization of P (the real
// one when P and Q are real and Q is definite). Throws NotHarmonic,
// ZeroForm.
MaxwellVectors maxwell_decompose(const HomogPoly& p, const QuadForm& q,
                                 const Tolerances& tol = {});

// Same, from a given line set (degree-1 polynomials).
MaxwellVectors maxwell_vectors_from_lines(const HomogPoly& p, const QuadForm& q,
                                          const std::vector<HomogPoly>& lines);

}  // namespace multipole
