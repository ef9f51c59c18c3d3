#pragma once

#include <utility>
#include <vector>

#include "multipole/algebra.hpp"

namespace multipole {

// P = sum_k Q^k components[k] with each component Q-harmonic of degree d - 2k.
struct HarmonicDecomp {
  std::vector<HomogPoly> components;

  HomogPoly reconstruct(const QuadForm& q) const;
};

// sum_{jk} (B^{-1})_{jk} d_j d_k P; zero of degree 0 when deg P < 2.
HomogPoly apply_delta_q(const HomogPoly& p, const QuadForm& q);

// Matrix of Delta_Q: V(d) -> V(d - 2).
Eigen::MatrixXcd delta_q_matrix(const QuadForm& q, int d);

// P = H + Q R with Delta_Q H = 0. R solves Delta_Q(Q R) = Delta_Q(P) on
// V(d - 2). Throws SolveFailure if the solve residual exceeds tol_harm.
std::pair<HomogPoly, HomogPoly> harmonic_project(const HomogPoly& p, const QuadForm& q,
                                                 double tol_harm = Tolerances{}.harm);

HarmonicDecomp harmonic_decompose(const HomogPoly& p, const QuadForm& q,
                                  double tol_harm = Tolerances{}.harm);

// How dirichlet_solve picks a particular solution T of Delta_Q T = M.
enum class PreimageRule {
  MinimumNorm,  // least-Euclidean-norm preimage
  QMultiple,    // the unique preimage of the form Q * R
};

// P with Delta_Q P = M and P = N on {Q = 1}.
Poly dirichlet_solve(const Poly& m, const Poly& n, const QuadForm& q,
                     double tol_harm = Tolerances{}.harm,
                     PreimageRule rule = PreimageRule::MinimumNorm);

// Q-harmonic polynomial that agrees with N on {Q = 1}.
Poly harmonic_extension(const Poly& n, const QuadForm& q, double tol_harm = Tolerances{}.harm);

}  // namespace multipole
