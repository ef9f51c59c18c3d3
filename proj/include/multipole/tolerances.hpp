#pragma once

namespace multipole {

// All tolerances are relative to the norm of the relevant input.
struct Tolerances {
  double div = 1e-9;           // residual of P - Q*R in divide_by_quadric
  double det = 1e-12;          // nondegeneracy of B
  double fact = 1e-8;          // residual of a multipole factorization
  double harm = 1e-9;          // harmonic solves and Delta_Q residuals
  double eps_cluster = 1e-6;   // root clustering radius
  double disc = 1e-11;         // relative Sylvester singular value of a discriminant member
};

}  // namespace multipole
