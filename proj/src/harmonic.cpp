#include "multipole/harmonic.hpp"

#include "multipole/error.hpp"

namespace multipole {

HomogPoly HarmonicDecomp::reconstruct(const QuadForm& q) const {
  if (components.empty()) return HomogPoly(0);
  const HomogPoly qp = q.as_poly();
  HomogPoly out = components.front();
  HomogPoly qk = HomogPoly::constant(1.0);
  for (std::size_t k = 1; k < components.size(); ++k) {
    qk = qk * qp;
    out += qk * components[k];
  }
  return out;
}

HomogPoly apply_delta_q(const HomogPoly& p, const QuadForm& q) {
  if (p.degree() < 2) return HomogPoly(0);
  const Mat3& binv = q.inverse();
  HomogPoly out(p.degree() - 2);
  for (int j = 0; j < 3; ++j) {
    const HomogPoly dj = p.derivative(j);
    for (int k = 0; k < 3; ++k) {
      if (binv(j, k) != 0.0) out += dj.derivative(k) * binv(j, k);
    }
  }
  return out;
}

Eigen::MatrixXcd delta_q_matrix(const QuadForm& q, int d) {
  const auto ms = monomials(d);
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(monomial_count(d - 2)),
                     static_cast<Eigen::Index>(ms.size()));
  for (std::size_t j = 0; j < ms.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = apply_delta_q(HomogPoly::monomial(ms[j]), q).coeffs();
  }
  return m;
}

namespace {

// T(R) = Delta_Q(Q R) on V(d), invertible for nondegenerate Q.
Eigen::MatrixXcd q_laplacian_operator(const QuadForm& q, int d) {
  return delta_q_matrix(q, d + 2) * multiplication_matrix(q.as_poly(), d);
}

Eigen::VectorXcd solve_checked(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& rhs,
                               double tol) {
  const Eigen::VectorXcd x = a.partialPivLu().solve(rhs);
  const double scale = std::max(rhs.norm(), 1e-300);
  if ((a * x - rhs).norm() > tol * scale || !x.allFinite()) {
    throw Error(ErrorKind::SolveFailure, "dense solve residual exceeds tolerance");
  }
  return x;
}

}  // namespace

std::pair<HomogPoly, HomogPoly> harmonic_project(const HomogPoly& p, const QuadForm& q,
                                                 double tol_harm) {
  if (p.degree() < 2) return {p, HomogPoly(0)};
  const HomogPoly rhs = apply_delta_q(p, q);
  if (rhs.is_zero()) return {p, HomogPoly(p.degree() - 2)};
  const HomogPoly r(p.degree() - 2,
                    solve_checked(q_laplacian_operator(q, p.degree() - 2), rhs.coeffs(), tol_harm));
  HomogPoly h = p - q.as_poly() * r;
  return {h, r};
}

HarmonicDecomp harmonic_decompose(const HomogPoly& p, const QuadForm& q, double tol_harm) {
  HarmonicDecomp out;
  HomogPoly cur = p;
  for (;;) {
    auto [h, r] = harmonic_project(cur, q, tol_harm);
    out.components.push_back(h);
    if (cur.degree() < 2) break;
    cur = r;
  }
  return out;
}

Poly harmonic_extension(const Poly& n, const QuadForm& q, double tol_harm) {
  auto [even, odd] = grade_split(n);
  Poly out;
  for (const Poly* part : {&even, &odd}) {
    if (part->effective_degree() < 0) continue;
    const HomogPoly top = homogenize_on_quadric(*part, q).first;
    // Q = 1 on the surface, so each Q^k H_k restricts to H_k.
    for (const HomogPoly& h : harmonic_decompose(top, q, tol_harm).components) out += h;
  }
  return out;
}

Poly dirichlet_solve(const Poly& m, const Poly& n, const QuadForm& q, double tol_harm,
                     PreimageRule rule) {
  Poly t;
  for (const HomogPoly& mk : m.parts()) {
    if (mk.is_zero()) continue;
    const int d = mk.degree() + 2;
    Eigen::VectorXcd coeffs;
    if (rule == PreimageRule::MinimumNorm) {
      const Eigen::MatrixXcd a = delta_q_matrix(q, d);
      coeffs = a.completeOrthogonalDecomposition().solve(mk.coeffs());
      if ((a * coeffs - mk.coeffs()).norm() > tol_harm * mk.norm()) {
        throw Error(ErrorKind::SolveFailure, "Delta_Q preimage residual exceeds tolerance");
      }
    } else {
      const HomogPoly r(mk.degree(),
                        solve_checked(q_laplacian_operator(q, mk.degree()), mk.coeffs(), tol_harm));
      coeffs = (q.as_poly() * r).coeffs();
    }
    t += HomogPoly(d, coeffs);
  }
  Poly p = t;
  p += harmonic_extension(n - t, q, tol_harm);
  return p;
}

}  // namespace multipole
