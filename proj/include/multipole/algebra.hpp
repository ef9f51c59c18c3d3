#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "multipole/tolerances.hpp"

namespace multipole {

using cd = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;

inline constexpr cd kI{0.0, 1.0};

// Bilinear cross product (Eigen's complex cross conjugates its result).
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Exponent triple of x^a y^b z^c.
struct Monomial {
  int a = 0;
  int b = 0;
  int c = 0;

  int degree() const { return a + b + c; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Number of monomials of total degree d, (d^2 + 3d + 2) / 2.
inline std::size_t monomial_count(int d) {
  return d < 0 ? 0 : static_cast<std::size_t>((d + 1) * (d + 2) / 2);
}

// Graded-lex position of (a, b, c) among monomials of degree a + b + c.
// Order: x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ...
inline std::size_t monomial_index(const Monomial& m) {
  const int k = m.b + m.c;
  return static_cast<std::size_t>(k * (k + 1) / 2 + m.c);
}

// All monomials of degree d in index order.
std::vector<Monomial> monomials(int d);

// Complex homogeneous polynomial in (x, y, z) with dense coefficients.
class HomogPoly {
 public:
  HomogPoly() : HomogPoly(0) {}
  explicit HomogPoly(int degree);
  HomogPoly(int degree, Eigen::VectorXcd coeffs);

  static HomogPoly constant(cd value);
  // w[0] x + w[1] y + w[2] z
  static HomogPoly linear(const Vec3& w);
  static HomogPoly monomial(const Monomial& m, cd coeff = 1.0);

  int degree() const { return degree_; }
  std::size_t size() const { return static_cast<std::size_t>(coeffs_.size()); }

  cd coeff(const Monomial& m) const { return coeffs_[monomial_index(m)]; }
  cd& coeff(const Monomial& m) { return coeffs_[monomial_index(m)]; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Eigen::VectorXcd& coeffs() { return coeffs_; }

  // Coefficients of a degree-1 polynomial as a 3-vector.
  Vec3 linear_coeffs() const;

  cd operator()(const Vec3& v) const;

  // Euclidean norm of the coefficient vector.
  double norm() const { return coeffs_.norm(); }
  double max_abs() const;
  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }
  bool is_real(double tol) const;

  HomogPoly derivative(int var) const;
  // Directional derivative sum_j u_j d/dx_j.
  HomogPoly directional_derivative(const Vec3& u) const;
  HomogPoly conj() const;
  HomogPoly real_part() const;
  // P(v) -> P(M^T v), i.e. substitution of the row vector v.M.
  HomogPoly substitute(const Mat3& m) const;

  HomogPoly& operator+=(const HomogPoly& o);
  HomogPoly& operator-=(const HomogPoly& o);
  HomogPoly& operator*=(cd s);

  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  friend HomogPoly operator-(HomogPoly a) { return a *= -1.0; }
  friend HomogPoly operator*(HomogPoly a, cd s) { return a *= s; }
  friend HomogPoly operator*(cd s, HomogPoly a) { return a *= s; }
  friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b);

 private:
  int degree_;
  Eigen::VectorXcd coeffs_;
};

HomogPoly poly_mul(const HomogPoly& p, const HomogPoly& s);
HomogPoly pow(const HomogPoly& p, int n);

// Matrix of the linear map V(d_in) -> V(d_in + deg s), P -> s * P.
Eigen::MatrixXcd multiplication_matrix(const HomogPoly& s, int d_in);

// Inhomogeneous polynomial stored as graded parts 0..d.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<HomogPoly> parts);
  explicit Poly(const HomogPoly& p);

  // Highest degree slot, or -1 for the empty polynomial.
  int degree() const { return static_cast<int>(parts_.size()) - 1; }
  const std::vector<HomogPoly>& parts() const { return parts_; }
  const HomogPoly& part(int k) const { return parts_.at(static_cast<std::size_t>(k)); }
  // Grows the graded storage as needed.
  HomogPoly& part_mut(int k);

  cd operator()(const Vec3& v) const;
  double norm() const;
  // Highest degree with a part above tol (in max-abs), or -1.
  int effective_degree(double tol = 0.0) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator+=(const HomogPoly& p);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

 private:
  std::vector<HomogPoly> parts_;
};

// Nondegenerate symmetric form Q(v) = v^T B v.
class QuadForm {
 public:
  explicit QuadForm(const Mat3& b, double tol_det = Tolerances{}.det);

  static QuadForm sphere();       // x^2 + y^2 + z^2
  static QuadForm hyperboloid();  // x^2 + y^2 - z^2

  const Mat3& matrix() const { return b_; }
  const Mat3& inverse() const { return b_inv_; }
  // A with A A^T = B (see quad_reduce).
  const Mat3& reduction() const { return a_; }
  const Mat3& reduction_inverse() const { return a_inv_; }

  bool is_real() const { return is_real_; }
  // #positive - #negative eigenvalues; only meaningful when is_real().
  int signature() const { return signature_; }
  bool is_definite() const { return is_real_ && (signature_ == 3 || signature_ == -3); }

  cd operator()(const Vec3& v) const { return polar(v, v); }
  // Symmetric bilinear form u^T B v.
  cd polar(const Vec3& u, const Vec3& v) const { return (u.transpose() * b_ * v)(0, 0); }
  HomogPoly as_poly() const;

 private:
  Mat3 b_;
  Mat3 b_inv_;
  Mat3 a_;
  Mat3 a_inv_;
  bool is_real_ = false;
  int signature_ = 0;
};

// Splits P into (even-degree parts, odd-degree parts).
std::pair<Poly, Poly> grade_split(const Poly& p);

// Multiplies lower graded parts of a single-parity P by powers of Q so the
// result is homogeneous of the top degree and agrees with P on {Q = 1}.
// Returns (homogenized polynomial, parity).
std::pair<HomogPoly, int> homogenize_on_quadric(const Poly& p, const QuadForm& q);

// Least-squares R with Q*R = P; throws NotDivisible if the residual exceeds
// tol_div * |P|.
HomogPoly divide_by_quadric(const HomogPoly& p, const QuadForm& q,
                            double tol_div = Tolerances{}.div);

// Strips the largest power of Q dividing P. Returns (exponent, quotient).
std::pair<int, HomogPoly> strip_quadric_powers(const HomogPoly& p, const QuadForm& q,
                                               double tol_div = Tolerances{}.div);

// Symmetric reduction B = A A^T by congruence elimination with largest
// pivots and principal complex square roots. Throws Degenerate.
Mat3 quad_reduce(const Mat3& b, double tol_det = Tolerances{}.det);
inline Mat3 quad_reduce(const QuadForm& q) { return q.reduction(); }

}  // namespace multipole
