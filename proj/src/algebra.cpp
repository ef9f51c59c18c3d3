#include "multipole/algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "multipole/error.hpp"

namespace multipole {

std::vector<Monomial> monomials(int d) {
  std::vector<Monomial> out;
  out.reserve(monomial_count(d));
  for (int k = 0; k <= d; ++k) {
    for (int c = 0; c <= k; ++c) out.push_back({d - k, k - c, c});
  }
  return out;
}

HomogPoly::HomogPoly(int degree) : degree_(degree) {
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
  coeffs_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(monomial_count(degree)));
}

HomogPoly::HomogPoly(int degree, Eigen::VectorXcd coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0 || static_cast<std::size_t>(coeffs_.size()) != monomial_count(degree)) {
    throw Error(ErrorKind::InvalidArgument, "coefficient vector does not match degree");
  }
}

HomogPoly HomogPoly::constant(cd value) {
  HomogPoly p(0);
  p.coeffs_[0] = value;
  return p;
}

HomogPoly HomogPoly::linear(const Vec3& w) {
  HomogPoly p(1);
  p.coeffs_ = w;
  return p;
}

HomogPoly HomogPoly::monomial(const Monomial& m, cd coeff) {
  HomogPoly p(m.degree());
  p.coeff(m) = coeff;
  return p;
}

Vec3 HomogPoly::linear_coeffs() const {
  if (degree_ != 1) throw Error(ErrorKind::InvalidArgument, "not a linear form");
  return coeffs_;
}

namespace {

// powers[j][e] = v_j^e for e <= d.
std::array<std::vector<cd>, 3> power_table(const Vec3& v, int d) {
  std::array<std::vector<cd>, 3> pw;
  for (int j = 0; j < 3; ++j) {
    pw[j].assign(static_cast<std::size_t>(d) + 1, cd(1.0));
    for (int e = 1; e <= d; ++e) pw[j][e] = pw[j][e - 1] * v[j];
  }
  return pw;
}

}  // namespace

cd HomogPoly::operator()(const Vec3& v) const {
  const auto pw = power_table(v, degree_);
  cd sum = 0.0;
  std::size_t i = 0;
  for (const Monomial& m : monomials(degree_)) {
    const cd c = coeffs_[static_cast<Eigen::Index>(i++)];
    if (c != 0.0) sum += c * pw[0][m.a] * pw[1][m.b] * pw[2][m.c];
  }
  return sum;
}

double HomogPoly::max_abs() const {
  return coeffs_.size() == 0 ? 0.0 : coeffs_.cwiseAbs().maxCoeff();
}

bool HomogPoly::is_real(double tol) const {
  const double scale = std::max(max_abs(), 1e-300);
  return coeffs_.imag().cwiseAbs().maxCoeff() <= tol * scale;
}

HomogPoly HomogPoly::derivative(int var) const {
  if (degree_ == 0) return HomogPoly(0);
  HomogPoly out(degree_ - 1);
  std::size_t i = 0;
  for (const Monomial& m : monomials(degree_)) {
    const cd c = coeffs_[static_cast<Eigen::Index>(i++)];
    int e = var == 0 ? m.a : (var == 1 ? m.b : m.c);
    if (e == 0 || c == 0.0) continue;
    Monomial dm = m;
    (var == 0 ? dm.a : (var == 1 ? dm.b : dm.c)) -= 1;
    out.coeff(dm) += c * static_cast<double>(e);
  }
  return out;
}

HomogPoly HomogPoly::directional_derivative(const Vec3& u) const {
  if (degree_ == 0) return HomogPoly(0);
  HomogPoly out(degree_ - 1);
  for (int j = 0; j < 3; ++j) {
    if (u[j] != 0.0) out += derivative(j) * u[j];
  }
  return out;
}

HomogPoly HomogPoly::conj() const { return HomogPoly(degree_, coeffs_.conjugate()); }

HomogPoly HomogPoly::real_part() const {
  return HomogPoly(degree_, coeffs_.real().cast<cd>());
}

HomogPoly HomogPoly::substitute(const Mat3& m) const {
  std::array<std::vector<HomogPoly>, 3> pw;
  for (int j = 0; j < 3; ++j) {
    pw[j].push_back(HomogPoly::constant(1.0));
    const HomogPoly lin = HomogPoly::linear(m.col(j));
    for (int e = 1; e <= degree_; ++e) pw[j].push_back(pw[j].back() * lin);
  }
  HomogPoly out(degree_);
  std::size_t i = 0;
  for (const Monomial& mono : monomials(degree_)) {
    const cd c = coeffs_[static_cast<Eigen::Index>(i++)];
    if (c == 0.0) continue;
    out += (pw[0][mono.a] * pw[1][mono.b] * pw[2][mono.c]) * c;
  }
  return out;
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& o) {
  if (o.degree_ != degree_) throw Error(ErrorKind::InvalidArgument, "degree mismatch in +");
  coeffs_ += o.coeffs_;
  return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& o) {
  if (o.degree_ != degree_) throw Error(ErrorKind::InvalidArgument, "degree mismatch in -");
  coeffs_ -= o.coeffs_;
  return *this;
}

HomogPoly& HomogPoly::operator*=(cd s) {
  coeffs_ *= s;
  return *this;
}

HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
  HomogPoly out(a.degree() + b.degree());
  const auto ma = monomials(a.degree());
  const auto mb = monomials(b.degree());
  for (std::size_t i = 0; i < ma.size(); ++i) {
    const cd ca = a.coeffs()[static_cast<Eigen::Index>(i)];
    if (ca == 0.0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      const cd cb = b.coeffs()[static_cast<Eigen::Index>(j)];
      if (cb == 0.0) continue;
      out.coeff({ma[i].a + mb[j].a, ma[i].b + mb[j].b, ma[i].c + mb[j].c}) += ca * cb;
    }
  }
  return out;
}

HomogPoly poly_mul(const HomogPoly& p, const HomogPoly& s) { return p * s; }

HomogPoly pow(const HomogPoly& p, int n) {
  HomogPoly out = HomogPoly::constant(1.0);
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

Eigen::MatrixXcd multiplication_matrix(const HomogPoly& s, int d_in) {
  const int d_out = d_in + s.degree();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(monomial_count(d_out)),
                                              static_cast<Eigen::Index>(monomial_count(d_in)));
  const auto ms = monomials(s.degree());
  const auto mi = monomials(d_in);
  for (std::size_t j = 0; j < mi.size(); ++j) {
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const cd c = s.coeffs()[static_cast<Eigen::Index>(k)];
      if (c == 0.0) continue;
      const Monomial prod{mi[j].a + ms[k].a, mi[j].b + ms[k].b, mi[j].c + ms[k].c};
      m(static_cast<Eigen::Index>(monomial_index(prod)), static_cast<Eigen::Index>(j)) += c;
    }
  }
  return m;
}

Poly::Poly(std::vector<HomogPoly> parts) : parts_(std::move(parts)) {
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k].degree() != static_cast<int>(k)) {
      throw Error(ErrorKind::InvalidArgument, "graded part has wrong degree");
    }
  }
}

Poly::Poly(const HomogPoly& p) {
  for (int k = 0; k < p.degree(); ++k) parts_.emplace_back(k);
  parts_.push_back(p);
}

HomogPoly& Poly::part_mut(int k) {
  while (degree() < k) parts_.emplace_back(degree() + 1);
  return parts_[static_cast<std::size_t>(k)];
}

cd Poly::operator()(const Vec3& v) const {
  cd sum = 0.0;
  for (const auto& p : parts_) sum += p(v);
  return sum;
}

double Poly::norm() const {
  double s = 0.0;
  for (const auto& p : parts_) s += p.coeffs().squaredNorm();
  return std::sqrt(s);
}

int Poly::effective_degree(double tol) const {
  for (int k = degree(); k >= 0; --k) {
    if (!parts_[static_cast<std::size_t>(k)].is_zero(tol)) return k;
  }
  return -1;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& p : o.parts_) part_mut(p.degree()) += p;
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& p : o.parts_) part_mut(p.degree()) -= p;
  return *this;
}

Poly& Poly::operator+=(const HomogPoly& p) {
  part_mut(p.degree()) += p;
  return *this;
}

namespace {

// Principal square root with +0 imaginary part for real negatives.
cd principal_sqrt(cd z) {
  if (z.imag() == 0.0) z = cd(z.real(), 0.0);
  return std::sqrt(z);
}

}  // namespace

Mat3 quad_reduce(const Mat3& b, double tol_det) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  if (std::abs(b.determinant()) <= tol_det * scale * scale * scale) {
    throw Error(ErrorKind::Degenerate, "quadratic form is degenerate");
  }
  Mat3 w = b;
  Mat3 t = Mat3::Identity();
  std::array<bool, 3> done{false, false, false};
  for (int step = 0; step < 3; ++step) {
    int p = -1;
    double best_diag = -1.0;
    double best_off = 0.0;
    int oi = -1;
    int oj = -1;
    for (int i = 0; i < 3; ++i) {
      if (done[i]) continue;
      if (std::abs(w(i, i)) > best_diag) {
        best_diag = std::abs(w(i, i));
        p = i;
      }
      for (int j = i + 1; j < 3; ++j) {
        if (!done[j] && std::abs(w(i, j)) > best_off) {
          best_off = std::abs(w(i, j));
          oi = i;
          oj = j;
        }
      }
    }
    // All remaining diagonal entries are small compared with an off-diagonal
    // one: mix two coordinates by a congruence to create a usable pivot.
    if (best_diag < 0.5 * best_off) {
      const cd plus = w(oi, oi) + 2.0 * w(oi, oj) + w(oj, oj);
      const cd minus = w(oi, oi) - 2.0 * w(oi, oj) + w(oj, oj);
      const cd sgn = std::abs(plus) >= std::abs(minus) ? 1.0 : -1.0;
      w.row(oi) += sgn * w.row(oj);
      w.col(oi) += sgn * w.col(oj);
      t.row(oi) += sgn * t.row(oj);
      p = oi;
    }
    const cd piv = w(p, p);
    if (std::abs(piv) <= tol_det * scale) {
      throw Error(ErrorKind::Degenerate, "zero pivot in symmetric reduction");
    }
    for (int r = 0; r < 3; ++r) {
      if (r == p || done[r]) continue;
      const cd f = w(r, p) / piv;
      w.row(r) -= f * w.row(p);
      w.col(r) -= f * w.col(p);
      t.row(r) -= f * t.row(p);
    }
    done[p] = true;
  }
  // t B t^T = diag(w), so A = t^{-1} sqrt(diag(w)).
  Mat3 root = Mat3::Zero();
  for (int i = 0; i < 3; ++i) root(i, i) = principal_sqrt(w(i, i));
  return t.inverse() * root;
}

QuadForm::QuadForm(const Mat3& b, double tol_det) : b_(b) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale) {
    throw Error(ErrorKind::InvalidArgument, "matrix of a quadratic form must be symmetric");
  }
  a_ = quad_reduce(b, tol_det);
  a_inv_ = a_.inverse();
  b_inv_ = b_.inverse();
  is_real_ = b_.imag().cwiseAbs().maxCoeff() == 0.0;
  if (is_real_) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(b_.real());
    for (int i = 0; i < 3; ++i) signature_ += es.eigenvalues()[i] > 0.0 ? 1 : -1;
  }
}

QuadForm QuadForm::sphere() { return QuadForm(Mat3::Identity()); }

QuadForm QuadForm::hyperboloid() {
  Mat3 b = Mat3::Identity();
  b(2, 2) = -1.0;
  return QuadForm(b);
}

HomogPoly QuadForm::as_poly() const {
  HomogPoly q(2);
  q.coeff({2, 0, 0}) = b_(0, 0);
  q.coeff({0, 2, 0}) = b_(1, 1);
  q.coeff({0, 0, 2}) = b_(2, 2);
  q.coeff({1, 1, 0}) = 2.0 * b_(0, 1);
  q.coeff({1, 0, 1}) = 2.0 * b_(0, 2);
  q.coeff({0, 1, 1}) = 2.0 * b_(1, 2);
  return q;
}

std::pair<Poly, Poly> grade_split(const Poly& p) {
  Poly even;
  Poly odd;
  for (const auto& part : p.parts()) {
    if (part.degree() % 2 == 0) {
      even += part;
    } else {
      odd += part;
    }
  }
  return {even, odd};
}

std::pair<HomogPoly, int> homogenize_on_quadric(const Poly& p, const QuadForm& q) {
  int parity = -1;
  int top = -1;
  for (const auto& part : p.parts()) {
    if (part.is_zero()) continue;
    const int par = part.degree() % 2;
    if (parity >= 0 && par != parity) {
      throw Error(ErrorKind::MixedParity, "polynomial mixes even and odd degrees");
    }
    parity = par;
    top = part.degree();
  }
  if (top < 0) return {HomogPoly(0), 0};
  const HomogPoly qp = q.as_poly();
  HomogPoly out(top);
  for (const auto& part : p.parts()) {
    if (part.is_zero() || part.degree() % 2 != parity) continue;
    out += part * pow(qp, (top - part.degree()) / 2);
  }
  return {out, parity};
}

HomogPoly divide_by_quadric(const HomogPoly& p, const QuadForm& q, double tol_div) {
  if (p.degree() < 2) {
    throw Error(ErrorKind::NotDivisible, "degree below 2 cannot carry a factor Q");
  }
  if (p.is_zero()) return HomogPoly(p.degree() - 2);
  const Eigen::MatrixXcd m = multiplication_matrix(q.as_poly(), p.degree() - 2);
  const Eigen::VectorXcd r = m.colPivHouseholderQr().solve(p.coeffs());
  const double resid = (m * r - p.coeffs()).norm();
  if (resid > tol_div * p.norm()) {
    throw Error(ErrorKind::NotDivisible,
                "residual " + std::to_string(resid / p.norm()) + " exceeds tolerance");
  }
  return HomogPoly(p.degree() - 2, r);
}

std::pair<int, HomogPoly> strip_quadric_powers(const HomogPoly& p, const QuadForm& q,
                                               double tol_div) {
  int e = 0;
  HomogPoly cur = p;
  if (cur.is_zero()) return {0, cur};
  while (cur.degree() >= 2) {
    try {
      cur = divide_by_quadric(cur, q, tol_div);
      ++e;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::NotDivisible) throw;
      break;
    }
  }
  return {e, cur};
}

}  // namespace multipole
