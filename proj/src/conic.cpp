#include "multipole/conic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "multipole/error.hpp"

namespace multipole {

namespace {

template <typename V>
V normalize_projective(const V& v) {
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) throw Error(ErrorKind::InvalidArgument, "zero projective coordinates");
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= (1.0 - 1e-9) * top) {
      V out = v / v[i];
      out[i] = 1.0;
      return out;
    }
  }
  return v;
}

}  // namespace

ProjPoint2::ProjPoint2(const Vec3& v) : coords_(normalize_projective(v)) {}
ProjPoint1::ProjPoint1(const Vec2& u) : coords_(normalize_projective(u)) {}

double proj_distance(const Vec3& a, const Vec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) s += std::norm(a[i] * b[j] - a[j] * b[i]);
  }
  return std::sqrt(s) / (na * nb);
}

double proj_distance(const Vec2& a, const Vec2& b) {
  return std::abs(a[0] * b[1] - a[1] * b[0]) / (a.norm() * b.norm());
}

BinaryForm::BinaryForm(int n, Eigen::VectorXcd c) : degree(n), coeffs(std::move(c)) {
  if (coeffs.size() != n + 1) throw Error(ErrorKind::InvalidArgument, "binary form size");
}

BinaryForm BinaryForm::linear_vanishing_at(const ProjPoint1& a) {
  // u1 * a0 - u0 * a1: coefficient of u0^0 u1^1 is a0, of u0^1 u1^0 is -a1.
  Eigen::VectorXcd c(2);
  c << a[0], -a[1];
  return {1, c};
}

cd BinaryForm::operator()(const Vec2& u) const {
  cd sum = 0.0;
  cd p0 = 1.0;
  for (int k = 0; k <= degree; ++k) {
    sum += coeffs[k] * p0 * std::pow(u[1], degree - k);
    p0 *= u[0];
  }
  return sum;
}

BinaryForm BinaryForm::d_u0() const {
  if (degree == 0) return zero(0);
  Eigen::VectorXcd c(degree);
  for (int k = 1; k <= degree; ++k) c[k - 1] = static_cast<double>(k) * coeffs[k];
  return {degree - 1, c};
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm out = BinaryForm::zero(a.degree + b.degree);
  for (int i = 0; i <= a.degree; ++i) {
    if (a.coeffs[i] == 0.0) continue;
    for (int j = 0; j <= b.degree; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree != b.degree) throw Error(ErrorKind::InvalidArgument, "binary form degrees");
  return {a.degree, a.coeffs + b.coeffs};
}

Vec3 ConicParam::eval(const Vec2& u) const {
  return {alphas[0](u), alphas[1](u), alphas[2](u)};
}

ConicParam conic_param(const QuadForm& q) {
  // Sphere parameterization, coefficients indexed by the power of u0.
  std::array<Eigen::Vector3cd, 3> sphere;
  sphere[0] << -kI, 0.0, kI;
  sphere[1] << 0.0, 2.0 * kI, 0.0;
  sphere[2] << 1.0, 0.0, 1.0;
  const Mat3& a_inv = q.reduction_inverse();
  ConicParam param;
  param.reduction = q.reduction();
  for (int j = 0; j < 3; ++j) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(3);
    for (int i = 0; i < 3; ++i) c += sphere[i] * a_inv(i, j);
    param.alphas[j] = BinaryForm(2, c);
  }
  return param;
}

BinaryForm restrict_to_conic(const HomogPoly& p, const ConicParam& param) {
  const int d = p.degree();
  std::array<std::vector<BinaryForm>, 3> pw;
  for (int j = 0; j < 3; ++j) {
    Eigen::VectorXcd one(1);
    one << 1.0;
    pw[j].push_back(BinaryForm(0, one));
    for (int e = 1; e <= d; ++e) pw[j].push_back(pw[j].back() * param.alphas[j]);
  }
  BinaryForm out = BinaryForm::zero(2 * d);
  std::size_t i = 0;
  for (const Monomial& m : monomials(d)) {
    const cd c = p.coeffs()[static_cast<Eigen::Index>(i++)];
    if (c == 0.0) continue;
    out = out + c * (pw[0][m.a] * pw[1][m.b] * pw[2][m.c]);
  }
  return out;
}

namespace {

constexpr double kLeadingZeroTol = 1e-11;
constexpr double kMergeRadius = 0.05;
constexpr double kMultipleRootTol = 1e-8;

// Ascending-power coefficients of the affine chart polynomial: chart 0 is
// p(t, 1), chart 1 is p(1, s).
Eigen::VectorXcd chart_coeffs(const Eigen::VectorXcd& c, int chart) {
  if (chart == 0) return c;
  return c.reverse();
}

Vec2 chart_to_point(cd t, int chart) { return chart == 0 ? Vec2(t, 1.0) : Vec2(1.0, t); }

cd point_to_chart(const Vec2& u, int chart) { return chart == 0 ? u[0] / u[1] : u[1] / u[0]; }

// j-th derivative of sum a_i t^i at t, and the matching absolute scale
// sum |a_i| i!/(i-j)! |t|^(i-j).
std::pair<cd, double> derivative_at(const Eigen::VectorXcd& a, int j, cd t) {
  cd val = 0.0;
  double scale = 0.0;
  const double at = std::abs(t);
  for (Eigen::Index i = a.size() - 1; i >= j; --i) {
    double ff = 1.0;
    for (int r = 0; r < j; ++r) ff *= static_cast<double>(i - r);
    val = val * t;
    scale = scale * at;
    val += a[i] * ff;
    scale += std::abs(a[i]) * ff;
  }
  return {val, scale};
}

struct Cluster {
  std::vector<Vec2> members;
  Vec2 center;
  bool certified = false;
};

// Mean in the chart where the first member is bounded, then Newton on the
// (k-1)-th derivative, whose root at a k-fold root is simple.
std::pair<Vec2, bool> refine_center(const Eigen::VectorXcd& coeffs,
                                    const std::vector<Vec2>& members) {
  const int k = static_cast<int>(members.size());
  const Vec2& first = members.front();
  const int chart = std::abs(first[0]) <= std::abs(first[1]) ? 0 : 1;
  const Eigen::VectorXcd a = chart_coeffs(coeffs, chart);
  cd t = 0.0;
  for (const Vec2& m : members) t += point_to_chart(m, chart);
  t /= static_cast<double>(k);
  cd best = t;
  double best_val = std::abs(derivative_at(a, k - 1, t).first);
  for (int iter = 0; iter < 60 && best_val > 0.0; ++iter) {
    const cd f = derivative_at(a, k - 1, t).first;
    const cd df = derivative_at(a, k, t).first;
    if (df == 0.0) break;
    const cd step = f / df;
    t -= step;
    const double v = std::abs(derivative_at(a, k - 1, t).first);
    if (v < best_val) {
      best_val = v;
      best = t;
    }
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(t))) break;
  }
  bool ok = true;
  for (int j = 0; j < k; ++j) {
    auto [val, scale] = derivative_at(a, j, best);
    if (std::abs(val) > kMultipleRootTol * std::max(scale, 1e-300)) ok = false;
  }
  return {chart_to_point(best, chart), ok};
}

}  // namespace

std::vector<RootCluster> roots_projective(const BinaryForm& p, double eps_cluster,
                                          double ref_norm, bool merge_multiple) {
  const double top = p.max_abs();
  if (top == 0.0 || top <= 1e-14 * ref_norm) {
    throw Error(ErrorKind::ZeroForm, "binary form vanishes identically");
  }
  const int n = p.degree;
  const Eigen::VectorXcd c = p.coeffs / top;
  int m_inf = 0;
  while (m_inf < n && std::abs(c[n - m_inf]) <= kLeadingZeroTol) ++m_inf;
  const int k = n - m_inf;

  std::vector<Vec2> raw(static_cast<std::size_t>(m_inf), Vec2(1.0, 0.0));
  if (k > 0) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(k, k);
    for (int i = 1; i < k; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < k; ++i) comp(i, k - 1) = -c[i] / c[k];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::SolveFailure, "companion eigenvalue solve failed");
    }
    for (int i = 0; i < k; ++i) raw.emplace_back(es.eigenvalues()[i], 1.0);
  }

  // Stage 1: single linkage at eps_cluster.
  const std::size_t nr = raw.size();
  std::vector<std::size_t> parent(nr);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = i + 1; j < nr; ++j) {
      if (proj_distance(raw[i], raw[j]) <= eps_cluster) parent[find(i)] = find(j);
    }
  }
  std::vector<Cluster> clusters;
  std::vector<long> slot(nr, -1);
  for (std::size_t i = 0; i < nr; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(clusters.size());
      clusters.emplace_back();
    }
    clusters[static_cast<std::size_t>(slot[r])].members.push_back(raw[i]);
  }
  for (Cluster& cl : clusters) {
    auto [center, ok] = refine_center(p.coeffs, cl.members);
    cl.center = center;
    cl.certified = ok;
  }

  // Stage 2: merge nearby clusters when the merged center is a certified
  // multiple root.
  std::vector<std::pair<std::size_t, std::size_t>> rejected;
  while (merge_multiple) {
    double best = kMergeRadius;
    long bi = -1;
    long bj = -1;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const double dist = proj_distance(clusters[i].center, clusters[j].center);
        if (dist >= best) continue;
        if (std::find(rejected.begin(), rejected.end(), std::make_pair(i, j)) != rejected.end())
          continue;
        best = dist;
        bi = static_cast<long>(i);
        bj = static_cast<long>(j);
      }
    }
    if (bi < 0) break;
    Cluster merged;
    merged.members = clusters[static_cast<std::size_t>(bi)].members;
    const auto& other = clusters[static_cast<std::size_t>(bj)].members;
    merged.members.insert(merged.members.end(), other.begin(), other.end());
    auto [center, ok] = refine_center(p.coeffs, merged.members);
    if (!ok) {
      rejected.emplace_back(bi, bj);
      continue;
    }
    merged.center = center;
    merged.certified = true;
    clusters[static_cast<std::size_t>(bi)] = merged;
    clusters.erase(clusters.begin() + bj);
    rejected.clear();
  }

  std::vector<RootCluster> out;
  for (const Cluster& cl : clusters) {
    out.push_back({ProjPoint1(cl.center), static_cast<int>(cl.members.size())});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    const Vec2& x = a.point.coords();
    const Vec2& y = b.point.coords();
    for (int i = 0; i < 2; ++i) {
      if (x[i].real() != y[i].real()) return x[i].real() < y[i].real();
      if (x[i].imag() != y[i].imag()) return x[i].imag() < y[i].imag();
    }
    return false;
  });
  return out;
}

bool on_conic(const Vec3& p, const QuadForm& q, double tol) {
  const double scale = q.matrix().cwiseAbs().maxCoeff() * p.squaredNorm();
  return std::abs(q(p)) <= tol * scale;
}

HomogPoly line_through(const ProjPoint2& pa, const ProjPoint2& pb, const QuadForm& q,
                       double eps_cluster) {
  if (!on_conic(pa.coords(), q) || !on_conic(pb.coords(), q)) {
    throw Error(ErrorKind::NotOnConic, "line_through needs points of {Q = 0}");
  }
  if (proj_distance(pa, pb) > eps_cluster) {
    return HomogPoly::linear(cross(pa.coords(), pb.coords()));
  }
  return HomogPoly::linear(q.matrix() * pa.coords());
}

namespace {

Eigen::MatrixXcd sylvester_matrix(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  // f, g ascending coefficients; degrees m = |f| - 1, n = |g| - 1.
  const Eigen::Index m = f.size() - 1;
  const Eigen::Index n = g.size() - 1;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m + n, m + n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index i = 0; i <= m; ++i) s(r, r + i) = f[m - i];
  }
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index i = 0; i <= n; ++i) s(n + r, r + i) = g[n - i];
  }
  return s;
}

// Sylvester matrix of the affine chart, or an empty matrix when [1:0] is a
// multiple root.
Eigen::MatrixXcd discriminant_matrix(const BinaryForm& p) {
  const double top = p.max_abs();
  if (top == 0.0) return Eigen::MatrixXcd();
  const Eigen::VectorXcd c = p.coeffs / top;
  int n = p.degree;
  int m_inf = 0;
  while (m_inf < n && std::abs(c[n - m_inf]) <= kLeadingZeroTol) ++m_inf;
  if (m_inf >= 2) return Eigen::MatrixXcd();
  const int k = n - m_inf;
  if (k == 0) return Eigen::MatrixXcd::Identity(1, 1);
  const Eigen::VectorXcd f = c.head(k + 1);
  Eigen::VectorXcd g(k);
  for (int i = 1; i <= k; ++i) g[i - 1] = static_cast<double>(i) * f[i];
  return sylvester_matrix(f, g);
}

}  // namespace

cd binary_discriminant(const BinaryForm& p) {
  const Eigen::MatrixXcd s = discriminant_matrix(p);
  if (s.size() == 0) return 0.0;
  return s.partialPivLu().determinant();
}

double relative_discriminant(const BinaryForm& p) {
  const Eigen::MatrixXcd s = discriminant_matrix(p);
  if (s.size() == 0) return 0.0;
  const Eigen::VectorXd sv = s.jacobiSvd().singularValues();
  return sv[sv.size() - 1] / sv[0];
}

ProjPoint2 conj_point(const ProjPoint2& p) { return ProjPoint2(p.coords().conjugate()); }

}  // namespace multipole
