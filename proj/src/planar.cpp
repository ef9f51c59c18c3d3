#include "multipole/planar.hpp"

#include <iterator>

#include "multipole/error.hpp"

namespace multipole {

int ConicDivisor::degree() const {
  int d = 0;
  for (const auto& pm : points) d += pm.second;
  return d;
}

int PencilDivisor::degree() const {
  int d = 0;
  for (const auto& pm : points) d += pm.second;
  return d;
}

PencilCenter::PencilCenter(const ProjPoint2& p, const QuadForm& q, const Tolerances& tol)
    : p_(p), q_(q), param_(conic_param(q)), eps_(tol.eps_cluster) {
  const Vec3& v = p.coords();
  if (std::abs(q(v)) <= 1e-9 * q.matrix().norm() * v.squaredNorm()) {
    throw Error(ErrorKind::DegenerateTangency, "pencil center lies on the conic");
  }
  const Vec2 candidates[] = {Vec2(1, 0), Vec2(0, 1), Vec2(1, 1), Vec2(1, -1), Vec2(1, 2)};
  for (std::size_t i = 0; i < std::size(candidates); ++i) {
    for (std::size_t j = i + 1; j < std::size(candidates); ++j) {
      l0_ = cross(v, param_.eval(candidates[i]));
      l1_ = cross(v, param_.eval(candidates[j]));
      if (proj_distance(l0_, l1_) > 1e-6) return;
    }
  }
  throw Error(ErrorKind::DegenerateTangency, "no pencil frame");
}

Vec3 PencilCenter::line(const ProjPoint1& c) const { return c[0] * l0_ + c[1] * l1_; }

ProjPoint1 PencilCenter::coordinate_of(const Vec3& x) const {
  Eigen::Matrix<cd, 3, 2> m;
  m << l0_, l1_;
  const Vec3 l = cross(p_.coords(), x);
  const Vec2 c = m.colPivHouseholderQr().solve(l);
  return ProjPoint1(c);
}

ProjPoint2 star_involution(const ProjPoint2& q, const PencilCenter& p) {
  const QuadForm& form = p.form();
  if (!on_conic(q.coords(), form)) throw Error(ErrorKind::NotOnConic, "point is not on the conic");
  const Vec3& pv = p.point().coords();
  return ProjPoint2(form(pv) * q.coords() - 2.0 * form.polar(q.coords(), pv) * pv);
}

namespace {

std::vector<ProjPoint2> conic_points_on_line(const Vec3& l, const ConicParam& param, double eps) {
  const BinaryForm f = restrict_to_conic(HomogPoly::linear(l), param);
  std::vector<ProjPoint2> out;
  for (const RootCluster& r : roots_projective(f, eps)) out.push_back(param.point(r.point));
  return out;
}

}  // namespace

std::pair<ProjPoint2, ProjPoint2> tangent_lines_from(const PencilCenter& p) {
  const Vec3 polar = p.form().matrix() * p.point().coords();
  const auto pts = conic_points_on_line(polar, p.param(), p.eps_cluster());
  if (pts.size() != 2) throw Error(ErrorKind::DegenerateTangency, "polar line is tangent");
  return {pts[0], pts[1]};
}

std::vector<ProjPoint2> line_conic_points(const PencilCenter& p, const ProjPoint1& c) {
  return conic_points_on_line(p.line(c), p.param(), p.eps_cluster());
}

PencilDivisor project_divisor(const ConicDivisor& d, const PencilCenter& p) {
  PencilDivisor out;
  for (const auto& [q, m] : d.points) {
    const ProjPoint1 c = p.coordinate_of(q.coords());
    bool merged = false;
    for (auto& [c2, m2] : out.points) {
      if (proj_distance(c, c2) <= p.eps_cluster()) {
        m2 += m;
        merged = true;
        break;
      }
    }
    if (!merged) out.points.emplace_back(c, m);
  }
  return out;
}

std::vector<ConicDivisor> fiber_enumerate(const PencilDivisor& e, const PencilCenter& p) {
  std::vector<ConicDivisor> out(1);
  for (const auto& [c, m] : e.points) {
    const std::vector<ProjPoint2> pts = line_conic_points(p, c);
    std::vector<ConicDivisor> next;
    for (const ConicDivisor& base : out) {
      if (pts.size() == 1) {
        ConicDivisor d = base;
        d.points.emplace_back(pts[0], m);
        next.push_back(std::move(d));
        continue;
      }
      for (int j = m; j >= 0; --j) {
        ConicDivisor d = base;
        if (j > 0) d.points.emplace_back(pts[0], j);
        if (m - j > 0) d.points.emplace_back(pts[1], m - j);
        next.push_back(std::move(d));
      }
    }
    out = std::move(next);
  }
  return out;
}

BinaryForm viete_map(const PencilDivisor& d) {
  BinaryForm f(0, Eigen::VectorXcd::Ones(1));
  for (const auto& [c, m] : d.points) {
    for (int k = 0; k < m; ++k) f = f * BinaryForm::linear_vanishing_at(c);
  }
  return f;
}

PencilDivisor viete_inverse(const BinaryForm& f, double eps_cluster) {
  PencilDivisor out;
  for (const RootCluster& r : roots_projective(f, eps_cluster)) {
    out.points.emplace_back(r.point, r.multiplicity);
  }
  return out;
}

}  // namespace multipole
