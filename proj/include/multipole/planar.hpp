#pragma once

#include <utility>
#include <vector>

#include "multipole/conic.hpp"

namespace multipole {

struct ConicDivisor {
  std::vector<std::pair<ProjPoint2, int>> points;
  int degree() const;
};

struct PencilDivisor {
  std::vector<std::pair<ProjPoint1, int>> points;
  int degree() const;
};

// Center p of the pencil of lines through p, with Q(p) != 0. Pencil
// coordinates [c0 : c1] stand for the line c0 * l0 + c1 * l1, where l0, l1
// join p to alpha([1:0]) and alpha([0:1]); if p is collinear with those, the
// first non-collinear pair from [1:0], [0:1], [1:1], [1:-1], [1:2] is used.
// Throws DegenerateTangency for p on the conic.
class PencilCenter {
 public:
  PencilCenter(const ProjPoint2& p, const QuadForm& q, const Tolerances& tol = {});

  const ProjPoint2& point() const { return p_; }
  const QuadForm& form() const { return q_; }
  const ConicParam& param() const { return param_; }
  double eps_cluster() const { return eps_; }

  // Coefficient vector of the pencil line with coordinates c.
  Vec3 line(const ProjPoint1& c) const;
  // Pencil coordinates of the line through p and x (x != p).
  ProjPoint1 coordinate_of(const Vec3& x) const;

 private:
  ProjPoint2 p_;
  QuadForm q_;
  ConicParam param_;
  double eps_;
  Vec3 l0_, l1_;
};

// Second intersection of the line (p, q) with the conic; q itself on a
// tangent line. Throws NotOnConic.
ProjPoint2 star_involution(const ProjPoint2& q, const PencilCenter& p);

// Conic points whose tangent lines pass through p.
std::pair<ProjPoint2, ProjPoint2> tangent_lines_from(const PencilCenter& p);

// Conic points cut out by a pencil line: two points, or one (tangent).
std::vector<ProjPoint2> line_conic_points(const PencilCenter& p, const ProjPoint1& c);

// Images in the pencil; multiplicities add when images coincide.
PencilDivisor project_divisor(const ConicDivisor& d, const PencilCenter& p);

// All conic divisors projecting to e, in product order.
std::vector<ConicDivisor> fiber_enumerate(const PencilDivisor& e, const PencilCenter& p);

// prod (u1 a0 - u0 a1)^m.
BinaryForm viete_map(const PencilDivisor& d);
// Roots of f with multiplicities. Throws ZeroForm.
PencilDivisor viete_inverse(const BinaryForm& f, double eps_cluster = Tolerances{}.eps_cluster);

}  // namespace multipole
