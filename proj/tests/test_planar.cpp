#include <functional>
#include <random>

#include "doctest.h"
#include "multipole/error.hpp"
#include "multipole/planar.hpp"
#include "test_util.hpp"

using namespace multipole;
using namespace multipole::testing;

namespace {

ProjPoint1 random_param(std::mt19937_64& rng) { return ProjPoint1(Vec2(random_vec(rng).head<2>())); }

// Random pencil point away from the two tangent lines.
ProjPoint1 generic_pencil_point(const PencilCenter& p, std::mt19937_64& rng) {
  for (;;) {
    const ProjPoint1 c = random_param(rng);
    if (line_conic_points(p, c).size() == 2) return c;
  }
}

bool same_divisor(const PencilDivisor& a, const PencilDivisor& b, double tol) {
  if (a.points.size() != b.points.size()) return false;
  for (const auto& [c, m] : a.points) {
    bool found = false;
    for (const auto& [c2, m2] : b.points) {
      if (proj_distance(c, c2) < tol && m == m2) found = true;
    }
    if (!found) return false;
  }
  return true;
}

ProjPoint1 tangent_pencil_point(const PencilCenter& p, const ProjPoint2& a) {
  return p.coordinate_of(a.coords());
}

}  // namespace

TEST_CASE("pencil centers off the conic") {
  const QuadForm s = QuadForm::sphere();
  CHECK_NOTHROW(PencilCenter(ProjPoint2(Vec3(0, 0, 1)), s));
  CHECK_THROWS_AS(PencilCenter(ProjPoint2(Vec3(kI, 0, 1)), s), Error);
}

TEST_CASE("star_involution examples") {
  const QuadForm s = QuadForm::sphere();
  const PencilCenter p(ProjPoint2(Vec3(0, 0, 1)), s);
  const ProjPoint2 q(Vec3(kI, 0, 1));
  CHECK(proj_distance(star_involution(q, p), ProjPoint2(Vec3(-kI, 0, 1))) < 1e-14);
  const ProjPoint2 t(Vec3(1, kI, 0));
  CHECK(proj_distance(star_involution(t, p), t) < 1e-14);
  CHECK_THROWS_AS(star_involution(ProjPoint2(Vec3(1, 0, 0)), p), Error);
}

TEST_CASE("star_involution is an involution fixing exactly the tangency points") {
  std::mt19937_64 rng(5);
  for (const QuadForm& q : {QuadForm::sphere(), QuadForm::hyperboloid()}) {
    const PencilCenter p(ProjPoint2(random_vec(rng)), q);
    const auto [a, b] = tangent_lines_from(p);
    CHECK(proj_distance(star_involution(a, p), a) < 1e-10);
    CHECK(proj_distance(star_involution(b, p), b) < 1e-10);
    for (int i = 0; i < 50; ++i) {
      const ProjPoint2 x = p.param().point(random_param(rng));
      const ProjPoint2 xs = star_involution(x, p);
      CHECK(on_conic(xs.coords(), q));
      CHECK(proj_distance(star_involution(xs, p), x) < 1e-9);
      // Not a fixed point unless it is a or b.
      const bool fixed = proj_distance(xs, x) < 1e-6;
      const bool special = proj_distance(x, a) < 1e-6 || proj_distance(x, b) < 1e-6;
      CHECK(fixed == special);
      // x, x* and p are collinear.
      CHECK(std::abs(cross(x.coords(), xs.coords()).dot(p.point().coords().conjugate())) <
            1e-9 * x.coords().norm() * xs.coords().norm() * p.point().coords().norm());
    }
  }
}

TEST_CASE("tangent_lines_from examples") {
  for (const QuadForm& q : {QuadForm::sphere(), QuadForm::hyperboloid()}) {
    const PencilCenter p(ProjPoint2(Vec3(0, 0, 1)), q);
    const auto [a, b] = tangent_lines_from(p);
    const ProjPoint2 ep(Vec3(1, kI, 0)), em(Vec3(1, -kI, 0));
    const bool ok = (proj_distance(a, ep) < 1e-12 && proj_distance(b, em) < 1e-12) ||
                    (proj_distance(a, em) < 1e-12 && proj_distance(b, ep) < 1e-12);
    CHECK(ok);
    CHECK(line_conic_points(p, tangent_pencil_point(p, a)).size() == 1);
  }
}

TEST_CASE("project_divisor examples") {
  const QuadForm s = QuadForm::sphere();
  const PencilCenter p(ProjPoint2(Vec3(0, 0, 1)), s);
  const ProjPoint2 q(Vec3(kI, 0, 1));
  const PencilDivisor e = project_divisor({{{q, 1}}}, p);
  REQUIRE(e.points.size() == 1);
  CHECK(e.points[0].second == 1);
  // The pencil point's line is y = 0.
  CHECK(proj_distance(p.line(e.points[0].first), Vec3(0, 1, 0)) < 1e-12);

  const PencilDivisor e2 = project_divisor({{{q, 1}, {star_involution(q, p), 1}}}, p);
  REQUIRE(e2.points.size() == 1);
  CHECK(e2.points[0].second == 2);

  std::mt19937_64 rng(7);
  ConicDivisor d;
  for (int i = 0; i < 5; ++i) d.points.emplace_back(p.param().point(random_param(rng)), 1);
  CHECK(project_divisor(d, p).points.size() == 5);
}

TEST_CASE("fiber_enumerate examples") {
  std::mt19937_64 rng(11);
  const QuadForm q = QuadForm::hyperboloid();
  const PencilCenter p(ProjPoint2(Vec3(0.3, -0.2, 1.0)), q);
  const auto [a, b] = tangent_lines_from(p);

  PencilDivisor two{{{generic_pencil_point(p, rng), 1}, {generic_pencil_point(p, rng), 1}}};
  CHECK(fiber_enumerate(two, p).size() == 4);

  PencilDivisor doubled{{{generic_pencil_point(p, rng), 2}, {generic_pencil_point(p, rng), 1}}};
  CHECK(fiber_enumerate(doubled, p).size() == 6);

  PencilDivisor tangent{{{tangent_pencil_point(p, a), 1},
                         {generic_pencil_point(p, rng), 1},
                         {generic_pencil_point(p, rng), 1}}};
  CHECK(fiber_enumerate(tangent, p).size() == 4);
}

TEST_CASE("fiber cardinalities match the product formula") {
  std::mt19937_64 rng(13);
  const QuadForm q = QuadForm::sphere();
  const PencilCenter p(ProjPoint2(Vec3(0.5, 0.1, 1.0)), q);
  const auto [a, b] = tangent_lines_from(p);
  const ProjPoint1 ta = tangent_pencil_point(p, a), tb = tangent_pencil_point(p, b);

  // Multiplicity patterns with d <= 5; each entry may sit on a tangent line
  // (at most two such entries).
  std::vector<std::vector<int>> patterns;
  std::function<void(int, int, std::vector<int>&)> gen = [&](int n, int mx, std::vector<int>& cur) {
    if (n == 0) {
      patterns.push_back(cur);
      return;
    }
    for (int k = std::min(n, mx); k >= 1; --k) {
      cur.push_back(k);
      gen(n - k, k, cur);
      cur.pop_back();
    }
  };
  for (int d = 1; d <= 5; ++d) {
    std::vector<int> cur;
    gen(d, d, cur);
  }
  for (const auto& mu : patterns) {
    for (int tangents = 0; tangents <= std::min<int>(2, static_cast<int>(mu.size())); ++tangents) {
      PencilDivisor e;
      std::size_t expected = 1;
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (static_cast<int>(i) < tangents) {
          e.points.emplace_back(i == 0 ? ta : tb, mu[i]);
        } else {
          e.points.emplace_back(generic_pencil_point(p, rng), mu[i]);
          expected *= static_cast<std::size_t>(mu[i] + 1);
        }
      }
      const auto fiber = fiber_enumerate(e, p);
      CHECK(fiber.size() == expected);
      for (const ConicDivisor& d : fiber) {
        CHECK(d.degree() == e.degree());
        for (const auto& [x, m] : d.points) CHECK(on_conic(x.coords(), q));
        CHECK(same_divisor(project_divisor(d, p), e, 1e-8));
      }
    }
  }
}

TEST_CASE("generic fibers have 2^d elements") {
  std::mt19937_64 rng(17);
  const QuadForm q = QuadForm::hyperboloid();
  for (int d = 1; d <= 6; ++d) {
    const PencilCenter p(ProjPoint2(random_vec(rng)), q);
    PencilDivisor e;
    for (int i = 0; i < d; ++i) e.points.emplace_back(generic_pencil_point(p, rng), 1);
    const auto fiber = fiber_enumerate(e, p);
    CHECK(fiber.size() == (std::size_t{1} << d));
    for (const ConicDivisor& dv : fiber) CHECK(same_divisor(project_divisor(dv, p), e, 1e-8));
  }
}

TEST_CASE("viete map examples and round trip") {
  const BinaryForm f = viete_map({{{ProjPoint1(0, 1), 1}, {ProjPoint1(1, 0), 1}}});
  // u0 * u1 up to scale: only the middle coefficient survives.
  CHECK(std::abs(f.coeffs[0]) < 1e-15);
  CHECK(std::abs(f.coeffs[2]) < 1e-15);
  CHECK(std::abs(f.coeffs[1]) > 0.5);

  const BinaryForm g = viete_map({{{ProjPoint1(1, 1), 2}}});
  // (u1 - u0)^2 = u0^2 - 2 u0 u1 + u1^2.
  CHECK(std::abs(g.coeffs[0] - 1.0) < 1e-15);
  CHECK(std::abs(g.coeffs[1] + 2.0) < 1e-15);
  CHECK(std::abs(g.coeffs[2] - 1.0) < 1e-15);

  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> mult(1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    PencilDivisor e;
    int d = 0;
    const int target = 1 + trial % 6;
    while (d < target) {
      const int m = std::min(mult(rng), target - d);
      e.points.emplace_back(random_param(rng), m);
      d += m;
    }
    const PencilDivisor back = viete_inverse(viete_map(e));
    CHECK(back.degree() == e.degree());
    CHECK(same_divisor(back, e, 1e-8));
  }
  CHECK_THROWS_AS(viete_inverse(BinaryForm::zero(3)), Error);
}

TEST_CASE("lines through the center are recovered from their conic restriction") {
  std::mt19937_64 rng(23);
  const QuadForm q = QuadForm::sphere();
  for (int d = 1; d <= 5; ++d) {
    const PencilCenter p(ProjPoint2(random_vec(rng)), q);
    PencilDivisor e;
    HomogPoly prod = HomogPoly::constant(1.0);
    for (int i = 0; i < d; ++i) {
      const ProjPoint1 c = generic_pencil_point(p, rng);
      const int m = 1 + i % 2;
      e.points.emplace_back(c, m);
      for (int k = 0; k < m; ++k) prod = prod * HomogPoly::linear(p.line(c));
    }
    const BinaryForm f = restrict_to_conic(prod, p.param());
    ConicDivisor dv;
    for (const RootCluster& r : roots_projective(f)) dv.points.emplace_back(p.param().point(r.point), r.multiplicity);
    PencilDivisor back = project_divisor(dv, p);
    for (auto& [c, m] : back.points) {
      CHECK(m % 2 == 0);
      m /= 2;
    }
    CHECK(same_divisor(back, e, 1e-7));
  }
}
