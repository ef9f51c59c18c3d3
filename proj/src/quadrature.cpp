#include "multipole/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "multipole/error.hpp"

namespace multipole {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

QuadratureRule sphere_rule(int exact_degree) {
  if (exact_degree < 0) throw Error(ErrorKind::InvalidArgument, "negative quadrature degree");
  const int n_theta = exact_degree + 1;
  const int n_phi = (exact_degree + 2) / 2;
  std::vector<double> t;
  std::vector<double> w;
  gauss_legendre(n_phi, t, w);
  QuadratureRule rule;
  rule.exact_degree = exact_degree;
  for (int j = 0; j < n_phi; ++j) {
    const double phi = std::acos(t[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n_theta; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / n_theta;
      rule.nodes.push_back({theta, phi});
      rule.weights.push_back(2.0 * std::numbers::pi / n_theta * w[static_cast<std::size_t>(j)]);
    }
  }
  return rule;
}

Eigen::Vector3d QuadratureRule::unit_point(std::size_t i) const {
  const double theta = nodes[i][0];
  const double phi = nodes[i][1];
  return {std::cos(theta) * std::sin(phi), std::sin(theta) * std::sin(phi), std::cos(phi)};
}

namespace {

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

}  // namespace

double monomial_sphere_integral(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  return 4.0 * std::numbers::pi * double_factorial(a - 1) * double_factorial(b - 1) *
         double_factorial(c - 1) / double_factorial(a + b + c + 1);
}

std::vector<Vec3> ellipsoid_points(const QuadForm& q, const QuadratureRule& rule) {
  // Row-vector convention v = s A^{-1}, i.e. column v = A^{-T} s.
  const Mat3 map = q.reduction_inverse().transpose();
  std::vector<Vec3> pts;
  pts.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    pts.push_back(map * rule.unit_point(i).cast<cd>());
  }
  return pts;
}

Eigen::VectorXcd sample(const HomogPoly& p, const std::vector<Vec3>& points) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) out[static_cast<Eigen::Index>(i)] = p(points[i]);
  return out;
}

cd inner_product(const HomogPoly& f, const HomogPoly& g, const QuadForm& q,
                 const QuadratureRule& rule) {
  if (rule.exact_degree < f.degree() + g.degree()) {
    throw Error(ErrorKind::InsufficientQuadrature,
                "rule exact to degree " + std::to_string(rule.exact_degree) + " < " +
                    std::to_string(f.degree() + g.degree()));
  }
  const auto pts = ellipsoid_points(q, rule);
  cd sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sum += rule.weights[i] * f(pts[i]) * std::conj(g(pts[i]));
  }
  return sum;
}

}  // namespace multipole
