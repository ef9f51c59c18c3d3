#include "multipole/sylvester.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "multipole/error.hpp"

namespace multipole {

BigInt count_parcellings(int d) {
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
  BigInt out = 1;
  for (int k = 2 * d - 1; k > 1; k -= 2) out *= k;
  return out;
}

namespace {

void enumerate_rec(std::vector<int>& rem, int last_first, int last_rank,
                   std::vector<std::pair<int, int>>& cur, std::vector<Parcelling>& out) {
  const int n = static_cast<int>(rem.size());
  int i = 0;
  while (i < n && rem[static_cast<std::size_t>(i)] == 0) ++i;
  if (i == n) {
    out.push_back({cur});
    return;
  }
  auto try_piece = [&](int j, int rank) {
    if (i == last_first && rank < last_rank) return;
    --rem[static_cast<std::size_t>(i)];
    --rem[static_cast<std::size_t>(j)];
    cur.emplace_back(i, j);
    enumerate_rec(rem, i, rank, cur, out);
    cur.pop_back();
    ++rem[static_cast<std::size_t>(i)];
    ++rem[static_cast<std::size_t>(j)];
  };
  for (int j = i + 1; j < n; ++j) {
    if (rem[static_cast<std::size_t>(j)] > 0) try_piece(j, j);
  }
  if (rem[static_cast<std::size_t>(i)] >= 2) try_piece(i, n);
}

}  // namespace

std::vector<Parcelling> enumerate_parcellings(const std::vector<int>& mu) {
  int total = 0;
  for (int m : mu) {
    if (m < 0) throw Error(ErrorKind::InvalidPartition, "negative multiplicity");
    total += m;
  }
  if (total % 2 != 0) throw Error(ErrorKind::OddTotal, "multiplicities sum to an odd number");
  std::vector<int> rem = mu;
  std::vector<std::pair<int, int>> cur;
  std::vector<Parcelling> out;
  enumerate_rec(rem, -1, 0, cur, out);
  return out;
}

Parcelling canonical_parcelling(const std::vector<int>& mu) {
  int total = 0;
  for (int m : mu) {
    if (m < 0) throw Error(ErrorKind::InvalidPartition, "negative multiplicity");
    total += m;
  }
  if (total % 2 != 0) throw Error(ErrorKind::OddTotal, "multiplicities sum to an odd number");
  // Greedy in enumeration order; an even total never leaves a dead end.
  std::vector<int> rem = mu;
  Parcelling out;
  const int n = static_cast<int>(rem.size());
  for (int i = 0; i < n; ++i) {
    while (rem[static_cast<std::size_t>(i)] > 0) {
      int j = i + 1;
      while (j < n && rem[static_cast<std::size_t>(j)] == 0) ++j;
      if (j == n) j = i;
      --rem[static_cast<std::size_t>(i)];
      --rem[static_cast<std::size_t>(j)];
      out.pieces.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<int> ConicRoots::multiplicities() const {
  std::vector<int> mu;
  for (const RootCluster& c : clusters) mu.push_back(c.multiplicity);
  return mu;
}

int ConicRoots::max_multiplicity() const {
  int m = 0;
  for (const RootCluster& c : clusters) m = std::max(m, c.multiplicity);
  return m;
}

ConicRoots conic_roots(const HomogPoly& p, const QuadForm& q, const Tolerances& tol) {
  ConicRoots out;
  out.param = conic_param(q);
  out.form = restrict_to_conic(p, out.param);
  out.clusters = roots_projective(out.form, tol.eps_cluster, p.norm());
  for (std::size_t i = 0; i < out.clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < out.clusters.size(); ++j) {
      if (proj_distance(out.clusters[i].point, out.clusters[j].point) < 10 * tol.eps_cluster) {
        out.ill_conditioned = true;
      }
    }
  }
  return out;
}

namespace {

// Every root simple: the companion eigenvalues as they come, no merging.
ConicRoots split_roots(const HomogPoly& p, const QuadForm& q) {
  ConicRoots out;
  out.param = conic_param(q);
  out.form = restrict_to_conic(p, out.param);
  out.clusters = roots_projective(out.form, 0.0, p.norm(), false);
  out.ill_conditioned = true;
  return out;
}

// Runs fn on the clustered roots; when a merged multiple root leaves a
// residual above tolerance (P sits just off the discriminant), retries
// with the split roots.
template <class Fn>
MultipoleFactorization with_split_fallback(const HomogPoly& core, const QuadForm& q,
                                           const Tolerances& tol, Fn fn) {
  const ConicRoots roots = conic_roots(core, q, tol);
  try {
    return fn(roots);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SolveFailure && e.kind() != ErrorKind::ConjugationPairingFailure)
      throw;
    if (roots.max_multiplicity() < 2) throw;
    return fn(split_roots(core, q));
  }
}

}  // namespace

Vec3 normalize_line(const Vec3& w) { return ProjPoint2(w).coords(); }

HomogPoly MultipoleFactorization::product() const {
  HomogPoly out = HomogPoly::constant(lambda);
  for (const HomogPoly& l : lines) out = out * l;
  return out;
}

HomogPoly MultipoleFactorization::reconstruct(const QuadForm& q) const {
  const HomogPoly qp = q.as_poly();
  HomogPoly inner = product();
  if (inner.degree() >= 2) inner += qp * remainder;
  return pow(qp, q_power) * inner;
}

Multipole Multipole::from(cd lambda, const std::vector<HomogPoly>& lines) {
  Multipole m;
  m.lambda = lambda;
  for (const HomogPoly& l : lines) {
    const Vec3 v = l.linear_coeffs();
    const Vec3 w = normalize_line(v);
    Eigen::Index i = 0;
    w.cwiseAbs().maxCoeff(&i);
    m.lambda *= v[i] / w[i];
    m.lines.push_back(w);
  }
  std::sort(m.lines.begin(), m.lines.end(), [](const Vec3& a, const Vec3& b) {
    for (int i = 0; i < 3; ++i) {
      if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
      if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
  });
  return m;
}

HomogPoly Multipole::expand() const {
  HomogPoly out = HomogPoly::constant(lambda);
  for (const Vec3& w : lines) out = out * HomogPoly::linear(w);
  return out;
}

bool Multipole::approx_equal(const Multipole& o, double tol) const {
  if (degree() != o.degree()) return false;
  const HomogPoly a = expand();
  const HomogPoly b = o.expand();
  const double scale = std::max(a.norm(), b.norm());
  return (a - b).norm() <= tol * scale;
}

namespace {

constexpr int kEvalTrials = 64;

// Deterministic low-discrepancy trial parameter [1 : t_k].
Vec2 trial_parameter(int k) {
  const double a = std::fmod(k * std::numbers::phi, 1.0);
  const double b = std::fmod(k * std::numbers::sqrt2, 1.0);
  const Vec2 u(1.0, cd(2 * a - 1, 2 * b - 1));
  return u / u.norm();
}

void check_parcelling(const ConicRoots& roots, const Parcelling& parcelling, int d) {
  std::vector<int> count(roots.clusters.size(), 0);
  for (auto [a, b] : parcelling.pieces) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(std::max(a, b)) >= count.size()) {
      throw Error(ErrorKind::InvalidPartition, "parcelling refers to an unknown root");
    }
    ++count[static_cast<std::size_t>(a)];
    ++count[static_cast<std::size_t>(b)];
  }
  if (static_cast<int>(parcelling.pieces.size()) != d || count != roots.multiplicities()) {
    throw Error(ErrorKind::InvalidPartition, "parcelling does not match root multiplicities");
  }
}

bool divisible(const HomogPoly& p, const QuadForm& q, const Tolerances& tol) {
  if (p.degree() < 2 || p.is_zero()) return false;
  try {
    divide_by_quadric(p, q, tol.div);
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotDivisible) throw;
    return false;
  }
}

MultipoleFactorization factor_impl(const HomogPoly& p, const QuadForm& q, const ConicRoots& roots,
                                   const Parcelling& parcelling, const Tolerances& tol,
                                   int eval_skip) {
  const int d = p.degree();
  check_parcelling(roots, parcelling, d);
  MultipoleFactorization f;
  f.parcelling = parcelling;
  f.ill_conditioned = roots.ill_conditioned;

  std::vector<ProjPoint2> pts;
  for (const RootCluster& c : roots.clusters) pts.push_back(roots.param.point(c.point));
  for (auto [a, b] : parcelling.pieces) {
    const HomogPoly l =
        line_through(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)], q,
                     tol.eps_cluster);
    f.lines.push_back(HomogPoly::linear(normalize_line(l.linear_coeffs())));
  }
  f.lambda = 1.0;
  const HomogPoly prod = f.product();

  const double top = roots.form.max_abs();
  int admissible = 0;
  bool found = false;
  for (int k = 1; k <= kEvalTrials && !found; ++k) {
    const Vec2 u = trial_parameter(k);
    if (std::abs(roots.form(u)) <= 1e-4 * top) continue;
    bool clear = true;
    for (const RootCluster& c : roots.clusters) {
      if (proj_distance(u, c.point.coords()) <= 10 * tol.eps_cluster) clear = false;
    }
    if (!clear || admissible++ < eval_skip) continue;
    const Vec3 x = roots.param.eval(u);
    f.lambda = p(x) / prod(x);
    found = true;
  }
  if (!found) throw Error(ErrorKind::NoEvaluationPoint, "no admissible conic evaluation point");

  const HomogPoly diff = p - f.lambda * prod;
  if (d >= 2) {
    f.remainder = divide_by_quadric(diff, q, std::numeric_limits<double>::infinity());
  } else {
    f.remainder = HomogPoly(0);
  }
  const HomogPoly resid = d >= 2 ? diff - q.as_poly() * f.remainder : diff;
  if (resid.norm() > tol.fact * p.norm()) {
    throw Error(ErrorKind::SolveFailure, "factorization residual exceeds tolerance");
  }
  return f;
}

void require_real(const HomogPoly& p, const QuadForm& q, const Tolerances& tol) {
  if (!q.is_real()) throw Error(ErrorKind::NotReal, "quadratic form is not real");
  if (!p.is_real(tol.fact)) throw Error(ErrorKind::NotReal, "polynomial is not real");
}

// Real parts of a factorization whose lines are real up to phase.
MultipoleFactorization realify(MultipoleFactorization f, const HomogPoly& p, const QuadForm& q,
                               const Tolerances& tol) {
  const double tol_real = tol.fact;
  for (HomogPoly& l : f.lines) {
    if (!l.is_real(tol_real)) {
      throw Error(ErrorKind::ConjugationPairingFailure, "line is not real after pairing");
    }
    l = l.real_part();
  }
  if (std::abs(f.lambda.imag()) > tol_real * std::abs(f.lambda)) {
    throw Error(ErrorKind::ConjugationPairingFailure, "scale factor is not real");
  }
  f.lambda = f.lambda.real();
  if (p.degree() >= 2) {
    f.remainder = divide_by_quadric(p - f.product(), q, std::numeric_limits<double>::infinity())
                      .real_part();
    const HomogPoly resid = p - f.product() - q.as_poly() * f.remainder;
    if (resid.norm() > tol.fact * p.norm()) {
      throw Error(ErrorKind::SolveFailure, "real factorization residual exceeds tolerance");
    }
  }
  return f;
}

std::pair<int, HomogPoly> strip_checked(const HomogPoly& p, const QuadForm& q,
                                        const Tolerances& tol) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroForm, "zero polynomial");
  return strip_quadric_powers(p, q, tol.div);
}

}  // namespace

MultipoleFactorization factor_on_quadric(const HomogPoly& p, const QuadForm& q,
                                         const ConicRoots& roots, const Parcelling& parcelling,
                                         const Tolerances& tol, int eval_skip) {
  if (divisible(p, q, tol)) throw Error(ErrorKind::DivisibleByQ, "polynomial is divisible by Q");
  return factor_impl(p, q, roots, parcelling, tol, eval_skip);
}

MultipoleFactorization factor_on_quadric(const HomogPoly& p, const QuadForm& q,
                                         const Parcelling& parcelling, const Tolerances& tol,
                                         int eval_skip) {
  if (divisible(p, q, tol)) throw Error(ErrorKind::DivisibleByQ, "polynomial is divisible by Q");
  return factor_impl(p, q, conic_roots(p, q, tol), parcelling, tol, eval_skip);
}

std::vector<MultipoleFactorization> all_factorizations(const HomogPoly& p, const QuadForm& q,
                                                       const Tolerances& tol) {
  auto [e, core] = strip_checked(p, q, tol);
  const ConicRoots roots = conic_roots(core, q, tol);
  std::vector<MultipoleFactorization> out;
  for (const Parcelling& pc : enumerate_parcellings(roots.multiplicities())) {
    out.push_back(factor_impl(core, q, roots, pc, tol, 0));
    out.back().q_power = e;
  }
  return out;
}

MultipoleFactorization canonical_factor(const HomogPoly& p, const QuadForm& q,
                                        const Tolerances& tol) {
  auto [e, core] = strip_checked(p, q, tol);
  MultipoleFactorization f = with_split_fallback(core, q, tol, [&](const ConicRoots& roots) {
    return factor_impl(core, q, roots, canonical_parcelling(roots.multiplicities()), tol, 0);
  });
  f.q_power = e;
  return f;
}

std::vector<int> conjugation_on_clusters(const ConicRoots& roots, double tol) {
  const std::size_t n = roots.clusters.size();
  std::vector<ProjPoint2> pts;
  for (const RootCluster& c : roots.clusters) pts.push_back(roots.param.point(c.point));
  std::vector<int> sigma(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const ProjPoint2 c = conj_point(pts[i]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double dist = proj_distance(pts[j], c);
      if (dist < best) {
        best = dist;
        sigma[i] = static_cast<int>(j);
      }
    }
    if (best > tol) {
      throw Error(ErrorKind::ConjugationPairingFailure, "root has no conjugate partner");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(sigma[i]);
    if (static_cast<std::size_t>(sigma[j]) != i ||
        roots.clusters[i].multiplicity != roots.clusters[j].multiplicity) {
      throw Error(ErrorKind::ConjugationPairingFailure, "conjugation is not an involution on roots");
    }
  }
  return sigma;
}

namespace {

double pairing_tolerance(const Tolerances& tol) { return 1e3 * tol.eps_cluster; }

}  // namespace

MultipoleFactorization real_factor(const HomogPoly& p, const QuadForm& q, const Tolerances& tol) {
  require_real(p, q, tol);
  if (!q.is_definite()) throw Error(ErrorKind::NotDefinite, "quadratic form is not definite");
  auto [e, core] = strip_checked(p.real_part(), q, tol);
  core = core.real_part();
  MultipoleFactorization f = with_split_fallback(core, q, tol, [&](const ConicRoots& roots) {
    const std::vector<int> sigma = conjugation_on_clusters(roots, pairing_tolerance(tol));
    Parcelling pc;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const int j = sigma[i];
      if (j == static_cast<int>(i)) {
        throw Error(ErrorKind::ConjugationPairingFailure, "real root on a definite conic");
      }
      if (j < static_cast<int>(i)) continue;
      for (int m = 0; m < roots.clusters[i].multiplicity; ++m) {
        pc.pieces.emplace_back(static_cast<int>(i), j);
      }
    }
    std::sort(pc.pieces.begin(), pc.pieces.end());
    return realify(factor_impl(core, q, roots, pc, tol, 0), core, q, tol);
  });
  f.q_power = e;
  return f;
}

std::vector<MultipoleFactorization> real_factorizations(const HomogPoly& p, const QuadForm& q,
                                                        const Tolerances& tol) {
  require_real(p, q, tol);
  auto [e, core] = strip_checked(p.real_part(), q, tol);
  core = core.real_part();
  const ConicRoots roots = conic_roots(core, q, tol);
  const std::vector<int> sigma = conjugation_on_clusters(roots, pairing_tolerance(tol));

  Parcelling forced;
  std::vector<int> real_idx;
  std::vector<int> real_mu;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const int j = sigma[i];
    if (j == static_cast<int>(i)) {
      real_idx.push_back(j);
      real_mu.push_back(roots.clusters[i].multiplicity);
    } else if (j > static_cast<int>(i)) {
      for (int m = 0; m < roots.clusters[i].multiplicity; ++m) {
        forced.pieces.emplace_back(static_cast<int>(i), j);
      }
    }
  }

  std::vector<MultipoleFactorization> out;
  for (const Parcelling& rp : enumerate_parcellings(real_mu)) {
    Parcelling pc = forced;
    for (auto [a, b] : rp.pieces) {
      pc.pieces.emplace_back(real_idx[static_cast<std::size_t>(a)],
                             real_idx[static_cast<std::size_t>(b)]);
    }
    std::sort(pc.pieces.begin(), pc.pieces.end());
    out.push_back(realify(factor_impl(core, q, roots, pc, tol, 0), core, q, tol));
    out.back().q_power = e;
  }
  return out;
}

DiscriminantReport discriminant_report(const HomogPoly& p, const QuadForm& q,
                                       const Tolerances& tol) {
  if (p.is_zero() || divisible(p, q, tol)) {
    throw Error(ErrorKind::DivisibleByQ, "polynomial is divisible by Q");
  }
  const ConicRoots roots = conic_roots(p, q, tol);
  DiscriminantReport r;
  r.relative_discriminant = relative_discriminant(roots.form);
  r.max_multiplicity = roots.max_multiplicity();
  r.in_discriminant = r.relative_discriminant <= tol.disc;
  return r;
}

}  // namespace multipole
