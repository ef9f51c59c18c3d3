#include "multipole/deconstruct.hpp"

#include <array>
#include <numeric>

#include "multipole/error.hpp"

namespace multipole {

cd MultipoleSequence::operator()(const Vec3& v) const {
  cd sum = lambda;
  for (const auto& [k, m] : terms) {
    cd prod = m.lambda;
    for (const Vec3& w : m.lines) prod *= w.cwiseProduct(v).sum();
    sum += prod;
  }
  return sum;
}

Poly MultipoleSequence::representative() const {
  Poly out(HomogPoly::constant(lambda));
  for (const auto& [k, m] : terms) out += m.expand();
  return out;
}

bool MultipoleSequence::approx_equal(const MultipoleSequence& o, double tol) const {
  const double scale = std::max(representative().norm(), o.representative().norm());
  if (std::abs(lambda - o.lambda) > tol * scale) return false;
  for (const auto& [k, m] : terms) {
    auto it = o.terms.find(k);
    if (it == o.terms.end()) {
      if (m.expand().norm() > tol * scale) return false;
    } else if ((m.expand() - it->second.expand()).norm() > tol * scale) {
      return false;
    }
  }
  for (const auto& [k, m] : o.terms) {
    if (!terms.count(k) && m.expand().norm() > tol * scale) return false;
  }
  return true;
}

namespace {

// Remainders below this (relative to the chain's top part) end the chain.
constexpr double kZeroPart = 1e-12;

struct Chain {
  cd lambda = 0.0;
  std::map<int, Multipole> terms;
};

std::vector<MultipoleFactorization> factor_level(const HomogPoly& p, const QuadForm& q,
                                                 Strategy strategy, const Tolerances& tol) {
  switch (strategy) {
    case Strategy::Canonical:
      return {canonical_factor(p, q, tol)};
    case Strategy::Enumerate:
      return all_factorizations(p, q, tol);
    case Strategy::RealUnique:
      return {real_factor(p, q, tol)};
    case Strategy::Real:
      return {real_factorizations(p, q, tol).front()};
  }
  return {};
}

// Collects finished chains: counts all of them, keeps the first `keep`.
struct ChainSink {
  std::size_t keep = 0;
  std::size_t cap = 0;
  std::size_t count = 0;
  std::vector<Chain> kept;

  void push(Chain c) {
    if (++count > cap) throw Error(ErrorKind::Overflow, "enumeration exceeds the output cap");
    if (kept.size() < keep) kept.push_back(std::move(c));
  }
};

void decompose_chain(const HomogPoly& h, const QuadForm& q, Strategy strategy,
                     const Tolerances& tol, double scale, Chain acc, ChainSink& out) {
  if (h.is_zero(kZeroPart * scale)) {
    out.push(std::move(acc));
  } else if (h.degree() == 0) {
    acc.lambda += h.coeffs()[0];
    out.push(std::move(acc));
  } else {
    auto [e, core] = strip_quadric_powers(h, q, tol.div);
    if (core.degree() == 0) {
      acc.lambda += core.coeffs()[0];
      out.push(std::move(acc));
      return;
    }
    for (MultipoleFactorization& f : factor_level(core, q, strategy, tol)) {
      Chain next = acc;
      next.terms[core.degree()] = Multipole::from(f);
      if (core.degree() < 2) {
        out.push(std::move(next));
      } else {
        HomogPoly r = f.remainder;
        if (strategy == Strategy::RealUnique || strategy == Strategy::Real) r = r.real_part();
        decompose_chain(r, q, strategy, tol, scale, std::move(next), out);
      }
    }
  }
}

void check_strategy(const Poly& p, const QuadForm& q, Strategy strategy, const Tolerances& tol) {
  if (strategy == Strategy::RealUnique || strategy == Strategy::Real) {
    bool real = q.is_real();
    for (const HomogPoly& h : p.parts()) real = real && h.is_real(tol.fact);
    if (!real) throw Error(ErrorKind::StrategyMismatch, "real strategy needs real P and Q");
    if (strategy == Strategy::RealUnique && !q.is_definite()) {
      throw Error(ErrorKind::StrategyMismatch, "real_unique needs a definite form");
    }
  }
}

// Even and odd chains of P.
std::array<ChainSink, 2> decompose_chains(const Poly& p, const QuadForm& q, Strategy strategy,
                                          const Tolerances& tol, std::size_t keep,
                                          std::size_t cap) {
  check_strategy(p, q, strategy, tol);
  auto [even, odd] = grade_split(p);
  std::array<ChainSink, 2> sinks;
  for (int i = 0; i < 2; ++i) {
    const Poly& part = i == 0 ? even : odd;
    ChainSink& sink = sinks[static_cast<std::size_t>(i)];
    sink.keep = keep;
    sink.cap = cap;
    if (part.effective_degree() < 0) {
      sink.push(Chain{});
    } else {
      HomogPoly top = homogenize_on_quadric(part, q).first;
      if (strategy == Strategy::RealUnique || strategy == Strategy::Real) top = top.real_part();
      decompose_chain(top, q, strategy, tol, top.norm(), Chain{}, sink);
    }
  }
  return sinks;
}

// The first `limit` pairs of the two chain lists, even chain outermost.
std::vector<MultipoleSequence> combine(const std::array<ChainSink, 2>& sinks, std::size_t limit) {
  std::vector<MultipoleSequence> out;
  for (const Chain& a : sinks[0].kept) {
    for (const Chain& b : sinks[1].kept) {
      if (out.size() >= limit) return out;
      MultipoleSequence s;
      s.lambda = a.lambda + b.lambda;
      s.terms = a.terms;
      s.terms.insert(b.terms.begin(), b.terms.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::vector<MultipoleSequence> full_decompose(const Poly& p, const QuadForm& q, Strategy strategy,
                                              const Tolerances& tol, std::size_t cap) {
  const auto sinks = decompose_chains(p, q, strategy, tol, cap, cap);
  if (sinks[0].count * sinks[1].count > cap) {
    throw Error(ErrorKind::Overflow, "enumeration exceeds the output cap");
  }
  return combine(sinks, cap);
}

RepresentationSet enumerate_representations(const Poly& p, const QuadForm& q,
                                            const Tolerances& tol, std::size_t keep,
                                            std::size_t cap) {
  const auto sinks = decompose_chains(p, q, Strategy::Enumerate, tol, keep, cap);
  RepresentationSet out;
  out.count = BigInt(sinks[0].count) * sinks[1].count;
  out.sequences = combine(sinks, keep);
  return out;
}

MultipoleSequence decompose(const Poly& p, const QuadForm& q, Strategy strategy,
                            const Tolerances& tol) {
  if (strategy == Strategy::Enumerate) {
    throw Error(ErrorKind::StrategyMismatch, "enumerate yields many sequences");
  }
  return full_decompose(p, q, strategy, tol).front();
}

BigInt representation_bound(int d) {
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
  BigInt out = 1;
  for (int k = 1; k <= d; ++k) out *= count_parcellings(k);
  return out;
}

long lemma9_gap(int l, const std::vector<int>& degrees) {
  if (l < 1 || degrees.empty()) throw Error(ErrorKind::InvalidPartition, "need l >= 1 and s >= 1");
  auto dim = [l](long d) {
    // Dimension of the degree-d part, truncated at l (all of it when d < l).
    return d >= l ? l * (2 * d - l + 3) / 2 : d * (d + 3) / 2;
  };
  long total = 0;
  for (int di : degrees) {
    if (di < 1) throw Error(ErrorKind::InvalidPartition, "degrees must be positive");
    total += di;
  }
  long gap = dim(total) + static_cast<long>(degrees.size()) - 1;
  for (int di : degrees) gap -= dim(di);
  return gap;
}

}  // namespace multipole
