#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "multipole/sylvester.hpp"

namespace multipole {

enum class Strategy {
  Canonical,   // first parcelling in enumeration order at every level
  Enumerate,   // every parcelling at every level
  RealUnique,  // conjugation-invariant pairing; P real, Q real definite
  Real,        // first conjugation-invariant parcelling; P and Q real
};

// lambda + sum_k prod_l L_{k,l} on {Q = 1}; absent degrees are zero.
struct MultipoleSequence {
  cd lambda = 0.0;
  std::map<int, Multipole> terms;

  cd operator()(const Vec3& v) const;
  // lambda plus the expanded products.
  Poly representative() const;
  bool approx_equal(const MultipoleSequence& o, double tol = 1e-8) const;
};

inline constexpr std::size_t kEnumerateCap = 1'000'000;

// Throws StrategyMismatch, Overflow (enumerate beyond cap), and anything
// the factorization raises.
std::vector<MultipoleSequence> full_decompose(const Poly& p, const QuadForm& q, Strategy strategy,
                                              const Tolerances& tol = {},
                                              std::size_t cap = kEnumerateCap);

// Single sequence for Canonical, RealUnique or Real.
struct RepresentationSet {
  BigInt count = 0;                          // all Enumerate sequences
  std::vector<MultipoleSequence> sequences;  // the first `keep` of them
};

// Counts every Enumerate representation without storing more than `keep`.
// cap bounds the sequences walked per parity chain (Overflow beyond it).
RepresentationSet enumerate_representations(const Poly& p, const QuadForm& q,
                                            const Tolerances& tol = {}, std::size_t keep = 0,
                                            std::size_t cap = kEnumerateCap);

MultipoleSequence decompose(const Poly& p, const QuadForm& q,
                            Strategy strategy = Strategy::Canonical, const Tolerances& tol = {});

// prod_{k=1}^{d} (2k - 1)!!.
BigInt representation_bound(int d);

// Codimension of the image of M_Q(omega) in the space of harmonic-type
// polynomials of degree d = sum d_i. Throws InvalidPartition.
long lemma9_gap(int l, const std::vector<int>& degrees);

}  // namespace multipole
