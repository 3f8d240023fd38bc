#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <tuple>

#include "subpack/qcalc.hpp"

namespace subpack {

bool is_prime_power(unsigned q);

/// Parameters of A_q(n,k,t;lambda): k-subspaces of F_q^n with every
/// t-subspace in at most lambda blocks.
struct PackingParams {
  unsigned q = 2;
  unsigned n = 0;
  unsigned k = 0;
  unsigned t = 0;
  std::uint64_t lambda = 1;

  /// Throws std::invalid_argument unless q is a prime power, 1 <= t <= k <= n
  /// and lambda >= 1. With allow_t_zero the recursion base t = 0 is accepted.
  void validate(bool allow_t_zero = false) const;
  /// lambda <= [n-t over k-t]_q, i.e. the coverage constraint can bind.
  bool nontrivial() const;

  auto tie() const { return std::tie(q, n, k, t, lambda); }
  friend bool operator==(const PackingParams& a, const PackingParams& b) { return a.tie() == b.tie(); }
  friend bool operator<(const PackingParams& a, const PackingParams& b) { return a.tie() < b.tie(); }
};

/// Parameters of B_q(n,k,delta;alpha): k-subspaces of F_q^n such that any
/// alpha of them span at least k + delta dimensions.
struct CoveringParams {
  unsigned q = 2;
  unsigned n = 0;
  unsigned k = 0;
  unsigned delta = 1;
  std::uint64_t alpha = 2;

  /// Throws unless q is a prime power, 1 <= delta, 1 <= k <= n, alpha >= 2.
  void validate() const;

  auto tie() const { return std::tie(q, n, k, delta, alpha); }
  friend bool operator==(const CoveringParams& a, const CoveringParams& b) { return a.tie() == b.tie(); }
  friend bool operator<(const CoveringParams& a, const CoveringParams& b) { return a.tie() < b.tie(); }
};

std::string describe(const PackingParams& p);   // "A_2(6,4,3;2)"
std::string describe(const CoveringParams& c);  // "B_2(6,2,2;3)"

/// A_q(n,k,t;lambda) = B_q(n, n-k, k-t+1; lambda+1).
CoveringParams dualize_packing(const PackingParams& p);
/// B_q(n,k,delta;alpha) = A_q(n, n-k, n-k-delta+1; alpha-1).
PackingParams dualize_covering(const CoveringParams& c);

}  // namespace subpack
