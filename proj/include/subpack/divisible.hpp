#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "subpack/field.hpp"
#include "subpack/packing_code.hpp"
#include "subpack/qcalc.hpp"
#include "subpack/subspace.hpp"

namespace subpack {

/// Lengths q^i * [r+1-i]_q for i = 0..r. A q^r-divisible code of length L
/// exists iff L is a non-negative integer combination of these.
std::vector<BigInt> divisible_summands(unsigned q, unsigned r);

/// Numerical-semigroup membership of len in the monoid generated by
/// divisible_summands(q, r). len = 0 is feasible.
bool divisible_length_feasible(const BigInt& len, unsigned q, unsigned r);

/// Largest b >= 0 such that a - b*[k]_q is a feasible q^{k-1}-divisible
/// length. std::nullopt when no b in the scanned window works (the scan
/// starts at floor(a/[k]_q) and covers at most 10*[k]_q values of b).
std::optional<BigInt> reduce_quotient(const BigInt& a, unsigned k, unsigned q);

/// Weighted set of 1-subspaces (points) of F_q^n.
class PointMultiset {
 public:
  PointMultiset(const Field& f, std::size_t ambient);

  std::size_t ambient() const noexcept { return ambient_; }
  const std::vector<Subspace>& points() const noexcept { return points_; }
  std::uint64_t weight(const Subspace& point) const;
  std::uint64_t weight_at(std::size_t index) const { return weights_.at(index); }
  void add(const Subspace& point, std::uint64_t multiplicity = 1);

  /// Sum of all weights.
  std::uint64_t size() const noexcept { return total_; }
  std::uint64_t max_weight() const;
  /// Total weight of the points inside `subspace`.
  std::uint64_t size_in(const Subspace& subspace) const;
  /// Weight function cap - w(P). Throws std::invalid_argument if some w(P) > cap.
  PointMultiset complement(std::uint64_t cap) const;

 private:
  Field field_;
  std::size_t ambient_;
  std::vector<Subspace> points_;
  std::vector<std::uint64_t> weights_;
  std::unordered_map<std::string, std::size_t> index_;
  std::uint64_t total_ = 0;
};

/// Point multiset of a code: w(P) = number of blocks through P.
/// Throws for an empty code or block dimension below 2.
PointMultiset multiset_of_code(const PackingCode& code);

}  // namespace subpack
