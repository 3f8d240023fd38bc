#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subpack/field.hpp"
#include "subpack/matrix.hpp"
#include "subpack/subspace.hpp"

namespace subpack {

/// F_{q^N} as polynomials over F_q modulo a fixed monic irreducible of
/// degree N. Elements are coefficient vectors, which is also their F_q^N
/// coordinate expansion.
class ExtensionField {
 public:
  using Value = std::vector<Element>;

  ExtensionField(const Field& base, unsigned degree);

  const Field& base() const noexcept { return base_; }
  unsigned degree() const noexcept { return degree_; }
  /// Monic modulus, coefficients from x^0 to x^N.
  const std::vector<Element>& modulus() const noexcept { return modulus_; }
  std::uint64_t size() const noexcept { return size_; }

  Value zero() const { return Value(degree_, 0); }
  /// x^i for i < N: the polynomial basis.
  Value basis_element(unsigned i) const;
  /// Element whose base-q digits (least significant first) are its coefficients.
  Value from_index(std::uint64_t index) const;

  Value add(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  /// a^q.
  Value frobenius(const Value& a) const;

 private:
  Field base_;
  unsigned degree_;
  std::uint64_t size_;
  std::vector<Element> modulus_;
};

/// Monic irreducible polynomial of the given degree over F_q: the Conway
/// polynomial when q is prime and tabulated, otherwise the lexicographically
/// smallest irreducible.
std::vector<Element> irreducible_polynomial(const Field& base, unsigned degree);

/// Rank-metric code of k x m matrices over F_q.
struct RankCode {
  Field field{2};
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t delta = 1;
  bool linear = true;
  std::vector<Matrix> codewords;
  std::string description;
};

/// Linear Gabidulin code: evaluations of linearized polynomials of q-degree
/// at most min(k,m) - delta at min(k,m) independent points of F_{q^max(k,m)}.
/// Size q^{max(k,m)(min(k,m) - delta + 1)}.
RankCode gabidulin(const Field& f, std::size_t k, std::size_t m, std::size_t delta);

/// Cosets of a Gabidulin code inside the Gabidulin supercode of distance
/// delta - 1. Translate 0 is the base code itself.
struct TranslateFamily {
  RankCode base;
  std::vector<Matrix> offsets;
  std::size_t union_distance = 0;

  std::size_t count() const noexcept { return offsets.size(); }
  std::vector<Matrix> translate(std::size_t i) const;
  std::vector<Matrix> union_codewords() const;
};

/// alpha - 1 pairwise disjoint translates of `base` (a gabidulin() code with
/// delta >= 2). Requires 2 <= alpha and alpha - 1 <= q^{max(k,m)}.
TranslateFamily translate_family(const RankCode& base, std::uint64_t alpha);

/// rank(A - B).
std::size_t rank_distance(const Field& f, const Matrix& a, const Matrix& b);
/// Minimum pairwise rank distance; 0 for fewer than two matrices.
std::size_t min_rank_distance(const Field& f, std::span<const Matrix> code);

/// Row space of [I_k | A] in F_q^{k+m}.
Subspace lift(const Field& f, const Matrix& a);

}  // namespace subpack
