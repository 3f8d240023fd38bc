#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "subpack/field.hpp"
#include "subpack/matrix.hpp"

namespace subpack {

/// A subspace of F_q^n, held as its unique reduced row-echelon basis.
/// Two Subspace values are equal iff they are the same subspace.
class Subspace {
 public:
  /// Zero subspace of F_q^ambient.
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient), basis_(0, ambient) {}

  /// Row space of an arbitrary generator matrix (rank deficiency allowed).
  static Subspace span_of(const Field& f, const Matrix& generators);
  /// Wraps a matrix the caller asserts is already a full-rank RREF basis.
  /// Throws std::invalid_argument if it is not.
  static Subspace from_rref(const Field& f, Matrix basis);
  /// No validation; for producers that construct RREF bases by design.
  static Subspace from_rref_unchecked(Matrix basis);

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<std::size_t> pivots() const;

  /// True when `other` is a subspace of *this.
  bool contains(const Field& f, const Subspace& other) const;
  bool contains_vector(const Field& f, std::span<const Element> v) const;

  /// Compact byte key usable in hash maps: the basis entries, row-major.
  std::string key() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  std::size_t ambient_;
  Matrix basis_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return std::hash<std::string>{}(s.key()); }
};

/// Visits every k-subspace of F_q^n in canonical order: pivot sets in
/// colexicographic order, then the free entries (row-major) as a base-q
/// counter whose last position is the least significant digit.
void for_each_subspace(const Field& f, std::size_t n, std::size_t k,
                       const std::function<void(const Subspace&)>& visit);
std::vector<Subspace> enumerate_subspaces(const Field& f, std::size_t n, std::size_t k);

/// Every t-subspace contained in `u`, canonicalised in the ambient space.
std::vector<Subspace> subspaces_of(const Field& f, const Subspace& u, std::size_t t);
/// Same, reusing a precomputed enumeration of G_q(dim u, t) as coefficient matrices.
std::vector<Subspace> subspaces_of(const Field& f, const Subspace& u,
                                   std::span<const Subspace> coefficient_spaces);

/// dim(U_1 + ... + U_r). Throws on ambient mismatch.
std::size_t span_dim(const Field& f, std::span<const Subspace> parts);
Subspace sum(const Field& f, std::span<const Subspace> parts);
/// d_S(U, V) = 2 dim(U + V) - dim U - dim V.
std::size_t subspace_distance(const Field& f, const Subspace& u, const Subspace& v);
/// U^perp with respect to the standard bilinear form.
Subspace orthogonal_complement(const Field& f, const Subspace& u);
/// Prepends `zeros` zero coordinates, embedding into F_q^{zeros + ambient}.
Subspace embed_with_leading_zeros(const Field& f, const Subspace& u, std::size_t zeros);

/// Text digit for an element (0-9 then a-z); q <= 36.
char element_digit(Element e);
Element digit_element(char c, unsigned q);
/// k lines of n digits, most significant coordinate first.
std::string format_subspace(const Subspace& s);
/// One-line form: rows joined by single spaces.
std::string format_subspace_inline(const Subspace& s);

}  // namespace subpack
