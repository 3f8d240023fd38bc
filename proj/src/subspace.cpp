#include "subpack/subspace.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace subpack {

Subspace Subspace::span_of(const Field& f, const Matrix& generators) {
  auto res = rref(f, generators);
  Subspace s(generators.cols());
  s.basis_ = res.reduced.row_block(0, res.rank);
  return s;
}

Subspace Subspace::from_rref_unchecked(Matrix basis) {
  Subspace s(basis.cols());
  s.basis_ = std::move(basis);
  return s;
}

Subspace Subspace::from_rref(const Field& f, Matrix basis) {
  auto res = rref(f, basis);
  if (res.rank != basis.rows() || res.reduced != basis)
    throw std::invalid_argument("matrix is not a full-rank RREF basis");
  Subspace s(basis.cols());
  s.basis_ = std::move(basis);
  return s;
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> p;
  p.reserve(dim());
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    std::size_t c = 0;
    while (basis_(r, c) == 0) ++c;
    p.push_back(c);
  }
  return p;
}

bool Subspace::contains(const Field& f, const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("contains: ambient mismatch");
  if (other.dim() > dim()) return false;
  EchelonBasis b(f, ambient_);
  b.insert_rows(basis_);
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (b.insert(other.basis_.row(r))) return false;
  return true;
}

bool Subspace::contains_vector(const Field& f, std::span<const Element> v) const {
  EchelonBasis b(f, ambient_);
  b.insert_rows(basis_);
  return b.contains(v);
}

std::string Subspace::key() const {
  const auto& d = basis_.data();
  std::string k(d.begin(), d.end());
  k.push_back(static_cast<char>(dim()));
  return k;
}

void for_each_subspace(const Field& f, std::size_t n, std::size_t k,
                       const std::function<void(const Subspace&)>& visit) {
  if (k > n) throw std::invalid_argument("for_each_subspace: k > n");
  const unsigned q = f.order();
  if (k == 0) {
    visit(Subspace(n));
    return;
  }
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;

  while (true) {
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = piv[r] + 1; c < n; ++c)
        if (!is_pivot[c]) free.emplace_back(r, c);

    Matrix m(k, n);
    for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = 1;
    std::vector<unsigned> counter(free.size(), 0);
    auto advance = [&] {
      for (std::size_t i = free.size(); i-- > 0;) {
        if (++counter[i] < q) return true;
        counter[i] = 0;
      }
      return false;
    };
    do {
      for (std::size_t i = 0; i < free.size(); ++i)
        m(free[i].first, free[i].second) = static_cast<Element>(counter[i]);
      visit(Subspace::from_rref_unchecked(m));
    } while (advance());

    // next pivot set in colex order
    std::size_t i = 0;
    while (i < k && piv[i] + 1 == (i + 1 < k ? piv[i + 1] : n)) ++i;
    if (i == k) break;
    ++piv[i];
    for (std::size_t j = 0; j < i; ++j) piv[j] = j;
  }
}

std::vector<Subspace> enumerate_subspaces(const Field& f, std::size_t n, std::size_t k) {
  std::vector<Subspace> out;
  for_each_subspace(f, n, k, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

std::vector<Subspace> subspaces_of(const Field& f, const Subspace& u,
                                   std::span<const Subspace> coefficient_spaces) {
  std::vector<Subspace> out;
  out.reserve(coefficient_spaces.size());
  for (const auto& c : coefficient_spaces) {
    if (c.ambient() != u.dim()) throw std::invalid_argument("subspaces_of: coefficient shape mismatch");
    out.push_back(Subspace::span_of(f, multiply(f, c.basis(), u.basis())));
  }
  return out;
}

std::vector<Subspace> subspaces_of(const Field& f, const Subspace& u, std::size_t t) {
  const auto coeffs = enumerate_subspaces(f, u.dim(), t);
  if (t == 0) return {Subspace(u.ambient())};
  return subspaces_of(f, u, coeffs);
}

std::size_t span_dim(const Field& f, std::span<const Subspace> parts) {
  if (parts.empty()) return 0;
  const std::size_t n = parts.front().ambient();
  EchelonBasis b(f, n);
  for (const auto& p : parts) {
    if (p.ambient() != n) throw std::invalid_argument("span_dim: ambient mismatch");
    b.insert_rows(p.basis());
  }
  return b.rank();
}

Subspace sum(const Field& f, std::span<const Subspace> parts) {
  if (parts.empty()) throw std::invalid_argument("sum of no subspaces");
  std::vector<Matrix> mats;
  for (const auto& p : parts) {
    if (p.ambient() != parts.front().ambient()) throw std::invalid_argument("sum: ambient mismatch");
    mats.push_back(p.basis());
  }
  Matrix stacked = vstack(mats);
  if (stacked.rows() == 0) return Subspace(parts.front().ambient());
  return Subspace::span_of(f, stacked);
}

std::size_t subspace_distance(const Field& f, const Subspace& u, const Subspace& v) {
  const Subspace both[] = {u, v};
  return 2 * span_dim(f, both) - u.dim() - v.dim();
}

Subspace orthogonal_complement(const Field& f, const Subspace& u) {
  const std::size_t n = u.ambient();
  const auto piv = u.pivots();
  std::vector<bool> is_pivot(n, false);
  for (auto p : piv) is_pivot[p] = true;
  Matrix gens(n - u.dim(), n);
  std::size_t row = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    gens(row, j) = 1;
    for (std::size_t r = 0; r < u.dim(); ++r) gens(row, piv[r]) = f.neg(u.basis()(r, j));
    ++row;
  }
  if (gens.rows() == 0) return Subspace(n);
  return Subspace::span_of(f, gens);
}

Subspace embed_with_leading_zeros(const Field& f, const Subspace& u, std::size_t zeros) {
  if (u.dim() == 0) return Subspace(u.ambient() + zeros);
  Matrix m = hstack(Matrix(u.dim(), zeros), u.basis());
  return Subspace::from_rref(f, std::move(m));
}

char element_digit(Element e) {
  if (e < 10) return static_cast<char>('0' + e);
  if (e < 36) return static_cast<char>('a' + (e - 10));
  throw std::invalid_argument("element has no single-digit text form");
}

Element digit_element(char c, unsigned q) {
  unsigned v;
  if (c >= '0' && c <= '9')
    v = static_cast<unsigned>(c - '0');
  else if (c >= 'a' && c <= 'z')
    v = static_cast<unsigned>(c - 'a') + 10;
  else if (c >= 'A' && c <= 'Z')
    v = static_cast<unsigned>(c - 'A') + 10;
  else
    throw std::invalid_argument(std::string("invalid digit '") + c + "'");
  if (v >= q) throw std::invalid_argument(std::string("digit '") + c + "' out of range for field");
  return static_cast<Element>(v);
}

std::string format_subspace(const Subspace& s) {
  std::string out;
  for (std::size_t r = 0; r < s.dim(); ++r) {
    for (auto e : s.basis().row(r)) out.push_back(element_digit(e));
    out.push_back('\n');
  }
  return out;
}

std::string format_subspace_inline(const Subspace& s) {
  std::string out;
  for (std::size_t r = 0; r < s.dim(); ++r) {
    if (r) out.push_back(' ');
    for (auto e : s.basis().row(r)) out.push_back(element_digit(e));
  }
  return out;
}

}  // namespace subpack
