#pragma once

// Brute-force reference implementations used by the tests. They only rely on
// the field tables and never on elimination, so they check the linear algebra
// layer independently.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "subpack/field.hpp"
#include "subpack/matrix.hpp"
#include "subpack/subspace.hpp"

namespace oracle {

using subpack::Element;
using subpack::Field;
using subpack::Matrix;

// Vector of F_q^n as a base-q integer, coordinate 0 most significant.
inline std::uint32_t encode(const std::vector<Element>& v, unsigned q) {
  std::uint32_t x = 0;
  for (auto e : v) x = x * q + e;
  return x;
}

inline std::vector<Element> decode(std::uint32_t x, unsigned q, std::size_t n) {
  std::vector<Element> v(n);
  for (std::size_t i = n; i-- > 0;) {
    v[i] = static_cast<Element>(x % q);
    x /= q;
  }
  return v;
}

using SpanSet = std::vector<std::uint32_t>;  // sorted members

// Every F_q-combination of the rows.
inline SpanSet span_set(const Field& f, const Matrix& m) {
  const unsigned q = f.order();
  std::set<std::uint32_t> out;
  std::vector<unsigned> coeff(m.rows(), 0);
  while (true) {
    std::vector<Element> v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        v[c] = f.add(v[c], f.mul(static_cast<Element>(coeff[r]), m(r, c)));
    out.insert(encode(v, q));
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == q) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  return {out.begin(), out.end()};
}

inline SpanSet span_set(const subpack::Subspace& s, const Field& f) { return span_set(f, s.basis()); }

inline std::size_t log_q(std::size_t size, unsigned q) {
  std::size_t d = 0;
  while (size > 1) {
    size /= q;
    ++d;
  }
  return d;
}

inline bool subset_of(const SpanSet& a, const SpanSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline SpanSet span_union(const Field& f, const SpanSet& a, const SpanSet& b, std::size_t n) {
  std::set<std::uint32_t> out;
  for (auto x : a)
    for (auto y : b) {
      auto u = decode(x, f.order(), n), v = decode(y, f.order(), n);
      for (std::size_t i = 0; i < n; ++i) u[i] = f.add(u[i], v[i]);
      out.insert(encode(u, f.order()));
    }
  return {out.begin(), out.end()};
}

// All k-dimensional subspaces of F_q^n as member sets, by closing sets of
// vectors under span one generator at a time.
inline std::set<SpanSet> grassmannian(const Field& f, std::size_t n, std::size_t k) {
  const unsigned q = f.order();
  std::uint32_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  std::set<SpanSet> level = {SpanSet{0}};
  for (std::size_t d = 0; d < k; ++d) {
    std::set<SpanSet> next;
    for (const auto& s : level)
      for (std::uint32_t x = 1; x < total; ++x) {
        if (std::binary_search(s.begin(), s.end(), x)) continue;
        Matrix gen(1, n);
        auto v = decode(x, q, n);
        for (std::size_t c = 0; c < n; ++c) gen(0, c) = v[c];
        next.insert(span_union(f, s, span_set(f, gen), n));
      }
    level = std::move(next);
  }
  return level;
}

// Rank as log_q of the span size.
inline std::size_t brute_rank(const Field& f, const Matrix& m) {
  if (m.rows() == 0) return 0;
  return log_q(span_set(f, m).size(), f.order());
}

}  // namespace oracle
