#include "subpack/rankmetric.hpp"

#include <limits>
#include <stdexcept>

#include "subpack/qcalc.hpp"

namespace subpack {
namespace {

constexpr std::uint64_t kMaxCodewords = std::uint64_t{1} << 22;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) throw std::overflow_error("power overflow");
    r *= base;
  }
  return r;
}

// Remainder of a modulo the monic polynomial mod (coefficients low to high).
std::vector<Element> poly_mod(const Field& f, std::vector<Element> a, const std::vector<Element>& mod) {
  const std::size_t d = mod.size() - 1;
  for (std::size_t deg = a.size(); deg-- > d;) {
    const Element c = a[deg];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) a[deg - d + i] = f.sub(a[deg - d + i], f.mul(c, mod[i]));
  }
  a.resize(std::min(a.size(), d));
  return a;
}

bool is_irreducible(const Field& f, const std::vector<Element>& poly) {
  const std::size_t degree = poly.size() - 1;
  const unsigned q = f.order();
  // trial division by every monic polynomial of degree 1 .. degree/2
  for (std::size_t d = 1; 2 * d <= degree; ++d) {
    const std::uint64_t count = checked_pow(q, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Element> divisor(d + 1, 0);
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<Element>(v % q);
        v /= q;
      }
      divisor[d] = 1;
      auto rem = poly_mod(f, poly, divisor);
      bool zero = true;
      for (auto e : rem) zero = zero && e == 0;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<Element> irreducible_polynomial(const Field& base, unsigned degree) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  const unsigned q = base.order();
  if (degree == 1) return {0, 1};
  if (base.degree() == 1) {
    try {
      const Field big(checked_pow(q, degree) <= 256 ? static_cast<unsigned>(checked_pow(q, degree)) : 0);
      std::vector<Element> mod;
      for (auto c : big.modulus()) mod.push_back(static_cast<Element>(c));
      return mod;
    } catch (const std::invalid_argument&) {
      // not tabulated; search below
    }
  }
  const std::uint64_t count = checked_pow(q, degree);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Element> poly(degree + 1, 0);
    std::uint64_t v = idx;
    for (unsigned i = 0; i < degree; ++i) {
      poly[i] = static_cast<Element>(v % q);
      v /= q;
    }
    poly[degree] = 1;
    if (poly[0] != 0 && is_irreducible(base, poly)) return poly;
  }
  throw std::logic_error("no irreducible polynomial found");
}

ExtensionField::ExtensionField(const Field& base, unsigned degree)
    : base_(base), degree_(degree), size_(checked_pow(base.order(), degree)),
      modulus_(irreducible_polynomial(base, degree)) {}

ExtensionField::Value ExtensionField::basis_element(unsigned i) const {
  if (i >= degree_) throw std::out_of_range("basis index out of range");
  Value v = zero();
  v[i] = 1;
  return v;
}

ExtensionField::Value ExtensionField::from_index(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("element index out of range");
  Value v(degree_);
  for (auto& c : v) {
    c = static_cast<Element>(index % base_.order());
    index /= base_.order();
  }
  return v;
}

ExtensionField::Value ExtensionField::add(const Value& a, const Value& b) const {
  Value r(degree_);
  for (unsigned i = 0; i < degree_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

ExtensionField::Value ExtensionField::mul(const Value& a, const Value& b) const {
  std::vector<Element> prod(2 * degree_ - 1, 0);
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < degree_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
  }
  auto r = poly_mod(base_, std::move(prod), modulus_);
  r.resize(degree_, 0);
  return r;
}

ExtensionField::Value ExtensionField::frobenius(const Value& a) const {
  Value r = basis_element(0);
  for (unsigned i = 0; i < base_.order(); ++i) r = mul(r, a);
  return r;
}

namespace {

// g_j^{q^i} for the evaluation points g_j = x^j, i = 0..levels-1.
std::vector<std::vector<ExtensionField::Value>> frobenius_table(const ExtensionField& ext, std::size_t points,
                                                                std::size_t levels) {
  std::vector<std::vector<ExtensionField::Value>> table(levels);
  for (std::size_t j = 0; j < points; ++j) {
    auto v = ext.basis_element(static_cast<unsigned>(j));
    for (std::size_t i = 0; i < levels; ++i) {
      table[i].push_back(v);
      v = ext.frobenius(v);
    }
  }
  return table;
}

// Lays out f(g_0..g_{short-1}) as a k x m matrix.
Matrix to_matrix(const std::vector<ExtensionField::Value>& evals, std::size_t k, std::size_t m) {
  Matrix out(k, m);
  if (k <= m) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < m; ++c) out(j, c) = evals[j][c];
  } else {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t r = 0; r < k; ++r) out(r, j) = evals[j][r];
  }
  return out;
}

}  // namespace

RankCode gabidulin(const Field& f, std::size_t k, std::size_t m, std::size_t delta) {
  if (k == 0 || m == 0) throw std::invalid_argument("gabidulin: empty matrix shape");
  const std::size_t long_side = std::max(k, m);
  const std::size_t short_side = std::min(k, m);
  if (delta < 1 || delta > short_side)
    throw std::invalid_argument("gabidulin: require 1 <= delta <= min(k, m)");
  const std::size_t terms = short_side - delta + 1;

  const ExtensionField ext(f, static_cast<unsigned>(long_side));
  const std::uint64_t total = checked_pow(ext.size(), terms);
  if (total > kMaxCodewords) throw std::length_error("gabidulin: code too large to list");
  const auto powers = frobenius_table(ext, short_side, terms);

  RankCode code;
  code.field = f;
  code.k = k;
  code.m = m;
  code.delta = delta;
  code.linear = true;
  code.description = "Gabidulin q-degree<=" + std::to_string(terms - 1) + " over F_" +
                     std::to_string(f.order()) + "^" + std::to_string(long_side);
  code.codewords.reserve(total);

  std::vector<std::uint64_t> coeff(terms, 0);
  std::vector<ExtensionField::Value> coeff_values(terms, ext.zero());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t v = idx;
    for (std::size_t i = 0; i < terms; ++i) {
      coeff_values[i] = ext.from_index(v % ext.size());
      v /= ext.size();
    }
    std::vector<ExtensionField::Value> evals(short_side, ext.zero());
    for (std::size_t j = 0; j < short_side; ++j)
      for (std::size_t i = 0; i < terms; ++i) evals[j] = ext.add(evals[j], ext.mul(coeff_values[i], powers[i][j]));
    code.codewords.push_back(to_matrix(evals, k, m));
  }
  return code;
}

std::vector<Matrix> TranslateFamily::translate(std::size_t i) const {
  std::vector<Matrix> out;
  out.reserve(base.codewords.size());
  for (const auto& c : base.codewords) out.push_back(add(base.field, c, offsets.at(i)));
  return out;
}

std::vector<Matrix> TranslateFamily::union_codewords() const {
  std::vector<Matrix> out;
  out.reserve(base.codewords.size() * offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    auto t = translate(i);
    out.insert(out.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  }
  return out;
}

TranslateFamily translate_family(const RankCode& base, std::uint64_t alpha) {
  if (base.delta < 2)
    throw std::invalid_argument("translate_family: not applicable for delta = 1 (base is the full space)");
  if (alpha < 2) throw std::invalid_argument("translate_family: alpha must be at least 2");
  const std::size_t long_side = std::max(base.k, base.m);
  const std::size_t short_side = std::min(base.k, base.m);
  const ExtensionField ext(base.field, static_cast<unsigned>(long_side));
  if (alpha - 1 > ext.size())
    throw std::invalid_argument("translate_family: alpha - 1 = " + std::to_string(alpha - 1) + " exceeds q^" +
                                std::to_string(long_side) + " available cosets");
  const std::size_t level = short_side - base.delta + 1;  // first q-degree outside the base code
  const auto powers = frobenius_table(ext, short_side, level + 1);

  TranslateFamily fam;
  fam.base = base;
  fam.union_distance = alpha == 2 ? base.delta : base.delta - 1;
  for (std::uint64_t i = 0; i + 1 < alpha; ++i) {
    const auto c = ext.from_index(i);
    std::vector<ExtensionField::Value> evals;
    for (std::size_t j = 0; j < short_side; ++j) evals.push_back(ext.mul(c, powers[level][j]));
    fam.offsets.push_back(to_matrix(evals, base.k, base.m));
  }
  return fam;
}

std::size_t rank_distance(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("rank_distance: shape mismatch");
  return rank(f, subtract(f, a, b));
}

std::size_t min_rank_distance(const Field& f, std::span<const Matrix> code) {
  std::size_t best = 0;
  bool first = true;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      const std::size_t d = rank_distance(f, code[i], code[j]);
      if (first || d < best) best = d;
      first = false;
    }
  return best;
}

Subspace lift(const Field& f, const Matrix& a) {
  (void)f;
  return Subspace::from_rref_unchecked(hstack(Matrix::identity(a.rows()), a));
}

}  // namespace subpack
