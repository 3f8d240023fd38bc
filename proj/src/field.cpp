#include "subpack/field.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace subpack {
namespace {

// Conway polynomials, coefficients from x^0 to x^e (monic).
const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>& conway_table() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{7, 2}, {3, 6, 1}},
      {{11, 2}, {2, 7, 1}},
      {{13, 2}, {2, 12, 1}},
  };
  return table;
}

bool is_prime(unsigned x) {
  if (x < 2) return false;
  for (unsigned d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

// Splits q = p^e; returns {0, 0} if q is not a prime power.
std::pair<unsigned, unsigned> split_prime_power(unsigned q) {
  if (q < 2) return {0, 0};
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1 || !is_prime(p)) return {0, 0};
  return {p, e};
}

std::vector<unsigned> digits(unsigned value, unsigned p, unsigned e) {
  std::vector<unsigned> d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
  unsigned v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
  return v;
}

}  // namespace

bool is_supported_field_order(unsigned q) {
  if (q > 256) return false;
  auto [p, e] = split_prime_power(q);
  if (p == 0) return false;
  return e == 1 || conway_table().count({p, e}) > 0;
}

Field::Field(unsigned q) {
  if (!is_supported_field_order(q))
    throw std::invalid_argument("unsupported field order q=" + std::to_string(q));
  auto [p, e] = split_prime_power(q);
  q_ = q;
  p_ = p;
  e_ = e;

  auto t = std::make_shared<Tables>();
  t->add.resize(static_cast<std::size_t>(q) * q);
  t->mul.resize(static_cast<std::size_t>(q) * q);
  t->neg.resize(q);
  t->inv.assign(q, 0);
  if (e > 1) t->modulus = conway_table().at({p, e});

  for (unsigned a = 0; a < q; ++a) {
    const auto da = digits(a, p, e);
    for (unsigned b = 0; b < q; ++b) {
      const auto db = digits(b, p, e);
      std::vector<unsigned> sum(e);
      for (unsigned i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
      t->add[static_cast<std::size_t>(a) * q + b] = static_cast<Element>(from_digits(sum, p));

      // schoolbook product, then reduce by the monic modulus
      std::vector<unsigned> prod(2 * e - 1, 0);
      for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      if (e > 1) {
        const auto& mod = t->modulus;
        for (unsigned deg = 2 * e - 2; deg >= e; --deg) {
          unsigned c = prod[deg];
          if (c == 0) continue;
          for (unsigned i = 0; i <= e; ++i)
            prod[deg - e + i] = (prod[deg - e + i] + (p - c) * mod[i]) % p;
        }
      }
      prod.resize(e);
      t->mul[static_cast<std::size_t>(a) * q + b] = static_cast<Element>(from_digits(prod, p));
    }
  }
  for (unsigned a = 0; a < q; ++a) {
    for (unsigned b = 0; b < q; ++b) {
      if (t->add[static_cast<std::size_t>(a) * q + b] == 0) t->neg[a] = static_cast<Element>(b);
      if (t->mul[static_cast<std::size_t>(a) * q + b] == 1) t->inv[a] = static_cast<Element>(b);
    }
  }
  for (unsigned a = 1; a < q; ++a)
    if (t->inv[a] == 0) throw std::logic_error("modulus is reducible for q=" + std::to_string(q));
  tables_ = std::move(t);
}

std::string Field::modulus_string() const {
  if (e_ == 1) return "prime";
  std::ostringstream out;
  bool first = true;
  for (unsigned i = e_ + 1; i-- > 0;) {
    unsigned c = tables_->modulus[i];
    if (c == 0) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0 || c != 1) out << c;
    if (i >= 1) out << 'x';
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

}  // namespace subpack
