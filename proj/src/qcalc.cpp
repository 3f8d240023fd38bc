#include "subpack/qcalc.hpp"

#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

namespace subpack {

BigInt ipow(unsigned q, unsigned e) {
  BigInt r = 1;
  BigInt b = q;
  while (e) {
    if (e & 1U) r *= b;
    b *= b;
    e >>= 1U;
  }
  return r;
}

BigInt gaussian_binomial(unsigned n, unsigned k, unsigned q) {
  if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be >= 2");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt num = 1;
  BigInt den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

BigInt q_int(unsigned n, unsigned q) { return gaussian_binomial(n, 1, q); }

BigInt isqrt_ceil(const BigInt& x) {
  if (x < 0) throw std::domain_error("isqrt_ceil of a negative value");
  BigInt s = boost::multiprecision::sqrt(x);
  if (s * s < x) ++s;
  return s;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("division by zero");
  BigInt quot = num / den;  // truncates toward zero
  if ((num % den != 0) && ((num < 0) != (den < 0))) --quot;
  return quot;
}

std::uint64_t to_u64(const BigInt& x) {
  if (x < 0 || x > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("value does not fit in 64 bits: " + x.str());
  return x.convert_to<std::uint64_t>();
}

}  // namespace subpack
