#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace subpack {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// q^e.
BigInt ipow(unsigned q, unsigned e);

/// Gaussian binomial [n over k]_q, the number of k-subspaces of F_q^n.
/// Zero when k > n.
BigInt gaussian_binomial(unsigned n, unsigned k, unsigned q);

/// q-integer [n]_q = (q^n - 1)/(q - 1) = [n over 1]_q.
BigInt q_int(unsigned n, unsigned q);

/// Smallest s with s*s >= x.
BigInt isqrt_ceil(const BigInt& x);

/// Floor division for signed values (rounds toward negative infinity).
BigInt floor_div(const BigInt& num, const BigInt& den);

/// Checked narrowing; throws std::overflow_error.
std::uint64_t to_u64(const BigInt& x);

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace subpack
