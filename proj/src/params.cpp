#include "subpack/params.hpp"

#include <sstream>
#include <stdexcept>

namespace subpack {

bool is_prime_power(unsigned q) {
  if (q < 2) return false;
  unsigned p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

void PackingParams::validate(bool allow_t_zero) const {
  if (!is_prime_power(q)) throw std::invalid_argument("q=" + std::to_string(q) + " is not a prime power");
  if (t == 0 && !allow_t_zero) throw std::invalid_argument("t must be at least 1");
  if (!(t <= k && k <= n)) throw std::invalid_argument("require t <= k <= n in " + describe(*this));
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
}

bool PackingParams::nontrivial() const { return BigInt(lambda) <= gaussian_binomial(n - t, k - t, q); }

void CoveringParams::validate() const {
  if (!is_prime_power(q)) throw std::invalid_argument("q=" + std::to_string(q) + " is not a prime power");
  if (delta < 1) throw std::invalid_argument("delta must be at least 1");
  if (!(1 <= k && k <= n)) throw std::invalid_argument("require 1 <= k <= n in " + describe(*this));
  if (alpha < 2) throw std::invalid_argument("alpha must be at least 2");
}

std::string describe(const PackingParams& p) {
  std::ostringstream out;
  out << "A_" << p.q << '(' << p.n << ',' << p.k << ',' << p.t << ';' << p.lambda << ')';
  return out.str();
}

std::string describe(const CoveringParams& c) {
  std::ostringstream out;
  out << "B_" << c.q << '(' << c.n << ',' << c.k << ',' << c.delta << ';' << c.alpha << ')';
  return out.str();
}

CoveringParams dualize_packing(const PackingParams& p) {
  p.validate();
  return {p.q, p.n, p.n - p.k, p.k - p.t + 1, p.lambda + 1};
}

PackingParams dualize_covering(const CoveringParams& c) {
  if (c.delta > c.n - c.k + 1)
    throw std::invalid_argument("no dual packing parameters for " + describe(c));
  return {c.q, c.n, c.n - c.k, c.n - c.k - c.delta + 1, c.alpha - 1};
}

}  // namespace subpack
