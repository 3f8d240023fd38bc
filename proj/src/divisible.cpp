#include "subpack/divisible.hpp"

#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace subpack {
namespace {

// Smallest representable value in every residue class modulo the smallest
// generator q^r (the Apery set), by shortest paths over residues.
struct AperySet {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> least;
};

constexpr std::uint64_t kUnreachable = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 24;

AperySet build_apery(unsigned q, unsigned r) {
  std::vector<std::uint64_t> gens;
  for (const auto& s : divisible_summands(q, r)) gens.push_back(to_u64(s));
  AperySet a;
  a.modulus = to_u64(ipow(q, r));
  if (a.modulus > kMaxModulus) throw std::out_of_range("divisibility exponent too large");
  a.least.assign(a.modulus, kUnreachable);
  using Item = std::pair<std::uint64_t, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  a.least[0] = 0;
  queue.emplace(0, 0);
  while (!queue.empty()) {
    auto [value, residue] = queue.top();
    queue.pop();
    if (value != a.least[residue]) continue;
    for (auto g : gens) {
      const std::uint64_t next_value = value + g;
      const std::uint64_t next_residue = next_value % a.modulus;
      if (next_value < a.least[next_residue]) {
        a.least[next_residue] = next_value;
        queue.emplace(next_value, next_residue);
      }
    }
  }
  return a;
}

const AperySet& apery(unsigned q, unsigned r) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<const AperySet>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{q, r}];
  if (!slot) slot = std::make_unique<const AperySet>(build_apery(q, r));
  return *slot;
}

}  // namespace

std::vector<BigInt> divisible_summands(unsigned q, unsigned r) {
  std::vector<BigInt> out;
  out.reserve(r + 1);
  for (unsigned i = 0; i <= r; ++i) out.push_back(ipow(q, i) * q_int(r + 1 - i, q));
  return out;
}

bool divisible_length_feasible(const BigInt& len, unsigned q, unsigned r) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (len < 0) return false;
  const auto& a = apery(q, r);
  const auto residue = static_cast<std::size_t>(to_u64(len % a.modulus));
  return a.least[residue] != kUnreachable && len >= a.least[residue];
}

std::optional<BigInt> reduce_quotient(const BigInt& a, unsigned k, unsigned q) {
  if (k < 2) throw std::invalid_argument("reduce_quotient requires k >= 2");
  if (a < 0) throw std::invalid_argument("reduce_quotient requires a >= 0");
  const BigInt step = q_int(k, q);
  const BigInt window = 10 * step;
  BigInt b = a / step;
  for (BigInt scanned = 0; b >= 0 && scanned < window; --b, ++scanned)
    if (divisible_length_feasible(a - b * step, q, k - 1)) return b;
  return std::nullopt;
}

PointMultiset::PointMultiset(const Field& f, std::size_t ambient)
    : field_(f), ambient_(ambient), points_(enumerate_subspaces(f, ambient, 1)) {
  weights_.assign(points_.size(), 0);
  for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i].key(), i);
}

std::uint64_t PointMultiset::weight(const Subspace& point) const {
  auto it = index_.find(point.key());
  if (it == index_.end()) throw std::invalid_argument("not a point of the ambient space");
  return weights_[it->second];
}

void PointMultiset::add(const Subspace& point, std::uint64_t multiplicity) {
  auto it = index_.find(point.key());
  if (it == index_.end()) throw std::invalid_argument("not a point of the ambient space");
  weights_[it->second] += multiplicity;
  total_ += multiplicity;
}

std::uint64_t PointMultiset::max_weight() const {
  std::uint64_t m = 0;
  for (auto w : weights_) m = std::max(m, w);
  return m;
}

std::uint64_t PointMultiset::size_in(const Subspace& subspace) const {
  std::uint64_t s = 0;
  EchelonBasis basis(field_, ambient_);
  basis.insert_rows(subspace.basis());
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (weights_[i] && basis.contains(points_[i].basis().row(0))) s += weights_[i];
  return s;
}

PointMultiset PointMultiset::complement(std::uint64_t cap) const {
  PointMultiset out(*this);
  out.total_ = 0;
  for (auto& w : out.weights_) {
    if (w > cap) throw std::invalid_argument("weight exceeds the complement cap");
    w = cap - w;
    out.total_ += w;
  }
  return out;
}

PointMultiset multiset_of_code(const PackingCode& code) {
  if (code.empty()) throw std::invalid_argument("multiset_of_code: empty code");
  if (code.dim() < 2) throw std::invalid_argument("multiset_of_code: block dimension must be at least 2");
  PointMultiset m(code.field(), code.ambient());
  const auto coeffs = enumerate_subspaces(code.field(), code.dim(), 1);
  for (const auto& block : code.blocks())
    for (const auto& point : subspaces_of(code.field(), block, coeffs)) m.add(point);
  return m;
}

}  // namespace subpack
