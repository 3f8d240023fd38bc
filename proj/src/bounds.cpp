#include "subpack/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "subpack/constructions.hpp"

namespace subpack {

std::optional<BigInt> BoundResult::method_value(const std::string& method, BoundSide side) const {
  for (const auto& p : provenance)
    if (p.method == method && p.side == side && p.applied) return p.value;
  return std::nullopt;
}

BigInt packing_bound(const PackingParams& p) {
  p.validate(true);
  const BigInt all = gaussian_binomial(p.n, p.k, p.q);
  const BigInt v = BigInt(p.lambda) * gaussian_binomial(p.n, p.t, p.q) / gaussian_binomial(p.k, p.t, p.q);
  return std::min(v, all);
}

namespace {

BigInt johnson_numerator(const PackingParams& p, const UpperBoundOracle& inner) {
  if (p.t < 1 || p.k < 1) throw std::invalid_argument("Johnson bound requires t >= 1");
  const PackingParams reduced{p.q, p.n - 1, p.k - 1, p.t - 1, p.lambda};
  return q_int(p.n, p.q) * inner(reduced);
}

}  // namespace

BigInt johnson_classic(const PackingParams& p, const UpperBoundOracle& inner) {
  p.validate();
  return johnson_numerator(p, inner) / q_int(p.k, p.q);
}

BigInt johnson_improved(const PackingParams& p, const UpperBoundOracle& inner) {
  p.validate();
  if (p.k < 2) throw std::invalid_argument("improved Johnson bound requires k >= 2");
  const BigInt a = johnson_numerator(p, inner);
  if (auto b = reduce_quotient(a, p.k, p.q)) return *b;
  return a / q_int(p.k, p.q);
}

BigInt combination_bound(const PackingParams& p, const UpperBoundOracle& inner) {
  p.validate();
  if (!(p.t < p.k && p.k < p.n)) throw std::invalid_argument("combination bound requires t < k < n");
  if (!p.nontrivial()) throw std::invalid_argument("combination bound requires lambda <= [n-t, k-t]_q");

  const BigInt x_max = inner(PackingParams{p.q, p.n - 1, p.k, p.t, p.lambda});
  const BigInt a = BigInt(p.lambda) * gaussian_binomial(p.n - 1, p.t, p.q);
  const BigInt b = gaussian_binomial(p.k, p.t, p.q);
  const BigInt c = gaussian_binomial(p.k - 1, p.t, p.q);
  const BigInt ratio_num = ipow(p.q, p.n) - 1;
  const BigInt ratio_den = ipow(p.q, p.n - p.k) - 1;

  // first arm x + floor((a - x b)/c) = floor((a + x (c - b))/c) is non-increasing,
  // the second arm is non-decreasing, so the max of the min sits at the crossing
  auto first = [&](const BigInt& x) { return floor_div(a + x * (c - b), c); };
  auto second = [&](const BigInt& x) { return ratio_num * x / ratio_den; };

  const BigInt x_valid = std::min(x_max, a / b);  // a - x b >= 0 on [0, x_valid]
  BigInt lo = 0;
  BigInt hi = x_valid;
  while (lo < hi) {  // largest x with second(x) <= first(x)
    BigInt mid = (lo + hi + 1) / 2;
    if (second(mid) <= first(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  BigInt best = second(lo);
  if (lo + 1 <= x_valid) best = std::max(best, first(lo + 1));
  if (x_max > x_valid) best = std::max(best, second(x_max));
  return best;
}

BigInt inequality_bound_cap(const InequalityInputs& in) {
  if (in.m <= 0) throw std::invalid_argument("inequality bound requires m > 0");
  if (in.mu1 <= 0) throw std::invalid_argument("inequality bound requires mu1 > 0");
  const BigInt den = 2 * in.m * in.mu1 - in.mu2;
  if (den <= 0) throw std::invalid_argument("inequality bound requires 2 m mu1 > mu2");
  return in.m * (in.m + 1) * in.mu0 / den;
}

std::optional<QuadraticBound> quadratic_bound(const PackingParams& p) {
  if (p.n < 4 || p.k != p.n - 2 || p.t != p.n - 3 || p.lambda != 2) return std::nullopt;
  const BigInt mu0 = q_int(p.n, p.q);
  const BigInt mu1 = p.q + 1;
  const BigInt mu2 = q_int(p.n - 2, p.q);
  const BigInt num = mu2 + isqrt_ceil(mu2 * mu2 + mu2);
  const BigInt m_star = (num + 2 * mu1 - 1) / (2 * mu1);

  std::optional<QuadraticBound> best;
  for (BigInt m = m_star - 1; m <= m_star + 1; ++m) {
    if (m < 1 || 2 * m * mu1 <= mu2) continue;
    const BigInt v = inequality_bound_cap({mu0, mu1, mu2, m});
    if (!best || v < best->value) best = QuadraticBound{v, m};
  }
  return best;
}

BigInt trivial_lower(const PackingParams& p) {
  p.validate(true);
  const BigInt all = gaussian_binomial(p.n, p.k, p.q);
  if (p.t == p.k || !p.nontrivial()) return all;
  return std::min(BigInt(p.lambda), all);
}

BigInt BoundEngine::upper(const PackingParams& p) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(p); it != memo_.end()) return it->second;
  }
  BigInt v = compute_upper(p, nullptr);
  std::lock_guard lock(mutex_);
  memo_.emplace(p, v);
  return v;
}

std::vector<Provenance> BoundEngine::upper_methods(const PackingParams& p) {
  std::vector<Provenance> log;
  compute_upper(p, &log);
  return log;
}

BigInt BoundEngine::compute_upper(const PackingParams& p, std::vector<Provenance>* log) {
  p.validate(true);
  std::vector<Provenance> local;
  auto record = [&](std::string method, BigInt value, std::string note = {}, bool applied = true) {
    local.push_back({std::move(method), BoundSide::upper, std::move(value), std::move(note), applied});
  };

  const BigInt all = gaussian_binomial(p.n, p.k, p.q);
  if (p.t == 0) {
    record("base", std::min(BigInt(p.lambda), all), "t=0: the zero subspace lies in every block");
  } else if (p.t == p.k || !p.nontrivial()) {
    record("trivial-cap", all, "coverage constraint cannot bind");
  } else {
    const UpperBoundOracle inner = [this](const PackingParams& r) { return upper(r); };
    record("trivial-cap", all);
    record("packing", packing_bound(p));
    record("classic-johnson", johnson_classic(p, inner));
    if (p.k >= 2) record("improved-johnson", johnson_improved(p, inner));
    if (p.t < p.k && p.k < p.n) record("combination", combination_bound(p, inner), "s:=t");
    if (auto quad = quadratic_bound(p)) record("quadratic", quad->value, "m=" + quad->m.str());
  }
  if (p.t > 0 && registry_) {
    if (const auto* known = registry_->find(p)) {
      const BigInt proven = std::max(trivial_lower(p), packing_lower(p));
      if (known->upper >= proven)
        record("registry", known->upper, known->source);
      else
        record("registry", known->upper,
               known->source + " conflicts with constructive lower bound " + proven.str() + "; ignored", false);
    }
  }

  BigInt best = -1;
  for (const auto& entry : local)
    if (entry.applied && (best < 0 || entry.value < best)) best = entry.value;
  if (log) *log = std::move(local);
  return best;
}

BoundResult BoundEngine::evaluate(const PackingParams& p) {
  p.validate();
  BoundResult r;
  r.params = p;
  r.provenance = upper_methods(p);
  r.upper = -1;
  for (const auto& e : r.provenance)
    if (e.applied && (r.upper < 0 || e.value < r.upper)) r.upper = e.value;

  auto add_lower = [&](std::string method, BigInt value, std::string note = {}, bool applied = true) {
    r.provenance.push_back({std::move(method), BoundSide::lower, std::move(value), std::move(note), applied});
  };
  add_lower("trivial", trivial_lower(p),
            p.t == p.k || !p.nontrivial() ? "every k-subspace" : "any lambda distinct blocks");
  add_lower("linkage-dual", packing_lower(p), "linkage construction on the dual covering parameters");
  if (registry_) {
    if (const auto* known = registry_->find(p)) {
      if (known->lower <= r.upper)
        add_lower("registry", known->lower, known->source);
      else
        add_lower("registry", known->lower, known->source + " exceeds the proven upper bound; ignored", false);
    }
  }
  r.lower = 0;
  for (const auto& e : r.provenance)
    if (e.side == BoundSide::lower && e.applied) r.lower = std::max(r.lower, e.value);
  if (r.lower > r.upper)
    throw std::logic_error("inconsistent bounds for " + describe(p) + ": " + r.lower.str() + " > " + r.upper.str());
  return r;
}

}  // namespace subpack
