#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "subpack/divisible.hpp"
#include "subpack/known_values.hpp"
#include "subpack/params.hpp"
#include "subpack/qcalc.hpp"

namespace subpack {

/// Upper bound on A_q for reduced parameters; supplied by the engine so that
/// individual bounds can recurse through the memoised minimum.
using UpperBoundOracle = std::function<BigInt(const PackingParams&)>;

enum class BoundSide { lower, upper };

struct Provenance {
  std::string method;
  BoundSide side = BoundSide::upper;
  BigInt value;
  std::string note;
  /// False for registry entries that conflict with a proven bound.
  bool applied = true;
};

struct BoundResult {
  PackingParams params;
  BigInt lower;
  BigInt upper;
  std::vector<Provenance> provenance;

  /// Value reported by `method` on the given side, if it was evaluated.
  std::optional<BigInt> method_value(const std::string& method, BoundSide side = BoundSide::upper) const;
};

/// min(floor(lambda [n,t]_q / [k,t]_q), [n,k]_q).
BigInt packing_bound(const PackingParams& p);

/// floor([n]_q * U(n-1,k-1,t-1;lambda) / [k]_q).
BigInt johnson_classic(const PackingParams& p, const UpperBoundOracle& inner);

/// The same quotient sharpened so the complementary point multiset has the
/// length of a q^{k-1}-divisible code. Falls back to johnson_classic.
BigInt johnson_improved(const PackingParams& p, const UpperBoundOracle& inner);

/// Hyperplane bound: with x the largest number of blocks inside one
/// hyperplane (x <= U(n-1,k,t;lambda)),
///   |C| <= min{ x + floor((lambda [n-1,t] - x [k,t]) / [k-1,t]),
///               floor((q^n - 1) / (q^{n-k} - 1) * x) },
/// maximised over x. A negative numerator drops the first term.
/// Requires 1 <= t < k < n and lambda <= [n-t, k-t]_q.
BigInt combination_bound(const PackingParams& p, const UpperBoundOracle& inner);

struct InequalityInputs {
  BigInt mu0;
  BigInt mu1;
  BigInt mu2;
  BigInt m;
};

/// floor(m(m+1) mu0 / (2 m mu1 - mu2)); requires 2 m mu1 > mu2, mu1 > 0, m > 0.
BigInt inequality_bound_cap(const InequalityInputs& in);

struct QuadraticBound {
  BigInt value;
  BigInt m;
};

/// Bound for A_q(n, n-2, n-3; 2) from the hyperplane histogram inequality,
/// evaluated at the rounded optimal m and its neighbours.
/// std::nullopt unless k = n-2, t = n-3 >= 1 and lambda = 2.
std::optional<QuadraticBound> quadratic_bound(const PackingParams& p);

/// Memoised minimum over all upper bounds, with optional registry lookups.
/// Thread-safe; concurrent callers may recompute the same entry.
class BoundEngine {
 public:
  /// With registry == nullptr the engine uses only computed bounds.
  explicit BoundEngine(const KnownValues* registry = nullptr) : registry_(registry) {}

  const KnownValues* registry() const noexcept { return registry_; }

  /// Best upper bound. Accepts t = 0 as the recursion base.
  BigInt upper(const PackingParams& p);
  /// Every upper-bound method evaluated at p (not memoised).
  std::vector<Provenance> upper_methods(const PackingParams& p);
  /// Upper and lower bounds with full provenance.
  BoundResult evaluate(const PackingParams& p);

 private:
  BigInt compute_upper(const PackingParams& p, std::vector<Provenance>* log);

  const KnownValues* registry_;
  std::mutex mutex_;
  std::map<PackingParams, BigInt> memo_;
};

/// Lower bounds that need no construction: lambda distinct blocks, or every
/// block when the coverage constraint cannot bind.
BigInt trivial_lower(const PackingParams& p);

}  // namespace subpack
