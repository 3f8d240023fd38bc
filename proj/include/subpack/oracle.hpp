#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subpack/bounds.hpp"
#include "subpack/packing_code.hpp"
#include "subpack/params.hpp"
#include "subpack/qcalc.hpp"

namespace subpack {

enum class VerifyMode { packing, covering };

struct VerifyReport {
  VerifyMode mode = VerifyMode::packing;
  bool valid = true;
  /// Set when a covering check sampled subsets instead of enumerating them.
  bool probabilistic = false;
  std::size_t code_size = 0;

  // packing mode
  std::size_t t = 0;
  std::uint64_t lambda = 0;
  std::uint64_t max_coverage = 0;
  std::optional<Subspace> worst_subspace;
  /// histogram[i] = number of t-subspaces of F_q^n in exactly i blocks.
  std::vector<BigInt> histogram;

  // covering mode
  std::size_t delta = 0;
  std::uint64_t alpha = 0;
  std::size_t min_span = 0;
  std::vector<std::size_t> worst_subset;  // block indices
  std::uint64_t subsets_checked = 0;
  BigInt subsets_total;
  /// With sampling: a violating fraction at least this large would have been
  /// detected with probability 0.95.
  double detectable_fraction = 0.0;

  /// Multi-line human readable summary.
  std::string summary() const;
};

/// Counts, for every t-subspace of every block, the number of blocks that
/// contain it. Valid iff no count exceeds lambda.
VerifyReport verify_packing(const PackingCode& code, std::size_t t, std::uint64_t lambda);

struct CoveringCheck {
  /// Enumerate all alpha-subsets when there are at most this many.
  std::uint64_t budget = 10'000'000;
  /// Otherwise check this many uniformly sampled subsets.
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
};

/// Checks that every alpha blocks span at least k + delta dimensions.
VerifyReport verify_covering(const PackingCode& code, std::size_t delta, std::uint64_t alpha,
                             const CoveringCheck& check = {});

struct SearchOptions {
  /// Branch-and-bound nodes before giving up with complete = false.
  std::uint64_t node_budget = 20'000'000;
  /// Refuse parameter points with more candidate blocks than this.
  std::uint64_t max_candidates = 2000;
  /// Upper bounds for the cutoff; a registry-free engine is used when null.
  BoundEngine* engine = nullptr;
  std::uint64_t seed = 1;
  /// Local-search moves per restart when seeding the incumbent.
  std::uint64_t improve_iterations = 20'000;
  /// Tabu moves spent on each attempt to enlarge the incumbent by one block.
  std::uint64_t tabu_iterations = 20'000;
};

struct SearchResult {
  std::uint64_t value = 0;
  PackingCode witness{Field(2), 0, 0};
  /// True when value is proven maximal.
  bool complete = false;
  std::uint64_t nodes = 0;
  /// Upper bound used as cutoff.
  BigInt cutoff;
  std::string note;
};

/// Exact A_q(n,k,t;lambda) by branch and bound over all k-subspaces, using
/// the engine's upper bound as a cutoff. Throws std::length_error when
/// [n,k]_q exceeds options.max_candidates.
SearchResult exhaustive_max(const PackingParams& p, const SearchOptions& options = {});

/// Best of `passes` randomized first-fit passes, each followed by
/// `improve_iterations` drop-and-refill rounds that never shrink it. Every
/// result is an inextensible packing. Deterministic for a given seed.
PackingCode greedy_lower(const PackingParams& p, std::uint64_t seed, unsigned passes = 1,
                         std::uint64_t improve_iterations = 2000, std::uint64_t max_candidates = 1u << 20);

}  // namespace subpack
