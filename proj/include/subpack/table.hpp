#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subpack/bounds.hpp"
#include "subpack/known_values.hpp"

namespace subpack {

struct TableCell {
  BoundResult bounds;
  std::optional<KnownValue> fixture;

  /// Our upper bound is at least the fixture lower bound and our lower
  /// bound at most the fixture upper bound.
  bool consistent() const;
  /// Both intervals coincide.
  bool matches() const;
};

/// Cells for 2 <= k <= n-1 and 1 <= t <= k, row-major in k then t.
struct BoundTable {
  unsigned q = 2;
  unsigned n = 0;
  std::uint64_t lambda = 1;
  std::vector<TableCell> cells;

  const TableCell* find(unsigned k, unsigned t) const;
};

/// Evaluates every cell (in parallel). `fixtures` only feeds the comparison
/// columns; bounds come from `engine` alone.
BoundTable build_table(unsigned q, unsigned n, std::uint64_t lambda, BoundEngine& engine,
                       const KnownValues* fixtures = nullptr);

/// Grid of "lower-upper" cells (a single number when they agree) with
/// footnotes naming the method behind every bound. With compare, fixture
/// intervals are shown and disagreements are listed.
std::string render_table(const BoundTable& table, bool compare);

}  // namespace subpack
