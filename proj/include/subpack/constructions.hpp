#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "subpack/packing_code.hpp"
#include "subpack/params.hpp"
#include "subpack/qcalc.hpp"

namespace subpack {

/// Which rule realises the best linkage value for a covering point.
enum class LinkageStep {
  empty,       // k > n
  all_blocks,  // delta = 1: any alpha distinct blocks already span k+1
  small,       // n < k + delta: at most alpha - 1 blocks
  trivial,     // any alpha - 1 blocks
  lifted_mrd,  // lifted translates of a Gabidulin code (n < k + 2 delta)
  linked,      // inner code in F_q^{n-t} with translates appended (t < k)
  linked_app,  // the same with t >= k, plus an appendix in the last t+k-delta coordinates
};

std::string to_string(LinkageStep step);

struct LinkagePlan {
  BigInt value;
  LinkageStep step = LinkageStep::trivial;
  unsigned t = 0;  // split point for linked / linked_app
};

/// Best recursive linkage lower bound on B_q(n,k,delta;alpha) with the
/// step that achieves it. A step is admissible only when its translate
/// family exists, i.e. alpha - 1 <= q^{max(k, m)} for the k x m MRD code used.
LinkagePlan linkage_plan(const CoveringParams& c);
BigInt linkage_lower(const CoveringParams& c);

/// Lower bound on A_q(n,k,t;lambda): the trivial bound or the linkage bound
/// of the dual covering parameters, whichever is larger.
BigInt packing_lower(const PackingParams& p);

/// Lifts alpha - 1 translates of a Gabidulin k x (n-k) code.
/// Requires k + delta <= n < k + 2 delta and delta >= 2.
PackingCode construction_1(const CoveringParams& c);

/// Appends the translate union of a Gabidulin k x t code to every block of
/// `inner` (a covering code in F_q^{n-t}). Requires n >= k + 2 delta,
/// delta <= t <= n-k-delta and t < k. With verify_inner the inner code is
/// checked exhaustively and rejected if it is not an alpha-covering code.
PackingCode construction_2(const CoveringParams& c, unsigned t, const PackingCode& inner,
                           bool verify_inner = true);

/// As construction_2 for k <= t <= n-k-delta, followed by the union with
/// `appendix`, whose blocks live in F_q^n with zeros in the first
/// n - (t + k - delta) coordinates.
PackingCode construction_3(const CoveringParams& c, unsigned t, const PackingCode& inner,
                           const PackingCode& appendix, bool verify_inner = true);

/// min(alpha - 1, [n,k]_q) blocks taken in enumeration order.
PackingCode first_blocks(const CoveringParams& c);

/// Code of size linkage_lower(c), built by following linkage_plan
/// recursively. Throws std::length_error above max_blocks.
PackingCode build_covering_code(const CoveringParams& c, std::uint64_t max_blocks = 1u << 20);

/// Code of size packing_lower(p): dual of build_covering_code on the dual
/// parameters, or every block when the coverage constraint cannot bind.
PackingCode build_packing_code(const PackingParams& p, std::uint64_t max_blocks = 1u << 20);

}  // namespace subpack
