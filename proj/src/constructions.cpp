#include "subpack/constructions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "subpack/bounds.hpp"
#include "subpack/oracle.hpp"
#include "subpack/rankmetric.hpp"

namespace subpack {

std::string to_string(LinkageStep step) {
  switch (step) {
    case LinkageStep::empty: return "empty";
    case LinkageStep::all_blocks: return "all-blocks";
    case LinkageStep::small: return "small-ambient";
    case LinkageStep::trivial: return "trivial";
    case LinkageStep::lifted_mrd: return "lifted-mrd";
    case LinkageStep::linked: return "linkage";
    case LinkageStep::linked_app: return "linkage-appendix";
  }
  return "?";
}

namespace {

bool translates_available(unsigned q, unsigned long_side, std::uint64_t alpha) {
  return BigInt(alpha - 1) <= ipow(q, long_side);
}

LinkagePlan compute_plan(const CoveringParams& c);

LinkagePlan cached_plan(const CoveringParams& c) {
  static std::mutex mutex;
  static std::map<CoveringParams, LinkagePlan> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(c); it != memo.end()) return it->second;
  }
  LinkagePlan plan = compute_plan(c);
  std::lock_guard lock(mutex);
  memo.emplace(c, plan);
  return plan;
}

LinkagePlan compute_plan(const CoveringParams& c) {
  const unsigned q = c.q, n = c.n, k = c.k, d = c.delta;
  const BigInt alpha1 = BigInt(c.alpha - 1);
  if (k > n) return {0, LinkageStep::empty, 0};
  const BigInt all = gaussian_binomial(n, k, q);
  if (n < k + d) return {std::min(alpha1, all), LinkageStep::small, 0};
  if (d == 1) return {all, LinkageStep::all_blocks, 0};

  LinkagePlan best{std::min(alpha1, all), LinkageStep::trivial, 0};
  if (d > k) return best;
  auto offer = [&](BigInt v, LinkageStep step, unsigned t) {
    if (v > best.value) best = {std::move(v), step, t};
  };

  if (n < k + 2 * d) {
    const unsigned hi = std::max(k, n - k), lo = std::min(k, n - k);
    if (translates_available(q, hi, c.alpha)) offer(alpha1 * ipow(q, hi * (lo - d + 1)), LinkageStep::lifted_mrd, 0);
    return best;
  }
  for (unsigned t = d; t + k + d <= n; ++t) {
    const BigInt inner = cached_plan({q, n - t, k, d, c.alpha}).value;
    if (t < k) {
      if (translates_available(q, k, c.alpha)) offer(alpha1 * ipow(q, k * (t - d + 1)) * inner, LinkageStep::linked, t);
    } else if (translates_available(q, t, c.alpha)) {
      const BigInt app = cached_plan({q, t + k - d, k, d, c.alpha}).value;
      offer(alpha1 * ipow(q, t * (k - d + 1)) * inner + app, LinkageStep::linked_app, t);
    }
  }
  return best;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_size(const BigInt& size, std::uint64_t max_blocks, const std::string& what) {
  if (size > max_blocks)
    throw std::length_error(what + " would have " + size.str() + " blocks (limit " + std::to_string(max_blocks) + ")");
}

std::vector<Matrix> translate_union(const Field& f, std::size_t k, std::size_t m, std::size_t delta,
                                    std::uint64_t alpha) {
  return translate_family(gabidulin(f, k, m, delta), alpha).union_codewords();
}

PackingCode link(const CoveringParams& c, unsigned t, const PackingCode& inner, bool verify_inner) {
  const Field f(c.q);
  require(inner.field() == f && inner.ambient() == c.n - t && inner.dim() == c.k,
          "inner code must consist of " + std::to_string(c.k) + "-subspaces of F_q^" + std::to_string(c.n - t));
  if (verify_inner) {
    const auto report = verify_covering(inner, c.delta, c.alpha);
    require(report.valid, "inner code is not an alpha-covering code: " + report.summary());
  }
  const auto matrices = translate_union(f, c.k, t, c.delta, c.alpha);
  PackingCode out(f, c.n, c.k);
  for (const auto& block : inner.blocks())
    for (const auto& a : matrices) out.add(Subspace::span_of(f, hstack(block.basis(), a)));
  return out;
}

void check_link_params(const CoveringParams& c, unsigned t) {
  c.validate();
  require(c.delta >= 2 && c.delta <= c.k, "linkage requires 2 <= delta <= k");
  require(c.n >= c.k + 2 * c.delta, "linkage requires n >= k + 2 delta");
  require(t >= c.delta && t + c.k + c.delta <= c.n, "linkage requires delta <= t <= n - k - delta");
  require(translates_available(c.q, std::max(c.k, t), c.alpha), "alpha - 1 exceeds the available translates");
}

}  // namespace

LinkagePlan linkage_plan(const CoveringParams& c) {
  c.validate();
  return cached_plan(c);
}

BigInt linkage_lower(const CoveringParams& c) { return linkage_plan(c).value; }

BigInt packing_lower(const PackingParams& p) {
  p.validate();
  const BigInt trivial = trivial_lower(p);
  if (p.k == p.n || p.t == p.k || !p.nontrivial()) return trivial;
  return std::max(trivial, linkage_lower(dualize_packing(p)));
}

PackingCode construction_1(const CoveringParams& c) {
  c.validate();
  require(c.delta >= 2, "lifted MRD construction is not applicable for delta = 1");
  require(c.delta <= c.k && c.k + c.delta <= c.n && c.n < c.k + 2 * c.delta,
          "lifted MRD construction requires k + delta <= n < k + 2 delta and delta <= k");
  const unsigned m = c.n - c.k;
  require(translates_available(c.q, std::max(c.k, m), c.alpha), "alpha - 1 exceeds the available translates");
  const Field f(c.q);
  PackingCode out(f, c.n, c.k);
  for (const auto& a : translate_union(f, c.k, m, c.delta, c.alpha)) out.add(lift(f, a));
  return out;
}

PackingCode construction_2(const CoveringParams& c, unsigned t, const PackingCode& inner, bool verify_inner) {
  check_link_params(c, t);
  require(t < c.k, "construction 2 requires t < k");
  return link(c, t, inner, verify_inner);
}

PackingCode construction_3(const CoveringParams& c, unsigned t, const PackingCode& inner,
                           const PackingCode& appendix, bool verify_inner) {
  check_link_params(c, t);
  require(t >= c.k, "construction 3 requires t >= k");
  const unsigned zeros = c.n - (t + c.k - c.delta);
  require(appendix.ambient() == c.n && appendix.dim() == c.k, "appendix blocks must be k-subspaces of F_q^n");
  for (const auto& block : appendix.blocks())
    for (std::size_t r = 0; r < block.dim(); ++r)
      for (std::size_t j = 0; j < zeros; ++j)
        require(block.basis()(r, j) == 0,
                "appendix block is not supported on the last " + std::to_string(t + c.k - c.delta) + " coordinates");
  if (verify_inner) {
    const auto report = verify_covering(appendix, c.delta, c.alpha);
    require(report.valid, "appendix is not an alpha-covering code: " + report.summary());
  }
  PackingCode out = link(c, t, inner, verify_inner);
  for (const auto& block : appendix.blocks()) out.add(block);
  return out;
}

PackingCode first_blocks(const CoveringParams& c) {
  const Field f(c.q);
  PackingCode out(f, c.n, c.k);
  if (c.k > c.n) return out;
  const std::uint64_t want = c.alpha - 1;
  struct Done {};
  try {
    for_each_subspace(f, c.n, c.k, [&](const Subspace& s) {
      if (out.size() >= want) throw Done{};
      out.add(s);
    });
  } catch (const Done&) {
  }
  return out;
}

PackingCode build_covering_code(const CoveringParams& c, std::uint64_t max_blocks) {
  const auto plan = linkage_plan(c);
  check_size(plan.value, max_blocks, describe(c) + " code");
  const Field f(c.q);
  switch (plan.step) {
    case LinkageStep::empty:
      return PackingCode(f, c.n, c.k);
    case LinkageStep::all_blocks:
      return PackingCode(f, c.n, c.k, enumerate_subspaces(f, c.n, c.k));
    case LinkageStep::small:
    case LinkageStep::trivial:
      return first_blocks(c);
    case LinkageStep::lifted_mrd:
      return construction_1(c);
    case LinkageStep::linked:
      return construction_2(c, plan.t, build_covering_code({c.q, c.n - plan.t, c.k, c.delta, c.alpha}, max_blocks),
                            false);
    case LinkageStep::linked_app: {
      const unsigned app_n = plan.t + c.k - c.delta;
      const auto app = build_covering_code({c.q, app_n, c.k, c.delta, c.alpha}, max_blocks);
      PackingCode embedded(f, c.n, c.k);
      for (const auto& b : app.blocks()) embedded.add(embed_with_leading_zeros(f, b, c.n - app_n));
      return construction_3(c, plan.t, build_covering_code({c.q, c.n - plan.t, c.k, c.delta, c.alpha}, max_blocks),
                            embedded, false);
    }
  }
  throw std::logic_error("unhandled linkage step");
}

PackingCode build_packing_code(const PackingParams& p, std::uint64_t max_blocks) {
  const BigInt target = packing_lower(p);
  check_size(target, max_blocks, describe(p) + " code");
  const Field f(p.q);
  if (p.t == p.k || !p.nontrivial()) return PackingCode(f, p.n, p.k, enumerate_subspaces(f, p.n, p.k));
  if (p.k == p.n) return PackingCode(f, p.n, p.k, enumerate_subspaces(f, p.n, p.k));
  return dual_code(build_covering_code(dualize_packing(p), max_blocks));
}

}  // namespace subpack
