#include <doctest.h>

#include <functional>

#include "oracles.hpp"
#include "subpack/constructions.hpp"
#include "subpack/oracle.hpp"
#include "subpack/qcalc.hpp"

using namespace subpack;

namespace {

// Smallest span dimension over all alpha-subsets, from member sets.
std::size_t brute_min_span(const PackingCode& code, std::size_t alpha) {
  const Field& f = code.field();
  std::vector<oracle::SpanSet> sets;
  for (const auto& b : code.blocks()) sets.push_back(oracle::span_set(b, f));
  std::size_t best = SIZE_MAX;
  std::function<void(std::size_t, std::size_t, const oracle::SpanSet&)> go =
      [&](std::size_t depth, std::size_t from, const oracle::SpanSet& acc) {
        if (depth == alpha) {
          best = std::min(best, oracle::log_q(acc.size(), f.order()));
          return;
        }
        for (std::size_t i = from; i < sets.size(); ++i)
          go(depth + 1, i + 1, oracle::span_union(f, acc, sets[i], code.ambient()));
      };
  go(0, 0, oracle::SpanSet{0});
  return best;
}

VerifyReport exhaustive_covering(const PackingCode& code, const CoveringParams& c) {
  CoveringCheck check;
  check.budget = 50'000'000;
  auto r = verify_covering(code, c.delta, c.alpha, check);
  REQUIRE_FALSE(r.probabilistic);
  return r;
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("lifted MRD translates have the predicted sizes") {
  for (std::uint64_t alpha : {2u, 3u}) {
    CoveringParams c{2, 4, 2, 2, alpha};
    auto code = construction_1(c);
    CHECK(code.size() == 4 * (alpha - 1));
    auto r = exhaustive_covering(code, c);
    CHECK(r.valid);
    CHECK(brute_min_span(code, alpha) >= 4);
    CHECK(r.min_span == brute_min_span(code, alpha));
  }
  // alpha = 5 uses every translate
  auto full = construction_1({2, 4, 2, 2, 5});
  CHECK(full.size() == 16);
  CHECK(exhaustive_covering(full, {2, 4, 2, 2, 5}).valid);
  CHECK_THROWS(construction_1({2, 4, 2, 2, 6}));
  CHECK_THROWS(construction_1({2, 6, 2, 2, 2}));
  CHECK_THROWS(construction_1({2, 4, 2, 1, 2}));
}

TEST_CASE("linking onto an inner code multiplies its size") {
  const CoveringParams c{2, 7, 3, 2, 2};
  auto inner = construction_1({2, 5, 3, 2, 2});
  REQUIRE(inner.size() == 8);
  auto code = construction_2(c, 2, inner);
  CHECK(code.size() == 64);
  auto r = exhaustive_covering(code, c);
  CHECK(r.valid);
  CHECK(r.subsets_checked == 64 * 63 / 2);
  CHECK(r.min_span == brute_min_span(code, 2));
  CHECK_THROWS(construction_2(c, 3, inner));
  // an inner code that is not 2-covering is rejected
  Field f(2);
  PackingCode bad(f, 5, 3, {enumerate_subspaces(f, 5, 3)[0], enumerate_subspaces(f, 5, 3)[1]});
  CHECK_THROWS_AS(construction_2(c, 2, bad), std::invalid_argument);
  CHECK_NOTHROW(construction_2(c, 2, bad, false));
}

TEST_CASE("linking with t >= k adds an appendix") {
  const CoveringParams c{2, 8, 2, 2, 3};
  auto plan = linkage_plan(c);
  CHECK(plan.value == 521);
  CHECK(plan.step == LinkageStep::linked_app);
  CHECK(plan.t == 2);
  auto code = build_covering_code(c);
  CHECK(code.size() == 521);
  CoveringCheck check;
  check.budget = 30'000'000;
  auto r = verify_covering(code, c.delta, c.alpha, check);
  CHECK_FALSE(r.probabilistic);
  CHECK(r.valid);

  // appendix must live in the trailing coordinates
  Field f(2);
  auto inner = build_covering_code({2, 6, 2, 2, 3});
  PackingCode misplaced(f, 8, 2, {enumerate_subspaces(f, 8, 2)[0]});
  CHECK_THROWS(construction_3(c, 2, inner, misplaced));
  CHECK_THROWS(construction_3({2, 7, 3, 2, 2}, 2, inner, misplaced));
}

TEST_CASE("linkage values") {
  CHECK(linkage_lower({2, 5, 3, 2, 2}) == 8);
  CHECK(linkage_lower({2, 7, 3, 2, 2}) == 64);
  CHECK(linkage_lower({2, 4, 2, 2, 3}) == 8);
  CHECK(linkage_lower({2, 6, 2, 2, 3}) == 65);
  CHECK(linkage_plan({2, 5, 3, 2, 2}).step == LinkageStep::lifted_mrd);
  CHECK(linkage_plan({2, 7, 3, 2, 2}).step == LinkageStep::linked);
  CHECK(linkage_plan({2, 5, 3, 1, 2}).step == LinkageStep::all_blocks);
  CHECK(linkage_plan({2, 4, 3, 2, 4}).value == 3);
  CHECK(linkage_plan({2, 4, 3, 2, 4}).step == LinkageStep::small);
  CHECK(packing_lower({2, 6, 2, 1, 2}) == 32);
  CHECK(packing_lower({2, 6, 4, 3, 2}) == 65);
  CHECK(packing_lower({2, 6, 3, 2, 2}) == 128);
  CHECK(packing_lower({2, 7, 5, 4, 2}) == 130);
  CHECK(packing_lower({2, 6, 5, 4, 2}) == 2);
  CHECK(to_string(LinkageStep::linked_app) == "linkage-appendix");
}

TEST_CASE("every built covering code has the planned size and verifies") {
  std::size_t built = 0, sampled = 0;
  for (unsigned q : {2u, 3u})
    for (unsigned n = 2; n <= (q == 2 ? 8u : 5u); ++n)
      for (unsigned k = 1; k < n; ++k)
        for (unsigned delta = 1; delta <= n - k; ++delta)
          for (std::uint64_t alpha = 2; alpha <= 4; ++alpha) {
            CoveringParams c{q, n, k, delta, alpha};
            const BigInt size = linkage_lower(c);
            if (size > 3000) continue;
            CAPTURE(describe(c));
            auto code = build_covering_code(c);
            REQUIRE(BigInt(code.size()) == size);
            CoveringCheck check;
            check.budget = 2'000'000;
            check.samples = 100'000;
            auto r = verify_covering(code, delta, alpha, check);
            CHECK(r.valid);
            sampled += r.probabilistic;
            ++built;
          }
  MESSAGE("covering codes built: " << built << ", sampled checks: " << sampled);
  CHECK_THROWS_AS(build_covering_code({2, 8, 4, 2, 2}, 100), std::length_error);
}

TEST_CASE("duality round trip") {
  for (unsigned n = 2; n <= 6; ++n)
    for (unsigned k = 1; k < n; ++k) {
      Field f(2);
      PackingCode all(f, n, k, enumerate_subspaces(f, n, k));
      auto back = dual_code(dual_code(all));
      CHECK(back.blocks() == all.blocks());
    }
  // a covering code dualises to a packing with the dual parameters
  for (unsigned n = 3; n <= 7; ++n)
    for (unsigned k = 1; k < n; ++k)
      for (unsigned delta = 1; delta <= n - k; ++delta)
        for (std::uint64_t alpha = 2; alpha <= 3; ++alpha) {
          CoveringParams c{2, n, k, delta, alpha};
          if (linkage_lower(c) > 3000) continue;
          CAPTURE(describe(c));
          auto dual = dual_code(build_covering_code(c));
          const auto p = dualize_covering(c);
          REQUIRE(dual.dim() == p.k);
          CHECK(verify_packing(dual, p.t, p.lambda).valid);
        }
}

TEST_CASE("packing codes reach packing_lower and verify") {
  for (unsigned n = 2; n <= 7; ++n)
    for (unsigned k = 1; k <= n; ++k)
      for (unsigned t = 1; t <= k; ++t)
        for (std::uint64_t lambda = 1; lambda <= 3; ++lambda) {
          PackingParams p{2, n, k, t, lambda};
          const BigInt target = packing_lower(p);
          if (target > 3000) continue;
          CAPTURE(describe(p));
          auto code = build_packing_code(p);
          CHECK(BigInt(code.size()) == target);
          CHECK(verify_packing(code, t, lambda).valid);
        }
}

TEST_CASE("first blocks follow the enumeration") {
  auto code = first_blocks({2, 4, 2, 2, 4});
  REQUIRE(code.size() == 3);
  const auto all = enumerate_subspaces(Field(2), 4, 2);
  CHECK(code.blocks() == std::vector<Subspace>(all.begin(), all.begin() + 3));
}

}  // TEST_SUITE
