#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "subpack/qcalc.hpp"
#include "subpack/rankmetric.hpp"

using namespace subpack;

namespace {

std::vector<Matrix> all_matrices(unsigned q, std::size_t k, std::size_t m) {
  std::vector<Matrix> out;
  const std::size_t cells = k * m;
  std::vector<unsigned> digits(cells, 0);
  while (true) {
    Matrix a(k, m);
    for (std::size_t i = 0; i < cells; ++i) a(i / m, i % m) = static_cast<Element>(digits[i]);
    out.push_back(a);
    std::size_t i = 0;
    while (i < cells && ++digits[i] == q) digits[i++] = 0;
    if (i == cells) break;
  }
  return out;
}

std::size_t brute_min_distance(const Field& f, const std::vector<Matrix>& code) {
  std::size_t best = SIZE_MAX;
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j)
      best = std::min(best, oracle::brute_rank(f, subtract(f, code[i], code[j])));
  return best;
}

}  // namespace

TEST_SUITE("rankmetric") {

TEST_CASE("extension fields are fields") {
  struct Case {
    unsigned q, degree;
  };
  for (auto [q, degree] : {Case{2, 1}, Case{2, 2}, Case{2, 3}, Case{2, 4}, Case{3, 2}, Case{4, 2}, Case{5, 2}}) {
    CAPTURE(q);
    CAPTURE(degree);
    Field base(q);
    ExtensionField ext(base, degree);
    REQUIRE(ext.size() == to_u64(ipow(q, degree)));
    std::vector<ExtensionField::Value> all;
    for (std::uint64_t i = 0; i < ext.size(); ++i) all.push_back(ext.from_index(i));
    CHECK(std::set<ExtensionField::Value>(all.begin(), all.end()).size() == all.size());
    const auto one = ext.from_index(1);
    for (const auto& a : all) {
      CHECK(ext.mul(a, one) == a);
      if (a == ext.zero()) continue;
      bool has_inverse = false;
      for (const auto& b : all) has_inverse |= ext.mul(a, b) == one;
      CHECK(has_inverse);
      // Frobenius is a^q and fixes exactly the base field
      auto p = one;
      for (unsigned i = 0; i < q; ++i) p = ext.mul(p, a);
      CHECK(ext.frobenius(a) == p);
      for (const auto& b : all) {
        CHECK(ext.mul(a, b) == ext.mul(b, a));
        CHECK(ext.frobenius(ext.add(a, b)) == ext.add(ext.frobenius(a), ext.frobenius(b)));
      }
    }
    std::size_t fixed = 0;
    for (const auto& a : all) fixed += ext.frobenius(a) == a;
    CHECK(fixed == q);
    if (degree > 1) CHECK(ext.basis_element(1) == ext.from_index(q));
  }
}

TEST_CASE("Gabidulin codes are linear MRD codes for all binary shapes up to 3x3") {
  Field f(2);
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t delta = 1; delta <= std::min(k, m); ++delta) {
        CAPTURE(k);
        CAPTURE(m);
        CAPTURE(delta);
        auto code = gabidulin(f, k, m, delta);
        const auto big = std::max(k, m), small = std::min(k, m);
        REQUIRE(BigInt(code.codewords.size()) == ipow(2, static_cast<unsigned>(big * (small - delta + 1))));
        std::set<Matrix> distinct(code.codewords.begin(), code.codewords.end());
        CHECK(distinct.size() == code.codewords.size());
        for (const auto& c : code.codewords) {
          CHECK(c.rows() == k);
          CHECK(c.cols() == m);
        }
        if (code.codewords.size() > 1) {
          CHECK(brute_min_distance(f, code.codewords) == delta);
          CHECK(min_rank_distance(f, code.codewords) == delta);
        }
        // linear: closed under addition and contains zero
        CHECK(distinct.count(Matrix(k, m)) == 1);
        for (std::size_t i = 0; i < code.codewords.size(); i += 3)
          for (std::size_t j = 0; j < code.codewords.size(); j += 5)
            CHECK(distinct.count(add(f, code.codewords[i], code.codewords[j])) == 1);
      }
}

TEST_CASE("no binary code beats the MRD size at small shapes") {
  // exhaustive clique search: 2x2 matrices, distance 2 admits at most 4 words
  Field f(2);
  auto all = all_matrices(2, 2, 2);
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    best = std::max(best, chosen.size());
    for (std::size_t i = from; i < all.size(); ++i) {
      bool ok = true;
      for (auto j : chosen) ok &= oracle::brute_rank(f, subtract(f, all[i], all[j])) >= 2;
      if (!ok) continue;
      chosen.push_back(i);
      grow(i + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  CHECK(best == gabidulin(f, 2, 2, 2).codewords.size());
}

TEST_CASE("Gabidulin codes over larger fields") {
  for (unsigned q : {3u, 4u}) {
    Field f(q);
    auto code = gabidulin(f, 2, 3, 2);
    CHECK(BigInt(code.codewords.size()) == ipow(q, 3));
    CHECK(min_rank_distance(f, code.codewords) == 2);
  }
}

TEST_CASE("translate families partition a distance delta-1 supercode") {
  Field f(2);
  for (std::size_t k = 2; k <= 3; ++k)
    for (std::size_t m = 2; m <= 3; ++m)
      for (std::size_t delta = 2; delta <= std::min(k, m); ++delta) {
        auto base = gabidulin(f, k, m, delta);
        const std::uint64_t max_alpha = to_u64(ipow(2, static_cast<unsigned>(std::max(k, m)))) + 1;
        for (std::uint64_t alpha = 2; alpha <= max_alpha; ++alpha) {
          CAPTURE(k);
          CAPTURE(m);
          CAPTURE(delta);
          CAPTURE(alpha);
          auto fam = translate_family(base, alpha);
          REQUIRE(fam.count() == alpha - 1);
          std::set<Matrix> seen;
          for (std::size_t i = 0; i < fam.count(); ++i) {
            auto tr = fam.translate(i);
            CHECK(tr.size() == base.codewords.size());
            CHECK(brute_min_distance(f, tr) >= delta);
            for (auto& w : tr) CHECK(seen.insert(w).second);
          }
          auto uni = fam.union_codewords();
          CHECK(uni.size() == seen.size());
          const std::size_t expect = alpha == 2 ? delta : delta - 1;
          CHECK(fam.union_distance == expect);
          if (uni.size() > 1) CHECK(min_rank_distance(f, uni) == expect);
        }
        CHECK_THROWS(translate_family(base, max_alpha + 1));
        CHECK_THROWS(translate_family(base, 1));
      }
  CHECK_THROWS(translate_family(gabidulin(f, 2, 2, 1), 2));
  // the full space of 2x2 binary matrices from five translates
  auto fam = translate_family(gabidulin(f, 2, 2, 2), 5);
  CHECK(fam.union_codewords().size() == 16);
}

TEST_CASE("rank distance and lifting") {
  Field f(2);
  auto all = all_matrices(2, 2, 3);
  for (std::size_t i = 0; i < all.size(); i += 3)
    for (std::size_t j = 0; j < all.size(); j += 5) {
      const auto d = rank_distance(f, all[i], all[j]);
      CHECK(d == oracle::brute_rank(f, subtract(f, all[i], all[j])));
      auto u = lift(f, all[i]), v = lift(f, all[j]);
      CHECK(u.dim() == 2);
      CHECK(u.ambient() == 5);
      CHECK(subspace_distance(f, u, v) == 2 * d);
      CHECK(u.pivots() == std::vector<std::size_t>{0, 1});
    }
  Field f3(3);
  auto a = Matrix(2, 2, {1, 2, 0, 1});
  CHECK(lift(f3, a) == Subspace::span_of(f3, Matrix(2, 4, {1, 0, 1, 2, 0, 1, 0, 1})));
}

}  // TEST_SUITE
