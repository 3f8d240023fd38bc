#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "subpack/codefile.hpp"
#include "subpack/field.hpp"
#include "subpack/matrix.hpp"
#include "subpack/packing_code.hpp"
#include "subpack/qcalc.hpp"
#include "subpack/subspace.hpp"

using namespace subpack;

namespace {

Matrix random_matrix(std::mt19937_64& rng, unsigned q, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<Element>(rng() % q);
  return m;
}

// Replaces row i by a*row_i + b*row_j with a != 0, then swaps two rows.
Matrix scramble(const Field& f, std::mt19937_64& rng, Matrix m) {
  const unsigned q = f.order();
  for (int step = 0; step < 8 && m.rows() > 1; ++step) {
    std::size_t i = rng() % m.rows(), j = rng() % m.rows();
    if (i == j) continue;
    Element a = static_cast<Element>(1 + rng() % (q - 1)), b = static_cast<Element>(rng() % q);
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = f.add(f.mul(a, m(i, c)), f.mul(b, m(j, c)));
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
  }
  return m;
}

bool is_rref(const Matrix& m, std::size_t rank) {
  std::size_t last = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t c = 0;
    while (c < m.cols() && m(r, c) == 0) ++c;
    if (r >= rank) {
      if (c != m.cols()) return false;
      continue;
    }
    if (c == m.cols() || m(r, c) != 1) return false;
    if (r > 0 && c <= last) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, c) != 0) return false;
    last = c;
  }
  return true;
}

}  // namespace

TEST_SUITE("gf_core") {

TEST_CASE("field axioms hold exhaustively for small orders") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 16u, 25u, 27u, 32u}) {
    CAPTURE(q);
    Field f(q);
    for (unsigned a = 0; a < q; ++a) {
      const auto ea = static_cast<Element>(a);
      CHECK(f.add(ea, 0) == ea);
      CHECK(f.mul(ea, 1) == ea);
      CHECK(f.add(ea, f.neg(ea)) == 0);
      if (a) CHECK(f.mul(ea, f.inv(ea)) == 1);
      for (unsigned b = 0; b < q; ++b) {
        const auto eb = static_cast<Element>(b);
        REQUIRE(f.add(ea, eb) == f.add(eb, ea));
        REQUIRE(f.mul(ea, eb) == f.mul(eb, ea));
        REQUIRE(f.sub(f.add(ea, eb), eb) == ea);
        if (a && b) REQUIRE(f.mul(ea, eb) != 0);
        for (unsigned c = 0; c < q; ++c) {
          const auto ec = static_cast<Element>(c);
          REQUIRE(f.add(f.add(ea, eb), ec) == f.add(ea, f.add(eb, ec)));
          REQUIRE(f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec)));
          REQUIRE(f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec)));
        }
      }
    }
  }
}

TEST_CASE("larger fields have a cyclic multiplicative group of the right order") {
  for (unsigned q : {49u, 64u, 81u, 121u, 125u, 128u, 169u, 243u, 256u}) {
    CAPTURE(q);
    Field f(q);
    std::size_t best = 0;
    for (unsigned g = 2; g < q && best != q - 1; ++g) {
      Element x = static_cast<Element>(g);
      std::size_t order = 1;
      while (x != 1) {
        x = f.mul(x, static_cast<Element>(g));
        ++order;
      }
      best = std::max(best, order);
    }
    CHECK(best == q - 1);
    // characteristic: adding 1 to itself p times gives 0
    Element s = 0;
    for (unsigned i = 0; i < f.characteristic(); ++i) s = f.add(s, 1);
    CHECK(s == 0);
  }
}

TEST_CASE("unsupported orders are rejected") {
  for (unsigned q : {0u, 1u, 6u, 10u, 12u, 100u, 257u, 512u}) {
    CAPTURE(q);
    CHECK_THROWS_AS(Field{q}, std::invalid_argument);
  }
  CHECK(Field(4).modulus_string() == "x^2+x+1");
  CHECK(Field(7).modulus_string() == "prime");
}

TEST_CASE("rref is idempotent, canonical and agrees with span size") {
  std::mt19937_64 rng(7);
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    Field f(q);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
      Matrix m = random_matrix(rng, q, rows, cols);
      auto r1 = rref(f, m);
      CAPTURE(q);
      REQUIRE(is_rref(r1.reduced, r1.rank));
      CHECK(r1.rank == oracle::brute_rank(f, m));
      CHECK(rank(f, m) == r1.rank);
      auto r2 = rref(f, r1.reduced);
      CHECK(r2.reduced == r1.reduced);
      CHECK(r2.pivots == r1.pivots);
      // same row space gives the same reduced form
      auto r3 = rref(f, scramble(f, rng, m));
      CHECK(r3.reduced == r1.reduced);
      CHECK(oracle::span_set(f, r1.reduced) == oracle::span_set(f, m));
    }
  }
}

TEST_CASE("packed binary kernel matches the generic kernel") {
  std::mt19937_64 rng(11);
  Field f(2);
  for (int trial = 0; trial < 300; ++trial) {
    Matrix m = random_matrix(rng, 2, 1 + rng() % 12, 1 + rng() % 64);
    auto a = detail::rref_generic(f, m);
    auto b = detail::rref_packed_f2(m);
    REQUIRE(a.reduced == b.reduced);
    CHECK(a.rank == b.rank);
    CHECK(a.pivots == b.pivots);
  }
  Matrix wide(2, 65);
  CHECK_THROWS(detail::rref_packed_f2(wide));
  CHECK(rref(f, wide).rank == 0);
}

TEST_CASE("echelon basis membership matches span sets") {
  std::mt19937_64 rng(3);
  for (unsigned q : {2u, 3u, 4u}) {
    Field f(q);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + rng() % 3;
      Matrix m = random_matrix(rng, q, 1 + rng() % 3, n);
      EchelonBasis b(f, n);
      b.insert_rows(m);
      const auto members = oracle::span_set(f, m);
      std::uint32_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= q;
      for (std::uint32_t x = 0; x < total; ++x) {
        const auto v = oracle::decode(x, q, n);
        CHECK(b.contains(v) == std::binary_search(members.begin(), members.end(), x));
      }
    }
  }
}

TEST_CASE("enumeration lists each subspace once, in colex pivot order") {
  struct Case {
    unsigned q;
    std::size_t n, k;
  };
  for (auto [q, n, k] : {Case{2, 4, 2}, Case{2, 5, 2}, Case{2, 5, 3}, Case{2, 4, 1}, Case{3, 3, 2},
                         Case{3, 4, 2}, Case{4, 3, 1}, Case{4, 3, 2}, Case{2, 3, 3}, Case{2, 3, 0}}) {
    CAPTURE(q);
    CAPTURE(n);
    CAPTURE(k);
    Field f(q);
    auto list = enumerate_subspaces(f, n, k);
    CHECK(BigInt(list.size()) == gaussian_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k), q));
    std::set<oracle::SpanSet> seen;
    for (const auto& s : list) {
      CHECK(s.dim() == k);
      CHECK(s.ambient() == n);
      CHECK(Subspace::span_of(f, s.basis()) == s);
      seen.insert(oracle::span_set(s, f));
    }
    CHECK(seen.size() == list.size());
    CHECK(seen == oracle::grassmannian(f, n, k));
    if (k > 0) {
      // first block is spanned by the first k unit vectors
      Matrix id(k, n);
      for (std::size_t i = 0; i < k; ++i) id(i, i) = 1;
      CHECK(list.front().basis() == id);
      // pivot sets never decrease in colex order
      auto colex_key = [](const std::vector<std::size_t>& p) { return std::vector<std::size_t>(p.rbegin(), p.rend()); };
      for (std::size_t i = 1; i < list.size(); ++i)
        CHECK(colex_key(list[i - 1].pivots()) <= colex_key(list[i].pivots()));
    }
  }
  CHECK_THROWS(enumerate_subspaces(Field(2), 2, 3));
}

TEST_CASE("subspaces of a block are exactly the contained subspaces") {
  Field f(2);
  auto blocks = enumerate_subspaces(f, 5, 3);
  auto lines = enumerate_subspaces(f, 5, 2);
  for (std::size_t i = 0; i < blocks.size(); i += 17) {
    const auto& u = blocks[i];
    auto subs = subspaces_of(f, u, 2);
    CHECK(subs.size() == 7);
    std::set<Subspace> inside(subs.begin(), subs.end());
    CHECK(inside.size() == 7);
    const auto su = oracle::span_set(u, f);
    for (const auto& l : lines) {
      const bool brute = oracle::subset_of(oracle::span_set(l, f), su);
      CHECK(brute == (inside.count(l) == 1));
      CHECK(brute == u.contains(f, l));
    }
  }
}

TEST_CASE("distance, sums and complements agree with brute force") {
  for (unsigned q : {2u, 3u}) {
    Field f(q);
    const std::size_t n = q == 2 ? 5 : 4;
    auto a = enumerate_subspaces(f, n, 2);
    auto b = enumerate_subspaces(f, n, q == 2 ? 3 : 2);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& u = a[rng() % a.size()];
      const auto& v = b[rng() % b.size()];
      const auto joined = oracle::span_union(f, oracle::span_set(u, f), oracle::span_set(v, f), n);
      const std::size_t d = oracle::log_q(joined.size(), q);
      const Subspace parts[] = {u, v};
      CHECK(span_dim(f, parts) == d);
      CHECK(oracle::span_set(sum(f, parts), f) == joined);
      CHECK(subspace_distance(f, u, v) == 2 * d - u.dim() - v.dim());
      CHECK(subspace_distance(f, u, v) == subspace_distance(f, v, u));
    }
    for (std::size_t k = 0; k <= n; ++k) {
      for (const auto& u : enumerate_subspaces(f, n, k)) {
        auto perp = orthogonal_complement(f, u);
        REQUIRE(perp.dim() == n - k);
        CHECK(orthogonal_complement(f, perp) == u);
        for (std::size_t i = 0; i < u.dim(); ++i)
          for (std::size_t j = 0; j < perp.dim(); ++j) {
            Element dot = 0;
            for (std::size_t c = 0; c < n; ++c) dot = f.add(dot, f.mul(u.basis()(i, c), perp.basis()(j, c)));
            CHECK(dot == 0);
          }
      }
    }
  }
}

TEST_CASE("from_rref rejects non-canonical input") {
  Field f(2);
  Matrix m(2, 3, {1, 1, 0, 0, 1, 1});
  CHECK_THROWS_AS(Subspace::from_rref(f, m), std::invalid_argument);
  Matrix ok(2, 3, {1, 0, 1, 0, 1, 1});
  CHECK(Subspace::from_rref(f, ok).basis() == ok);
  CHECK(embed_with_leading_zeros(f, Subspace::from_rref(f, ok), 2).basis() == Matrix(2, 5, {0, 0, 1, 0, 1, 0, 0, 0, 1, 1}));
}

TEST_CASE("code files round-trip and reject malformed input") {
  Field f(3);
  auto all = enumerate_subspaces(f, 4, 2);
  PackingCode code(f, 4, 2, {all[0], all[5], all[39]});
  std::stringstream buf;
  write_code(buf, code);
  auto back = read_code(buf);
  CHECK(back.blocks() == code.blocks());
  CHECK(back.field().order() == 3);

  std::istringstream dup("2 3 1 2\n100\n\n100\n");
  CHECK_THROWS_AS(read_code(dup), std::invalid_argument);
  std::istringstream deficient("2 3 2 1\n110\n110\n");
  CHECK_THROWS_AS(read_code(deficient), std::invalid_argument);
  std::istringstream count("2 3 1 2\n100\n");
  CHECK_THROWS_AS(read_code(count), std::invalid_argument);
  std::istringstream digit("2 3 1 1\n120\n");
  CHECK_THROWS_AS(read_code(digit), std::invalid_argument);
  // generator matrices are canonicalised; comments are skipped
  std::istringstream gen("# two lines\n2 3 2 1\n110\n011\n");
  auto g = read_code(gen);
  CHECK(g.blocks().front().basis() == Matrix(2, 3, {1, 0, 1, 0, 1, 1}));
}

}  // TEST_SUITE
