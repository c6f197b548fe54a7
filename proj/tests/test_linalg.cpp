#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "sho/linalg.hpp"

using namespace sho;

namespace {

SparseVec sv(Coord dim, std::vector<std::pair<Coord, Scalar>> e) {
  SparseVec v;
  v.dim = dim;
  v.entries = std::move(e);
  return v;
}

}  // namespace

TEST_CASE("echelonize basics") {
  PrimeField F(3);
  // {e1+e2, e2} -> {e1, e2}
  Subspace S = echelonize({sv(3, {{0, 1}, {1, 1}}), sv(3, {{1, 1}})}, 3, F);
  CHECK(S.rank() == 2);
  CHECK(S.pivots() == std::vector<Coord>{0, 1});
  CHECK(S.basis()[0].entries == std::vector<std::pair<Coord, Scalar>>{{0, 1}});
  CHECK(S.basis()[1].entries == std::vector<std::pair<Coord, Scalar>>{{1, 1}});
  // dependent rows collapse and normalize
  Subspace D = echelonize({sv(3, {{1, 2}, {2, 1}}), sv(3, {{1, 1}, {2, 2}})}, 3, F);
  CHECK(D.rank() == 1);
  CHECK(D.basis()[0].entries == std::vector<std::pair<Coord, Scalar>>{{1, 1}, {2, 2}});
  // empty input
  CHECK(echelonize({}, 5, F).rank() == 0);
}

TEST_CASE("subspace operations") {
  PrimeField F(3);
  Subspace A = echelonize({sv(3, {{0, 1}}), sv(3, {{1, 1}})}, 3, F);
  Subspace B = echelonize({sv(3, {{2, 1}})}, 3, F);
  CHECK(subspace_intersect(A, A, F) == A);
  CHECK(subspace_intersect(A, B, F).rank() == 0);
  CHECK(subspace_sum(A, B, F).rank() == 3);
  CHECK(membership(sv(3, {{0, 1}, {1, 2}}), A, F));
  CHECK(!membership(sv(3, {{0, 1}, {2, 2}}), A, F));
  CHECK_THROWS_AS(subspace_sum(A, echelonize({}, 4, F), F), std::invalid_argument);

  // diagonal-vs-axes intersection needs actual elimination
  Subspace diag = echelonize({sv(2, {{0, 1}, {1, 1}})}, 2, F);
  Subspace x_axis = echelonize({sv(2, {{0, 1}})}, 2, F);
  CHECK(subspace_intersect(diag, x_axis, F).rank() == 0);
}

TEST_CASE("coefficients_of") {
  PrimeField F(5);
  Subspace A = echelonize({sv(4, {{0, 1}, {2, 3}}), sv(4, {{1, 1}, {2, 4}})}, 4, F);
  // v = 2*row0 + 3*row1; third coord 2*3 + 3*4 = 18 = 3 mod 5
  SparseVec v = sv(4, {{0, 2}, {1, 3}, {2, 3}});
  auto coeffs = A.coefficients_of(v, F);
  REQUIRE(coeffs);
  CHECK((*coeffs)[0] == 2);
  CHECK((*coeffs)[1] == 3);
  CHECK(!A.coefficients_of(sv(4, {{3, 1}}), F));
}

TEST_CASE("nullspace examples") {
  PrimeField F(3);
  // zero rows -> full space
  {
    std::size_t i = 0;
    auto stream = [&]() -> std::optional<SparseVec> {
      if (i++ < 3) return sv(2, {});
      return std::nullopt;
    };
    CHECK(nullspace(stream, 2, F).rank() == 2);
  }
  // identity -> zero space
  {
    std::size_t i = 0;
    auto stream = [&]() -> std::optional<SparseVec> {
      if (i < 2) return sv(2, {{Coord(i++), 1}});
      return std::nullopt;
    };
    CHECK(nullspace(stream, 2, F).rank() == 0);
  }
  // x1 + x2 = 0 -> span{(1,-1)}
  {
    bool done = false;
    auto stream = [&]() -> std::optional<SparseVec> {
      if (done) return std::nullopt;
      done = true;
      return sv(2, {{0, 1}, {1, 1}});
    };
    Subspace K = nullspace(stream, 2, F);
    REQUIRE(K.rank() == 1);
    CHECK(K.basis()[0].entries == std::vector<std::pair<Coord, Scalar>>{{0, 1}, {1, 2}});
  }
  // out-of-range coordinate
  {
    bool done = false;
    auto stream = [&]() -> std::optional<SparseVec> {
      if (done) return std::nullopt;
      done = true;
      return sv(2, {{5, 1}});
    };
    CHECK_THROWS_AS(nullspace(stream, 2, F), std::out_of_range);
  }
}

namespace {

std::vector<SparseVec> random_sparse_rows(std::mt19937_64& rng, Coord rows, Coord cols, Scalar p,
                                          double density) {
  std::vector<SparseVec> out;
  for (Coord i = 0; i < rows; ++i) {
    std::vector<std::pair<Coord, Scalar>> raw;
    for (Coord c = 0; c < cols; ++c)
      if (double(rng() % 1000) < density * 1000)
        raw.emplace_back(c, 1 + Scalar(rng() % (p - 1)));
    out.push_back(make_sparse(cols, std::move(raw), PrimeField(p)));
  }
  return out;
}

}  // namespace

TEST_CASE("rank-nullity against the dense fallback on random sparse matrices") {
  for (Scalar p : {3u, 5u}) {
    PrimeField F(p);
    std::mt19937_64 rng(p * 31);
    for (int trial = 0; trial < 6; ++trial) {
      const Coord rows = 100 + Coord(rng() % 100), cols = 100 + Coord(rng() % 100);
      auto mat = random_sparse_rows(rng, rows, cols, p, 0.05);
      Eliminator e(cols, F);
      DenseMatrix dm(cols, F);
      for (const auto& r : mat) {
        e.add_row(r);
        dm.add_row(r);
      }
      Subspace K = e.kernel();
      CHECK(std::uint64_t(K.rank()) + e.rank() == cols);
      // sparse and dense paths agree exactly
      CHECK(dm.row_space() == e.row_space());
      CHECK(dm.kernel() == K);
      // kernel vectors really annihilate every row
      for (const auto& kv : K.basis())
        for (const auto& r : mat) {
          std::int64_t acc = 0;
          for (const auto& [c, v] : r.entries) acc += std::int64_t(v) * kv.at(c);
          CHECK(acc % p == 0);
        }
    }
  }
}

TEST_CASE("result is insensitive to row order") {
  PrimeField F(3);
  std::mt19937_64 rng(99);
  auto mat = random_sparse_rows(rng, 60, 50, 3, 0.08);
  Eliminator ref(50, F);
  for (const auto& r : mat) ref.add_row(r);
  Subspace K0 = ref.kernel();
  Subspace R0 = ref.row_space();
  for (int shuffle = 0; shuffle < 50; ++shuffle) {
    auto perm = mat;
    std::shuffle(perm.begin(), perm.end(), rng);
    Eliminator e(50, F);
    for (const auto& r : perm) e.add_row(r);
    REQUIRE(e.kernel() == K0);
    REQUIRE(e.row_space() == R0);
  }
}

TEST_CASE("kernel with restricted active columns") {
  PrimeField F(3);
  Eliminator e(4, F);
  e.add_row(sv(4, {{0, 1}, {1, 1}}));
  // active = {0,1,2}: coordinate 3 is pinned to zero rather than free
  std::vector<Coord> active{0, 1, 2};
  Subspace K = e.kernel(&active);
  CHECK(K.rank() == 2);
  for (const auto& kv : K.basis()) CHECK(kv.at(3) == 0);
}

TEST_CASE("dense fallback bound") {
  PrimeField F(3);
  CHECK_THROWS_AS(DenseMatrix(2001, F), std::invalid_argument);
}
