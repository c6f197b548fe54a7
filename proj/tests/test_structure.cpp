#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "sho/structure.hpp"

using namespace sho;

namespace {

struct Built {
  AlgebraContext ctx;
  AlgebraChain chain;
  StructureTensor tensor;
  Built(std::uint32_t n, Scalar p, MultiIndex t)
      : ctx(n, p, std::move(t)), chain(build_chain(ctx)), tensor(structure_constants(chain)) {}
};

SparseVec unit(std::uint32_t d, std::uint32_t k) {
  SparseVec v;
  v.dim = d;
  v.entries = {{k, 1}};
  return v;
}

}  // namespace

TEST_CASE("tensor reproduces the vector-field bracket") {
  Built B(2, 3, {1, 1});
  const std::uint32_t d = B.tensor.dim;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t a = std::uint32_t(rng() % d), b = std::uint32_t(rng() % d);
    VectorField direct = bracket(B.chain.basis_vf[a], B.chain.basis_vf[b]);
    VectorField from_tensor(B.ctx);
    for (const auto& [k, c] : B.tensor.at(a, b)) from_tensor.add_scaled(B.chain.basis_vf[k], c);
    REQUIRE(direct == from_tensor);
  }
}

TEST_CASE("tensor structure: parity, skew, diagonal, Jacobi") {
  Built B(2, 3, {1, 1});
  const StructureTensor& T = B.tensor;
  const std::uint32_t d = T.dim;
  const PrimeField& F = T.F;
  for (std::uint32_t a = 0; a < d; ++a) {
    // c_{aa} = 0 for even e_a
    if (T.parity[a] == 0) CHECK(T.at(a, a).empty());
    for (std::uint32_t b = 0; b < d; ++b) {
      std::map<std::uint32_t, Scalar> lhs, rhs;
      for (const auto& [k, c] : T.at(a, b)) {
        lhs[k] = c;
        // parity additivity
        CHECK(T.parity[k] == ((T.parity[a] + T.parity[b]) & 1u));
      }
      const Scalar sg = (T.parity[a] && T.parity[b]) ? 1 : F.neg(1);
      for (const auto& [k, c] : T.at(b, a)) rhs[k] = F.mul(sg, c);
      CHECK(lhs == rhs);  // super skew-symmetry
    }
  }
  // full graded Jacobi on the tensor at (2,3,(1,1))
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b)
      for (std::uint32_t c = 0; c < d; ++c) {
        SparseVec lhs = T.bracket_vec(unit(d, a), T.bracket_vec(unit(d, b), unit(d, c)));
        SparseVec r1 = T.bracket_vec(T.bracket_vec(unit(d, a), unit(d, b)), unit(d, c));
        SparseVec r2 = T.bracket_vec(unit(d, b), T.bracket_vec(unit(d, a), unit(d, c)));
        const Scalar sg = (T.parity[a] && T.parity[b]) ? F.neg(1) : 1;
        std::vector<std::pair<Coord, Scalar>> raw = r1.entries;
        for (const auto& [k, v] : r2.entries) raw.emplace_back(k, F.mul(sg, v));
        for (const auto& [k, v] : lhs.entries) raw.emplace_back(k, F.neg(v));
        REQUIRE(make_sparse(d, std::move(raw), F).is_zero());
      }
}

TEST_CASE("tensor Jacobi sampled at (2,5,(1,1))") {
  Built B(2, 5, {1, 1});
  const StructureTensor& T = B.tensor;
  const std::uint32_t d = T.dim;
  const PrimeField& F = T.F;
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const std::uint32_t a = std::uint32_t(rng() % d), b = std::uint32_t(rng() % d),
                        c = std::uint32_t(rng() % d);
    SparseVec lhs = T.bracket_vec(unit(d, a), T.bracket_vec(unit(d, b), unit(d, c)));
    SparseVec r1 = T.bracket_vec(T.bracket_vec(unit(d, a), unit(d, b)), unit(d, c));
    SparseVec r2 = T.bracket_vec(unit(d, b), T.bracket_vec(unit(d, a), unit(d, c)));
    const Scalar sg = (T.parity[a] && T.parity[b]) ? F.neg(1) : 1;
    std::vector<std::pair<Coord, Scalar>> raw = r1.entries;
    for (const auto& [k, v] : r2.entries) raw.emplace_back(k, F.mul(sg, v));
    for (const auto& [k, v] : lhs.entries) raw.emplace_back(k, F.neg(v));
    REQUIRE(make_sparse(d, std::move(raw), F).is_zero());
  }
}

TEST_CASE("serial and parallel structure constants agree") {
  AlgebraContext ctx(2, 5, {1, 1});
  AlgebraChain chain = build_chain(ctx);
  CHECK(structure_constants_serial(chain) == structure_constants(chain, 2));
}

TEST_CASE("toral basis") {
  Built B(2, 3, {1, 1});
  auto torals = toral_basis(B.ctx);
  REQUIRE(torals.size() == 1);  // n = 2 -> exactly one toral element
  CHECK(membership(vf_coords(torals[0]), B.chain.sho, B.ctx.field()));
  CHECK(bracket(torals[0], torals[0]).is_zero());

  AlgebraContext c3(3, 3, {1, 1, 1});
  auto t3 = toral_basis(c3);
  REQUIRE(t3.size() == 2);
  for (const auto& a : t3)
    for (const auto& b : t3) CHECK(bracket(a, b).is_zero());
}

TEST_CASE("specific toral weights: +1, -1, -2") {
  Built B(2, 3, {1, 1});
  auto torals = toral_basis(B.ctx);
  const PrimeField& F = B.ctx.field();
  auto eigen = [&](const SuperPoly& f, std::int64_t w) {
    VectorField tm = t_h(f);
    REQUIRE(!tm.is_zero());
    VectorField lhs = bracket(torals[0], tm);
    VectorField rhs(B.ctx);
    rhs.add_scaled(tm, F.reduce(w));
    CHECK(lhs == rhs);
  };
  eigen(make_monomial(B.ctx, Monomial{{0, 0}, 0b01}), 1);   // T_H(x_{1'})
  eigen(make_monomial(B.ctx, Monomial{{1, 0}, 0}), -1);     // T_H(x_1)
  eigen(make_monomial(B.ctx, Monomial{{1, 0}, 0b10}), -2);  // T_H(x_1 x_{2'})
}

TEST_CASE("weight decomposition of HO at (2,3,(1,1))") {
  Built B(2, 3, {1, 1});
  auto torals = toral_basis(B.ctx);
  auto parts = weight_decompose(B.ctx, B.chain.ho, torals);
  std::map<WeightVector, Coord> dims;
  Coord total = 0;
  for (const auto& [w, part] : parts) {
    dims[w] = part.rank();
    total += part.rank();
    // h-stability of every part
    for (const auto& bv : part.basis()) {
      VectorField v = vf_from_coords(B.ctx, bv);
      VectorField lhs = bracket(torals[0], v);
      VectorField rhs(B.ctx);
      rhs.add_scaled(v, w[0]);
      REQUIRE(lhs == rhs);
    }
  }
  CHECK(total == 35);
  CHECK(dims == std::map<WeightVector, Coord>{{{0}, 11}, {{1}, 12}, {{2}, 12}});
  // SHO weight spaces = HO weight spaces intersected with SHO
  std::map<WeightVector, Coord> sdims;
  for (const auto& [w, part] : parts) {
    Coord r = subspace_intersect(part, B.chain.sho, B.ctx.field()).rank();
    if (r) sdims[w] = r;
  }
  CHECK(sdims == std::map<WeightVector, Coord>{{{0}, 2}, {{1}, 6}, {{2}, 6}});
}

TEST_CASE("weights match the closed form on T_H images (exhaustive)") {
  Built B(2, 3, {1, 1});
  auto torals = toral_basis(B.ctx);
  const PrimeField& F = B.ctx.field();
  for (std::uint32_t m = 0; m < B.ctx.lambda_dim(); ++m) {
    const Monomial& mono = B.ctx.mono(m);
    VectorField tm = t_h(make_monomial(B.ctx, mono));
    if (tm.is_zero()) continue;
    std::int64_t w = 0;
    if (mono.odd_set & 1u) w += 1;      // delta_{1' in u}
    w -= mono.alpha[0];
    w += mono.alpha[1];
    if (mono.odd_set & 2u) w -= 1;      // delta_{2' in u}
    VectorField lhs = bracket(torals[0], tm);
    VectorField rhs(B.ctx);
    rhs.add_scaled(tm, F.reduce(w));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("weight decomposition rejects a non-diagonalizable action") {
  AlgebraContext ctx(2, 3, {1, 1});
  auto torals = toral_basis(ctx);
  // D_1 and D_2 carry different toral weights, so their sum spans a line
  // that is not an eigenvector and cannot be split
  SparseVec v;
  v.dim = ctx.w_dim();
  v.entries = {{ctx.w_coord(0, 0), 1}, {ctx.w_coord(0, 1), 1}};
  Subspace line = echelonize({v}, ctx.w_dim(), ctx.field());
  CHECK_THROWS_WITH_AS(weight_decompose(ctx, line, torals),
                       "weight decomposition failed: action not diagonalizable",
                       std::runtime_error);
}

TEST_CASE("centralizers") {
  Built B(2, 3, {1, 1});
  const std::uint32_t d = B.tensor.dim;
  // center of the whole algebra is trivial here
  CHECK(centralizer(B.tensor, Subspace::full(d, B.tensor.F)).rank() == 0);
  // centralizer of the zero subspace is everything
  CHECK(centralizer(B.tensor, Subspace::zero(d)).rank() == d);
  // Z_SHO(SHO_{-1}) = SHO_{-1}
  std::vector<SparseVec> bottom;
  for (std::uint32_t k = 0; k < d; ++k)
    if (B.tensor.zdeg[k] == -1) bottom.push_back(unit(d, k));
  Subspace U = echelonize(bottom, d, B.tensor.F);
  REQUIRE(U.rank() == 4);
  Subspace Z = centralizer(B.tensor, U);
  CHECK(Z.rank() == U.rank());
  CHECK(Z.contained_in(U, B.tensor.F));
}

TEST_CASE("toral action is diagonal with the chain weights") {
  Built B(2, 3, {1, 1});
  CHECK(toral_action_diagonal(B.tensor, torals_in_basis(B.chain), B.chain.weights));
}

TEST_CASE("simplicity check flags the n=2 degeneracy") {
  Built B(2, 3, {1, 1});
  std::vector<std::uint32_t> witnesses;
  CHECK(!basis_ideals_full(B.tensor, &witnesses));
  REQUIRE(!witnesses.empty());
  // every witness generator is odd (the odd part is a proper ideal here)
  for (auto w : witnesses) CHECK(B.tensor.parity[w] == 1);
  CHECK(witnesses.size() == 7);
}
