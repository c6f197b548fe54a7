#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sho/cartan.hpp"

using namespace sho;

namespace {

Monomial mono(MultiIndex alpha, std::uint32_t odd) { return Monomial{std::move(alpha), odd}; }

}  // namespace

TEST_CASE("T_H basics") {
  AlgebraContext ctx(2, 3, {1, 1});
  SuperPoly one = make_monomial(ctx, mono({0, 0}, 0));
  CHECK(t_h(one).is_zero());

  // T_H(x^(e1)) = D_{1'} = D_3
  VectorField t1 = t_h(make_monomial(ctx, mono({1, 0}, 0)));
  VectorField d3 = make_field(ctx, mono({0, 0}, 0), 2);
  CHECK(t1 == d3);

  // T_H(x_{1'}) = T_H(x3) = -D_1
  VectorField t2 = t_h(make_monomial(ctx, mono({0, 0}, 0b01)));
  VectorField md1 = make_field(ctx, mono({0, 0}, 0), 0, ctx.field().neg(1));
  CHECK(t2 == md1);

  // [T_H(x1 x_{1'} - x2 x_{2'}), T_H(x_{1'})] = T_H(x_{1'})
  SuperPoly h(ctx);
  h.add_term(mono({1, 0}, 0b01), 1);
  h.add_term(mono({0, 1}, 0b10), ctx.field().neg(1));
  VectorField th = t_h(h);
  CHECK(bracket(th, t2) == t2);
}

TEST_CASE("T_H parity shift and homomorphism identity (exhaustive at (2,3,(1,1)))") {
  AlgebraContext ctx(2, 3, {1, 1});
  for (std::uint32_t a = 0; a < ctx.lambda_dim(); ++a) {
    SuperPoly fa = make_monomial(ctx, ctx.mono(a));
    VectorField ta = t_h(fa);
    if (!ta.is_zero()) {
      VfGrading g = vf_grading(ta);
      REQUIRE(g.parity == ((ctx.parity(a) + 1) & 1u));
    }
    for (std::uint32_t b = 0; b < ctx.lambda_dim(); ++b) {
      SuperPoly fb = make_monomial(ctx, ctx.mono(b));
      REQUIRE(bracket(ta, t_h(fb)) == t_h(apply(ta, fb)));
    }
  }
}

TEST_CASE("build_ho dimensions with the derivation-kernel oracle") {
  for (auto [p, want] : {std::pair<Scalar, Coord>{3, 35}, {5, 99}}) {
    AlgebraContext ctx(2, p, {1, 1});
    Subspace ho = build_ho(ctx);
    CHECK(ho.rank() == want);
    // oracle: kernel of the stacked D_j coefficient matrices = constants only
    const std::uint32_t L = ctx.lambda_dim();
    std::vector<SparseVec> rows;
    for (std::uint32_t j = 0; j < ctx.dirs(); ++j) {
      std::vector<std::vector<std::pair<Coord, Scalar>>> per_out(L);
      for (std::uint32_t a = 0; a < L; ++a)
        if (auto d = ctx.derive_ranked(j, a)) per_out[d->second].emplace_back(a, d->first);
      for (auto& r : per_out)
        if (!r.empty()) rows.push_back(make_sparse(L, std::move(r), ctx.field()));
    }
    Eliminator e(L, ctx.field());
    for (const auto& r : rows) e.add_row(r);
    Subspace K = e.kernel();
    REQUIRE(K.rank() == 1);
    CHECK(K.basis()[0].entries.size() == 1);
    CHECK(ho.rank() == L - K.rank());
  }
}

TEST_CASE("build_sprime membership examples") {
  AlgebraContext ctx(2, 3, {1, 1});
  Subspace sp = build_sprime(ctx);
  CHECK(sp.rank() == 109);
  for (std::uint32_t j = 0; j < 4; ++j)
    CHECK(membership(vf_coords(make_field(ctx, mono({0, 0}, 0), j)), sp, ctx.field()));
  CHECK(!membership(vf_coords(make_field(ctx, mono({1, 0}, 0), 0)), sp, ctx.field()));
  CHECK(membership(vf_coords(make_field(ctx, mono({1, 0}, 0), 1)), sp, ctx.field()));
}

TEST_CASE("derived subalgebra") {
  AlgebraContext ctx(2, 3, {1, 1});
  // abelian span -> 0
  Subspace ab = echelonize({vf_coords(make_field(ctx, mono({0, 0}, 0), 0)),
                            vf_coords(make_field(ctx, mono({0, 0}, 0), 1))},
                           ctx.w_dim(), ctx.field());
  CHECK(derived_subalgebra(ctx, ab).rank() == 0);
  // derived(span{D_1, x^(e1) D_1}) = span{D_1}
  Subspace two = echelonize({vf_coords(make_field(ctx, mono({0, 0}, 0), 0)),
                             vf_coords(make_field(ctx, mono({1, 0}, 0), 0))},
                            ctx.w_dim(), ctx.field());
  Subspace der = derived_subalgebra(ctx, two);
  CHECK(der.rank() == 1);
  CHECK(membership(vf_coords(make_field(ctx, mono({0, 0}, 0), 0)), der, ctx.field()));
  // not closed: span{x3 D4, x4 D3} brackets outside itself
  Subspace open_span = echelonize({vf_coords(make_field(ctx, mono({0, 0}, 0b01), 3)),
                                   vf_coords(make_field(ctx, mono({0, 0}, 0b10), 2))},
                                  ctx.w_dim(), ctx.field());
  CHECK_THROWS_AS(derived_subalgebra(ctx, open_span), std::runtime_error);
}

TEST_CASE("chain at (2,3,(1,1)): frozen dims, inclusions, homogeneous basis") {
  AlgebraContext ctx(2, 3, {1, 1});
  AlgebraChain chain = build_chain(ctx);
  CHECK(chain.ho.rank() == 35);
  CHECK(chain.sprime.rank() == 109);
  CHECK(chain.sho_prime.rank() == 19);
  CHECK(chain.sho_bar.rank() == 15);
  CHECK(chain.sho.rank() == 14);
  CHECK(chain.sho.contained_in(chain.sho_bar, ctx.field()));
  CHECK(chain.sho_bar.contained_in(chain.sho_prime, ctx.field()));
  CHECK(chain.sho_prime.contained_in(chain.sprime, ctx.field()));
  CHECK(chain.sho_prime.contained_in(chain.ho, ctx.field()));
  // derived(SHO) = SHO (stability; second run of the same span)
  CHECK(derived_subalgebra(ctx, chain.sho) == chain.sho);
  for (std::uint32_t k = 0; k < chain.dim(); ++k) {
    CHECK(divergence(chain.basis_vf[k]).is_zero());
    CHECK(membership(vf_coords(chain.basis_vf[k]), chain.ho, ctx.field()));
  }
  // parity split 7 + 7, z-degrees -1..1
  std::uint32_t even = 0;
  for (auto par : chain.parities) even += par == 0;
  CHECK(even == 7);
  std::map<std::int32_t, int> zc;
  for (auto z : chain.zdegs) ++zc[z];
  CHECK(zc == std::map<std::int32_t, int>{{-1, 4}, {0, 6}, {1, 4}});
}

TEST_CASE("chain at (2,5,(1,1)): frozen dims") {
  AlgebraContext ctx(2, 5, {1, 1});
  AlgebraChain chain = build_chain(ctx);
  CHECK(chain.ho.rank() == 99);
  CHECK(chain.sprime.rank() == 301);
  CHECK(chain.sho_prime.rank() == 51);
  CHECK(chain.sho_bar.rank() == 47);
  CHECK(chain.sho.rank() == 46);
}

TEST_CASE("chain at (2,3,(2,1)): truncation heights above 1") {
  AlgebraContext ctx(2, 3, {2, 1});
  CHECK(ctx.pi() == MultiIndex{8, 2});
  CHECK(ctx.lambda_dim() == 108);
  AlgebraChain chain = build_chain(ctx);
  CHECK(chain.ho.rank() == 107);
  CHECK(chain.sprime.rank() == 325);
  CHECK(chain.sho_prime.rank() == 55);
  CHECK(chain.sho_bar.rank() == 51);
  CHECK(chain.sho.rank() == 50);
}

TEST_CASE("dense cross-check of HO and S' at (2,3,(1,1))") {
  AlgebraContext ctx(2, 3, {1, 1});
  DenseMatrix ho_dense(ctx.w_dim(), ctx.field());
  for (std::uint32_t r = 0; r < ctx.lambda_dim(); ++r) {
    VectorField img = t_h(make_monomial(ctx, ctx.mono(r)));
    if (!img.is_zero()) ho_dense.add_row(vf_coords(img));
  }
  CHECK(ho_dense.row_space() == build_ho(ctx));

  DenseMatrix div_rows(ctx.w_dim(), ctx.field());
  std::vector<std::vector<std::pair<Coord, Scalar>>> per_out(ctx.lambda_dim());
  for (std::uint32_t r = 0; r < ctx.lambda_dim(); ++r)
    for (std::uint32_t j = 0; j < ctx.dirs(); ++j)
      if (auto d = ctx.derive_ranked(j, r)) {
        Scalar v = d->first;
        if (ctx.tau(j) && ctx.parity(r)) v = ctx.field().neg(v);
        per_out[d->second].emplace_back(ctx.w_coord(r, j), v);
      }
  for (auto& row : per_out)
    if (!row.empty()) div_rows.add_row(make_sparse(ctx.w_dim(), std::move(row), ctx.field()));
  CHECK(div_rows.kernel() == build_sprime(ctx));
}

TEST_CASE("graded components") {
  AlgebraContext ctx(2, 3, {1, 1});
  AlgebraChain chain = build_chain(ctx);
  std::uint32_t total = 0;
  for (std::int32_t r = -1; r <= std::int32_t(ctx.xi()) - 5; ++r) {
    Subspace comp = graded_component(chain, r);
    total += comp.rank();
    for (const auto& b : comp.basis())
      for (const auto& [c, v] : b.entries) {
        (void)v;
        REQUIRE(ctx.w_zdeg(c) == r);
      }
  }
  CHECK(total == chain.dim());
  CHECK(graded_component(chain, std::int32_t(ctx.xi()) - 4).rank() == 0);
  CHECK(graded_component(chain, 99).rank() == 0);
  // the bottom component contains the constant fields T_H(x_i) = D_{i'}
  Subspace bottom = graded_component(chain, -1);
  CHECK(membership(vf_coords(t_h(make_monomial(ctx, mono({1, 0}, 0)))), bottom, ctx.field()));
  CHECK(membership(vf_coords(t_h(make_monomial(ctx, mono({0, 1}, 0)))), bottom, ctx.field()));
}

TEST_CASE("parallel and serial bracket-span kernels agree") {
  AlgebraContext ctx(2, 3, {1, 1});
  AlgebraChain chain = build_chain(ctx);
  CHECK(bracket_span_rows_serial(ctx, chain.sho_prime) ==
        bracket_span_rows(ctx, chain.sho_prime, 2));
}
