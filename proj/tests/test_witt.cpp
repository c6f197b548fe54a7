#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sho/linalg.hpp"
#include "sho/vectorfield.hpp"

using namespace sho;

namespace {

Monomial mono(MultiIndex alpha, std::uint32_t odd) { return Monomial{std::move(alpha), odd}; }

VectorField field_of(const AlgebraContext& ctx, MultiIndex alpha, std::uint32_t odd,
                     std::uint32_t j, Scalar c = 1) {
  return make_field(ctx, mono(std::move(alpha), odd), j, c);
}

}  // namespace

TEST_CASE("apply") {
  AlgebraContext ctx(2, 3, {1, 1});
  VectorField d1 = field_of(ctx, {0, 0}, 0, 0);
  SuperPoly x1 = make_monomial(ctx, mono({1, 0}, 0));
  SuperPoly r = apply(d1, x1);
  REQUIRE(r.terms().size() == 1);
  CHECK(r.coeff(ctx.rank_of(mono({0, 0}, 0))) == 1);

  // (x3 D4)(x4) = x3
  VectorField x3d4 = field_of(ctx, {0, 0}, 0b01, 3);
  SuperPoly x4 = make_monomial(ctx, mono({0, 0}, 0b10));
  SuperPoly r2 = apply(x3d4, x4);
  REQUIRE(r2.terms().size() == 1);
  CHECK(r2.coeff(ctx.rank_of(mono({0, 0}, 0b01))) == 1);

  SuperPoly one = make_monomial(ctx, mono({0, 0}, 0));
  CHECK(apply(x3d4, one).is_zero());
  CHECK(apply(d1, one).is_zero());
}

TEST_CASE("bracket examples") {
  AlgebraContext ctx(2, 3, {1, 1});
  // [D_i, D_j] = 0
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = 0; j < 4; ++j)
      CHECK(bracket(field_of(ctx, {0, 0}, 0, i), field_of(ctx, {0, 0}, 0, j)).is_zero());
  // [D_1, x^(e1) D_1] = D_1
  VectorField d1 = field_of(ctx, {0, 0}, 0, 0);
  VectorField e = field_of(ctx, {1, 0}, 0, 0);
  CHECK(bracket(d1, e) == d1);
  // [x3 D4, x4 D3] = x3 D3 - x4 D4
  VectorField lhs = bracket(field_of(ctx, {0, 0}, 0b01, 3), field_of(ctx, {0, 0}, 0b10, 2));
  VectorField want(ctx);
  want.add_term(ctx.rank_of(mono({0, 0}, 0b01)), 2, 1);
  want.add_term(ctx.rank_of(mono({0, 0}, 0b10)), 3, ctx.field().neg(1));
  CHECK(lhs == want);
}

TEST_CASE("divergence") {
  AlgebraContext ctx(2, 3, {1, 1});
  SuperPoly one_expect = make_monomial(ctx, mono({0, 0}, 0));
  CHECK(divergence(field_of(ctx, {1, 0}, 0, 0)) == one_expect);  // div(x^(e1) D_1) = 1
  // div(x3 D3) = -1
  SuperPoly minus_one(ctx);
  minus_one.add_term(mono({0, 0}, 0), ctx.field().neg(1));
  CHECK(divergence(field_of(ctx, {0, 0}, 0b01, 2)) == minus_one);
  for (std::uint32_t j = 0; j < 4; ++j) CHECK(divergence(field_of(ctx, {0, 0}, 0, j)).is_zero());
}

TEST_CASE("vector field grading") {
  AlgebraContext ctx(2, 3, {1, 1});
  VfGrading g1 = vf_grading(field_of(ctx, {0, 0}, 0, 0));  // D_1
  CHECK(g1.parity == 0u);
  CHECK(g1.zdegrees == std::set<std::int32_t>{-1});
  VfGrading g2 = vf_grading(field_of(ctx, {0, 0}, 0b01, 0));  // x3 D_1
  CHECK(g2.parity == 1u);
  CHECK(g2.zdegrees == std::set<std::int32_t>{0});
  // x^(e1) x3 D_4: |u| + tau = 1 + 1 = even, z-degree 1
  VfGrading g3 = vf_grading(field_of(ctx, {1, 0}, 0b01, 3));
  CHECK(g3.parity == 0u);
  CHECK(g3.zdegrees == std::set<std::int32_t>{1});
}

TEST_CASE("super skew-symmetry exhaustive at (2,3,(1,1))") {
  AlgebraContext ctx(2, 3, {1, 1});
  const std::uint32_t W = ctx.w_dim();
  for (Coord x = 0; x < W; ++x)
    for (Coord y = x; y < W; ++y) {
      VectorField a(ctx), b(ctx);
      a.add_term(x, 1);
      b.add_term(y, 1);
      VectorField lhs = bracket(a, b);
      VectorField rhs(ctx);
      rhs.add_scaled(bracket(b, a),
                     (ctx.w_parity(x) && ctx.w_parity(y)) ? Scalar(1) : ctx.field().neg(1));
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("graded Jacobi on random homogeneous triples") {
  for (auto [n, p, samples] : {std::tuple<std::uint32_t, Scalar, int>{2, 3, 1000}, {3, 3, 200}}) {
    AlgebraContext ctx(n, p, MultiIndex(n, 1));
    std::mt19937_64 rng(11);
    for (int i = 0; i < samples; ++i) {
      const Coord ca = Coord(rng() % ctx.w_dim()), cb = Coord(rng() % ctx.w_dim()),
                  cc = Coord(rng() % ctx.w_dim());
      VectorField a(ctx), b(ctx), c(ctx);
      a.add_term(ca, 1 + Scalar(rng() % (p - 1)));
      b.add_term(cb, 1 + Scalar(rng() % (p - 1)));
      c.add_term(cc, 1 + Scalar(rng() % (p - 1)));
      VectorField lhs = bracket(a, bracket(b, c));
      VectorField rhs = bracket(bracket(a, b), c);
      rhs.add_scaled(bracket(b, bracket(a, c)),
                     (ctx.w_parity(ca) && ctx.w_parity(cb)) ? ctx.field().neg(1) : 1);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("divergence identity under the minus convention, exhaustive") {
  AlgebraContext ctx(2, 3, {1, 1});
  const std::uint32_t W = ctx.w_dim();
  std::uint64_t plus_holds = 0;
  for (Coord x = 0; x < W; ++x) {
    VectorField a(ctx);
    a.add_term(x, 1);
    SuperPoly diva = divergence(a);
    for (Coord y = 0; y < W; ++y) {
      VectorField b(ctx);
      b.add_term(y, 1);
      SuperPoly lhs = divergence(bracket(a, b));
      const Scalar sg = (ctx.w_parity(x) && ctx.w_parity(y)) ? ctx.field().neg(1) : 1;
      SuperPoly rhs = apply(a, divergence(b));
      SuperPoly rhs_plus = rhs;
      rhs.add_scaled(apply(b, diva), ctx.field().neg(sg));
      rhs_plus.add_scaled(apply(b, diva), sg);
      REQUIRE(lhs == rhs);
      if (lhs == rhs_plus) ++plus_holds;
    }
  }
  // the plus convention genuinely differs
  CHECK(plus_holds < std::uint64_t(W) * W);
}

TEST_CASE("apply is a representation of the bracket") {
  AlgebraContext ctx(2, 3, {1, 1});
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const Coord ca = Coord(rng() % ctx.w_dim()), cb = Coord(rng() % ctx.w_dim());
    VectorField a(ctx), b(ctx);
    a.add_term(ca, 1);
    b.add_term(cb, 1);
    SuperPoly g = make_monomial(ctx, ctx.mono(std::uint32_t(rng() % ctx.lambda_dim())));
    SuperPoly lhs = apply(bracket(a, b), g);
    SuperPoly rhs = apply(a, apply(b, g));
    rhs.add_scaled(apply(b, apply(a, g)),
                   (ctx.w_parity(ca) && ctx.w_parity(cb)) ? Scalar(1) : ctx.field().neg(1));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("mixed-parity inputs are decomposed, not rejected") {
  AlgebraContext ctx(2, 3, {1, 1});
  VectorField mixed(ctx);
  mixed.add_term(ctx.rank_of(mono({0, 0}, 0)), 0, 1);     // D_1 (even)
  mixed.add_term(ctx.rank_of(mono({0, 0}, 0b01)), 0, 1);  // x3 D_1 (odd)
  VectorField other = field_of(ctx, {1, 0}, 0, 0);
  VectorField whole = bracket(mixed, other);
  // equals the sum of the homogeneous brackets
  VectorField part1 = bracket(field_of(ctx, {0, 0}, 0, 0), other);
  VectorField part2 = bracket(field_of(ctx, {0, 0}, 0b01, 0), other);
  part1.add_scaled(part2, 1);
  CHECK(whole == part1);
}
