#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sho/field.hpp"

using namespace sho;

TEST_CASE("construction rejects bad characteristic") {
  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  CHECK_NOTHROW(PrimeField(3));
  CHECK_NOTHROW(PrimeField(101));
}

TEST_CASE("arithmetic examples") {
  PrimeField f3(3), f5(5);
  CHECK(f3.mul(2, 2) == 1);
  CHECK(f5.inv(2) == 3);
  CHECK(f3.neg(1) == 2);
  CHECK(f3.reduce(-1) == 2);
  CHECK(f3.reduce(-7) == 2);
  CHECK_THROWS_AS(f5.inv(0), std::domain_error);
}

TEST_CASE("field axioms on random triples") {
  for (Scalar p : {3u, 5u, 7u}) {
    PrimeField F(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 1000; ++i) {
      Scalar a = Scalar(rng() % p), b = Scalar(rng() % p), c = Scalar(rng() % p);
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.sub(a, b) == F.add(a, F.neg(b)));
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
    }
  }
}

namespace {

// exact Pascal triangle, small enough for uint64
std::uint64_t exact_binom(unsigned a, unsigned b) {
  if (b > a) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST_CASE("Lucas reduction equals exact binomial mod p") {
  PrimeField f3(3);
  CHECK(binom_mod_p(std::uint64_t(3), 1, f3) == 0);  // p | C(p,1)
  CHECK(binom_mod_p(MultiIndex{2, 1}, MultiIndex{1, 1}, f3) == 2);
  CHECK(binom_mod_p(MultiIndex{7, 4}, MultiIndex{0, 0}, f3) == 1);
  CHECK_THROWS_AS(binom_mod_p(std::uint64_t(1), 2, f3), std::invalid_argument);

  for (Scalar p : {3u, 5u, 7u}) {
    PrimeField F(p);
    // exhaustive over all n=2 multi-indices with |alpha + beta| <= 12
    for (unsigned a1 = 0; a1 <= 12; ++a1)
      for (unsigned a2 = 0; a1 + a2 <= 12; ++a2)
        for (unsigned b1 = 0; b1 <= a1; ++b1)
          for (unsigned b2 = 0; b2 <= a2; ++b2) {
            Scalar got = binom_mod_p(MultiIndex{a1, a2}, MultiIndex{b1, b2}, F);
            Scalar want = Scalar((exact_binom(a1, b1) * exact_binom(a2, b2)) % p);
            REQUIRE(got == want);
          }
  }
}

TEST_CASE("bounded multi-index addition") {
  MultiIndex bounds{2, 2};
  CHECK(mi_add_bounded({1, 0}, {1, 0}, bounds) == MultiIndex{2, 0});
  CHECK(!mi_add_bounded({2, 0}, {1, 0}, bounds));
  CHECK(mi_add_bounded({0, 0}, {1, 2}, bounds) == MultiIndex{1, 2});
  CHECK_THROWS_AS(mi_add_bounded({1}, {1, 0}, bounds), std::invalid_argument);
}
