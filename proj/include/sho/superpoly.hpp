#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "sho/context.hpp"

namespace sho {

/// Sparse element of Lambda(n,n;t): monomial rank -> nonzero coefficient.
/// Zero coefficients are never stored; the zero element has an empty map.
class SuperPoly {
public:
  explicit SuperPoly(const AlgebraContext& ctx) : ctx_(&ctx) {}

  const AlgebraContext& ctx() const { return *ctx_; }
  const std::map<std::uint32_t, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::uint32_t rank, Scalar coeff);
  void add_term(const Monomial& m, Scalar coeff) { add_term(ctx_->rank_of(m), coeff); }
  void add_scaled(const SuperPoly& other, Scalar scale);
  Scalar coeff(std::uint32_t rank) const {
    auto it = terms_.find(rank);
    return it == terms_.end() ? 0 : it->second;
  }

  bool operator==(const SuperPoly& o) const { return terms_ == o.terms_; }

  std::string render() const;

private:
  const AlgebraContext* ctx_;
  std::map<std::uint32_t, Scalar> terms_;
};

SuperPoly make_monomial(const AlgebraContext& ctx, const Monomial& m, Scalar coeff = 1);

SuperPoly superpoly_mul(const SuperPoly& f, const SuperPoly& g);

/// D_{j+1}(f) for 0-based direction j in [0, 2n).
SuperPoly derive(std::uint32_t j, const SuperPoly& f);

struct Grading {
  std::optional<std::uint32_t> parity;  // nullopt = mixed
  std::set<std::int32_t> zdegrees;
};

Grading grading(const SuperPoly& f);

}  // namespace sho
