#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sho/superpoly.hpp"

namespace sho {

/// Sparse element of W(n,n;t): W coordinate (mono rank, direction) -> coeff.
class VectorField {
public:
  explicit VectorField(const AlgebraContext& ctx) : ctx_(&ctx) {}

  const AlgebraContext& ctx() const { return *ctx_; }
  const std::map<std::uint32_t, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::uint32_t coord, Scalar coeff);
  void add_term(std::uint32_t rank, std::uint32_t j, Scalar coeff) {
    add_term(ctx_->w_coord(rank, j), coeff);
  }
  void add_scaled(const VectorField& other, Scalar scale);

  bool operator==(const VectorField& o) const { return terms_ == o.terms_; }

  std::string render() const;

private:
  const AlgebraContext* ctx_;
  std::map<std::uint32_t, Scalar> terms_;
};

/// Basis field coeff * mono * D_{j+1}.
VectorField make_field(const AlgebraContext& ctx, const Monomial& m, std::uint32_t j,
                       Scalar coeff = 1);

/// Action on functions: (sum f_j D_j)(g).
SuperPoly apply(const VectorField& vf, const SuperPoly& g);

/// Super-bracket [a, b], computed per homogeneous term pair:
/// [fD_i, gD_j] = f D_i(g) D_j - (-1)^{d(fD_i) d(gD_j)} g D_j(f) D_i.
VectorField bracket(const VectorField& a, const VectorField& b);

/// div(sum f_j D_j) = sum (-1)^{tau(j) d(f_j)} D_j(f_j), termwise.
SuperPoly divergence(const VectorField& vf);

struct VfGrading {
  std::optional<std::uint32_t> parity;  // nullopt = mixed
  std::set<std::int32_t> zdegrees;     // per-term |alpha|+|u|-1
};

VfGrading vf_grading(const VectorField& vf);

}  // namespace sho
