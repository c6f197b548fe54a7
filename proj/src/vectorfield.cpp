#include "sho/vectorfield.hpp"

#include <sstream>

namespace sho {

void VectorField::add_term(std::uint32_t coord, Scalar coeff) {
  coeff = coeff % ctx_->field().p();
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(coord, coeff);
  if (!inserted) {
    it->second = ctx_->field().add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  }
}

void VectorField::add_scaled(const VectorField& other, Scalar scale) {
  for (const auto& [k, c] : other.terms_) add_term(k, ctx_->field().mul(c, scale));
}

VectorField make_field(const AlgebraContext& ctx, const Monomial& m, std::uint32_t j,
                       Scalar coeff) {
  VectorField vf(ctx);
  vf.add_term(ctx.rank_of(m), j, coeff);
  return vf;
}

SuperPoly apply(const VectorField& vf, const SuperPoly& g) {
  require_same_context(vf.ctx(), g.ctx());
  const AlgebraContext& ctx = vf.ctx();
  const PrimeField& F = ctx.field();
  SuperPoly out(ctx);
  for (const auto& [coord, c] : vf.terms()) {
    const std::uint32_t r = ctx.w_rank(coord), j = ctx.w_dir(coord);
    for (const auto& [rg, cg] : g.terms()) {
      auto d = ctx.derive_ranked(j, rg);
      if (!d) continue;
      auto prod = ctx.mul_ranked(r, d->second);
      if (!prod) continue;
      out.add_term(prod->second, F.mul(F.mul(c, cg), F.mul(d->first, prod->first)));
    }
  }
  return out;
}

VectorField bracket(const VectorField& a, const VectorField& b) {
  require_same_context(a.ctx(), b.ctx());
  const AlgebraContext& ctx = a.ctx();
  const PrimeField& F = ctx.field();
  VectorField out(ctx);
  for (const auto& [ka, ca] : a.terms()) {
    const std::uint32_t r1 = ctx.w_rank(ka), i = ctx.w_dir(ka);
    const std::uint32_t d1 = ctx.w_parity(ka);
    for (const auto& [kb, cb] : b.terms()) {
      const std::uint32_t r2 = ctx.w_rank(kb), j = ctx.w_dir(kb);
      const std::uint32_t d2 = ctx.w_parity(kb);
      const Scalar c = F.mul(ca, cb);
      // f D_i(g) D_j
      if (auto d = ctx.derive_ranked(i, r2)) {
        if (auto prod = ctx.mul_ranked(r1, d->second))
          out.add_term(prod->second, j, F.mul(c, F.mul(d->first, prod->first)));
      }
      // -(-1)^{d1 d2} g D_j(f) D_i
      if (auto d = ctx.derive_ranked(j, r1)) {
        if (auto prod = ctx.mul_ranked(r2, d->second)) {
          Scalar v = F.mul(c, F.mul(d->first, prod->first));
          if (!(d1 && d2)) v = F.neg(v);
          out.add_term(prod->second, i, v);
        }
      }
    }
  }
  return out;
}

SuperPoly divergence(const VectorField& vf) {
  const AlgebraContext& ctx = vf.ctx();
  const PrimeField& F = ctx.field();
  SuperPoly out(ctx);
  for (const auto& [coord, c] : vf.terms()) {
    const std::uint32_t r = ctx.w_rank(coord), j = ctx.w_dir(coord);
    auto d = ctx.derive_ranked(j, r);
    if (!d) continue;
    Scalar v = F.mul(c, d->first);
    if (ctx.tau(j) && ctx.parity(r)) v = F.neg(v);
    out.add_term(d->second, v);
  }
  return out;
}

VfGrading vf_grading(const VectorField& vf) {
  VfGrading g;
  bool first = true, mixed = false;
  std::uint32_t par = 0;
  for (const auto& [coord, c] : vf.terms()) {
    (void)c;
    g.zdegrees.insert(vf.ctx().w_zdeg(coord));
    std::uint32_t pr = vf.ctx().w_parity(coord);
    if (first) {
      par = pr;
      first = false;
    } else if (pr != par) {
      mixed = true;
    }
  }
  if (!first && !mixed) g.parity = par;
  if (first) g.parity = 0;
  return g;
}

std::string VectorField::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [coord, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c << '*' << ctx_->render(ctx_->mono(ctx_->w_rank(coord))) << "*D"
       << (ctx_->w_dir(coord) + 1);
  }
  return os.str();
}

}  // namespace sho
