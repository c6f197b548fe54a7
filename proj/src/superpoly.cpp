#include "sho/superpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace sho {

void SuperPoly::add_term(std::uint32_t rank, Scalar coeff) {
  coeff = coeff % ctx_->field().p();
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(rank, coeff);
  if (!inserted) {
    it->second = ctx_->field().add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  }
}

void SuperPoly::add_scaled(const SuperPoly& other, Scalar scale) {
  for (const auto& [r, c] : other.terms_) add_term(r, ctx_->field().mul(c, scale));
}

SuperPoly make_monomial(const AlgebraContext& ctx, const Monomial& m, Scalar coeff) {
  SuperPoly f(ctx);
  f.add_term(m, coeff);
  return f;
}

SuperPoly superpoly_mul(const SuperPoly& f, const SuperPoly& g) {
  require_same_context(f.ctx(), g.ctx());
  const AlgebraContext& ctx = f.ctx();
  SuperPoly out(ctx);
  for (const auto& [r1, c1] : f.terms()) {
    for (const auto& [r2, c2] : g.terms()) {
      auto prod = ctx.mul_ranked(r1, r2);
      if (prod) out.add_term(prod->second, ctx.field().mul(prod->first, ctx.field().mul(c1, c2)));
    }
  }
  return out;
}

SuperPoly derive(std::uint32_t j, const SuperPoly& f) {
  const AlgebraContext& ctx = f.ctx();
  if (j >= ctx.dirs()) throw std::invalid_argument("direction index out of range");
  SuperPoly out(ctx);
  for (const auto& [r, c] : f.terms()) {
    auto d = ctx.derive_ranked(j, r);
    if (d) out.add_term(d->second, ctx.field().mul(c, d->first));
  }
  return out;
}

Grading grading(const SuperPoly& f) {
  Grading g;
  bool first = true;
  std::uint32_t par = 0;
  bool mixed = false;
  for (const auto& [r, c] : f.terms()) {
    (void)c;
    g.zdegrees.insert(static_cast<std::int32_t>(f.ctx().degree(r)));
    std::uint32_t pr = f.ctx().parity(r);
    if (first) {
      par = pr;
      first = false;
    } else if (pr != par) {
      mixed = true;
    }
  }
  if (!first && !mixed) g.parity = par;
  if (first) g.parity = 0;  // the zero element counts as even
  return g;
}

std::string SuperPoly::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c << '*' << ctx_->render(ctx_->mono(r));
  }
  return os.str();
}

}  // namespace sho
