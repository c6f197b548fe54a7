#include "sho/cartan.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sho {

VectorField t_h(const SuperPoly& f) {
  const AlgebraContext& ctx = f.ctx();
  const PrimeField& F = ctx.field();
  VectorField out(ctx);
  for (const auto& [r, c] : f.terms()) {
    const std::uint32_t d = ctx.parity(r);
    for (std::uint32_t j = 0; j < ctx.dirs(); ++j) {
      auto dv = ctx.derive_ranked(j, r);
      if (!dv) continue;
      Scalar v = F.mul(c, dv->first);
      if (ctx.tau(j) && d) v = F.neg(v);
      out.add_term(dv->second, ctx.conj(j), v);
    }
  }
  return out;
}

SparseVec vf_coords(const VectorField& vf) {
  SparseVec v;
  v.dim = vf.ctx().w_dim();
  v.entries.assign(vf.terms().begin(), vf.terms().end());
  return v;
}

VectorField vf_from_coords(const AlgebraContext& ctx, const SparseVec& v) {
  VectorField vf(ctx);
  for (const auto& [c, val] : v.entries) vf.add_term(c, val);
  return vf;
}

Subspace build_ho(const AlgebraContext& ctx) {
  Eliminator e(ctx.w_dim(), ctx.field());
  for (std::uint32_t r = 0; r < ctx.lambda_dim(); ++r) {
    VectorField img = t_h(make_monomial(ctx, ctx.mono(r)));
    if (!img.is_zero()) e.add_row(vf_coords(img));
  }
  return e.row_space();
}

Subspace build_sprime(const AlgebraContext& ctx) {
  // one constraint row per Lambda output coordinate
  std::vector<std::vector<std::pair<Coord, Scalar>>> per_out(ctx.lambda_dim());
  for (std::uint32_t r = 0; r < ctx.lambda_dim(); ++r) {
    for (std::uint32_t j = 0; j < ctx.dirs(); ++j) {
      auto dv = ctx.derive_ranked(j, r);
      if (!dv) continue;
      Scalar v = dv->first;
      if (ctx.tau(j) && ctx.parity(r)) v = ctx.field().neg(v);
      per_out[dv->second].emplace_back(ctx.w_coord(r, j), v);
    }
  }
  Eliminator e(ctx.w_dim(), ctx.field());
  for (auto& row : per_out) {
    if (row.empty()) continue;
    e.add_row(make_sparse(ctx.w_dim(), std::move(row), ctx.field()));
  }
  return e.kernel();
}

std::vector<SparseVec> bracket_span_rows_serial(const AlgebraContext& ctx, const Subspace& S) {
  const std::size_t r = S.rank();
  std::vector<VectorField> fields;
  fields.reserve(r);
  for (const auto& b : S.basis()) fields.push_back(vf_from_coords(ctx, b));
  std::vector<SparseVec> rows(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      rows[i * r + j] = vf_coords(bracket(fields[i], fields[j]));
  return rows;
}

std::vector<SparseVec> bracket_span_rows(const AlgebraContext& ctx, const Subspace& S,
                                         int threads) {
  const std::size_t r = S.rank();
  std::vector<VectorField> fields;
  fields.reserve(r);
  for (const auto& b : S.basis()) fields.push_back(vf_from_coords(ctx, b));
  std::vector<SparseVec> rows(r * r);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (std::int64_t idx = 0; idx < std::int64_t(r * r); ++idx) {
    const std::size_t i = std::size_t(idx) / r, j = std::size_t(idx) % r;
    rows[std::size_t(idx)] = vf_coords(bracket(fields[i], fields[j]));
  }
  return rows;
}

Subspace derived_subalgebra(const AlgebraContext& ctx, const Subspace& S, int threads) {
  auto rows = bracket_span_rows(ctx, S, threads);
  Eliminator e(ctx.w_dim(), ctx.field());
  for (auto& row : rows) {
    if (row.is_zero()) continue;
    if (!S.contains(row, ctx.field()))
      throw std::runtime_error("not a subalgebra: bracket leaves the span");
    e.add_row(std::move(row.entries));
  }
  return e.row_space();
}

AlgebraChain build_chain(const AlgebraContext& ctx, int threads) {
  AlgebraChain chain;
  chain.ctx = &ctx;
  chain.ho = build_ho(ctx);
  chain.sprime = build_sprime(ctx);
  chain.sho_prime = subspace_intersect(chain.sprime, chain.ho, ctx.field());
  chain.sho_bar = derived_subalgebra(ctx, chain.sho_prime, threads);
  chain.sho = derived_subalgebra(ctx, chain.sho_bar, threads);

  const std::uint32_t d = chain.sho.rank();
  chain.basis_vf.reserve(d);
  chain.parities.resize(d);
  chain.zdegs.resize(d);
  chain.weights.assign(d, std::vector<Scalar>(ctx.n() - 1, 0));
  for (std::uint32_t k = 0; k < d; ++k) {
    const SparseVec& row = chain.sho.basis()[k];
    chain.basis_vf.push_back(vf_from_coords(ctx, row));
    VfGrading g = vf_grading(chain.basis_vf.back());
    if (!g.parity || g.zdegrees.size() > 1)
      throw std::runtime_error("SHO basis vector is not homogeneous");
    chain.parities[k] = *g.parity;
    chain.zdegs[k] = g.zdegrees.empty() ? 0 : *g.zdegrees.begin();
    for (std::uint32_t i = 0; i + 1 < ctx.n(); ++i) {
      Scalar w = ctx.coord_weight(row.entries.front().first, i);
      for (const auto& [c, v] : row.entries) {
        (void)v;
        if (ctx.coord_weight(c, i) != w)
          throw std::runtime_error("SHO basis vector is not a toral weight vector");
      }
      chain.weights[k][i] = w;
    }
  }
  return chain;
}

Subspace graded_component(const AlgebraChain& chain, std::int32_t r) {
  const AlgebraContext& ctx = *chain.ctx;
  if (r < -1 || r > std::int32_t(ctx.xi()) - 5) return Subspace::zero(ctx.w_dim());
  std::vector<SparseVec> deg_basis;
  for (Coord c = 0; c < ctx.w_dim(); ++c) {
    if (ctx.w_zdeg(c) == r) {
      SparseVec v;
      v.dim = ctx.w_dim();
      v.entries = {{c, 1}};
      deg_basis.push_back(std::move(v));
    }
  }
  Subspace block = echelonize(deg_basis, ctx.w_dim(), ctx.field());
  return subspace_intersect(chain.sho, block, ctx.field());
}

}  // namespace sho
