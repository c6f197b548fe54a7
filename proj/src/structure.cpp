#include "sho/structure.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sho {

std::uint64_t StructureTensor::entry_count() const {
  std::uint64_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

SparseVec StructureTensor::bracket_vec(const SparseVec& x, const SparseVec& y) const {
  std::vector<std::int64_t> acc(dim, 0);
  for (const auto& [a, xa] : x.entries)
    for (const auto& [b, yb] : y.entries) {
      const Scalar s = F.mul(xa, yb);
      if (!s) continue;
      for (const auto& [k, c] : at(a, b)) acc[k] += std::int64_t(F.mul(s, c));
    }
  SparseVec out;
  out.dim = dim;
  for (std::uint32_t k = 0; k < dim; ++k) {
    Scalar v = F.reduce(acc[k]);
    if (v) out.entries.emplace_back(k, v);
  }
  return out;
}

namespace {

std::vector<std::pair<std::uint32_t, Scalar>> reduce_bracket(const AlgebraChain& chain,
                                                             std::uint32_t a, std::uint32_t b) {
  const PrimeField& F = chain.ctx->field();
  SparseVec w = vf_coords(bracket(chain.basis_vf[a], chain.basis_vf[b]));
  auto coeffs = chain.sho.coefficients_of(w, F);
  if (!coeffs) throw std::runtime_error("bracket of basis pair does not reduce: not closed");
  std::vector<std::pair<std::uint32_t, Scalar>> row;
  for (std::uint32_t k = 0; k < coeffs->size(); ++k)
    if ((*coeffs)[k]) row.emplace_back(k, (*coeffs)[k]);
  return row;
}

}  // namespace

StructureTensor structure_constants_serial(const AlgebraChain& chain) {
  const std::uint32_t d = chain.dim();
  StructureTensor S(chain.ctx->field());
  S.dim = d;
  S.parity = chain.parities;
  S.zdeg = chain.zdegs;
  S.rows.resize(std::size_t(d) * d);
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b)
      S.rows[std::size_t(a) * d + b] = reduce_bracket(chain, a, b);
  return S;
}

StructureTensor structure_constants(const AlgebraChain& chain, int threads) {
  const std::uint32_t d = chain.dim();
  StructureTensor S(chain.ctx->field());
  S.dim = d;
  S.parity = chain.parities;
  S.zdeg = chain.zdegs;
  S.rows.resize(std::size_t(d) * d);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (std::int64_t idx = 0; idx < std::int64_t(d) * d; ++idx)
    S.rows[std::size_t(idx)] =
        reduce_bracket(chain, std::uint32_t(idx / d), std::uint32_t(idx % d));
  return S;
}

std::vector<VectorField> toral_basis(const AlgebraContext& ctx) {
  std::vector<VectorField> out;
  for (std::uint32_t i = 0; i + 1 < ctx.n(); ++i) {
    SuperPoly f(ctx);
    Monomial m1;
    m1.alpha.assign(ctx.n(), 0);
    m1.alpha[i] = 1;
    m1.odd_set = 1u << i;
    f.add_term(m1, 1);
    Monomial m2;
    m2.alpha.assign(ctx.n(), 0);
    m2.alpha[i + 1] = 1;
    m2.odd_set = 1u << (i + 1);
    f.add_term(m2, ctx.field().neg(1));
    out.push_back(t_h(f));
  }
  return out;
}

namespace {

// Split `part` into eigenspaces of ad(h); eigenvalues scanned over F_p.
std::vector<std::pair<Scalar, Subspace>> eigen_split(const AlgebraContext& ctx,
                                                     const Subspace& part,
                                                     const VectorField& h) {
  const PrimeField& F = ctx.field();
  const Coord r = part.rank();
  std::vector<SparseVec> images(r);
  std::vector<VectorField> fields;
  fields.reserve(r);
  for (Coord i = 0; i < r; ++i) {
    fields.push_back(vf_from_coords(ctx, part.basis()[i]));
    images[i] = vf_coords(bracket(h, fields.back()));
  }
  std::vector<std::pair<Scalar, Subspace>> out;
  Coord total = 0;
  for (Scalar lam = 0; lam < F.p(); ++lam) {
    // rows over ambient coords: sum_i x_i (images_i[c] - lam part_i[c]) = 0
    std::vector<std::vector<std::pair<Coord, Scalar>>> per_coord(part.dim());
    for (Coord i = 0; i < r; ++i) {
      for (const auto& [c, v] : images[i].entries) per_coord[c].emplace_back(i, v);
      if (lam)
        for (const auto& [c, v] : part.basis()[i].entries)
          per_coord[c].emplace_back(i, F.neg(F.mul(lam, v)));
    }
    Eliminator e(r, F);
    for (Coord c = 0; c < part.dim(); ++c) {
      if (per_coord[c].empty()) continue;
      e.add_row(make_sparse(r, std::move(per_coord[c]), F));
    }
    Subspace K = e.kernel();
    if (K.rank() == 0) continue;
    std::vector<SparseVec> vecs;
    for (const auto& kv : K.basis()) {
      std::vector<std::pair<Coord, Scalar>> raw;
      for (const auto& [i, ci] : kv.entries)
        for (const auto& [c, v] : part.basis()[i].entries) raw.emplace_back(c, F.mul(ci, v));
      vecs.push_back(make_sparse(part.dim(), std::move(raw), F));
    }
    Subspace eig = echelonize(vecs, part.dim(), F);
    total += eig.rank();
    out.emplace_back(lam, std::move(eig));
  }
  if (total != r) throw std::runtime_error("weight decomposition failed: action not diagonalizable");
  return out;
}

}  // namespace

std::map<WeightVector, Subspace> weight_decompose(const AlgebraContext& ctx,
                                                  const Subspace& space,
                                                  const std::vector<VectorField>& torals) {
  std::map<WeightVector, Subspace> parts;
  parts.emplace(WeightVector{}, space);
  for (const auto& h : torals) {
    std::map<WeightVector, Subspace> next;
    for (const auto& [w, part] : parts) {
      for (auto& [lam, eig] : eigen_split(ctx, part, h)) {
        WeightVector w2 = w;
        w2.push_back(lam);
        next.emplace(std::move(w2), std::move(eig));
      }
    }
    parts = std::move(next);
  }
  return parts;
}

Subspace centralizer(const StructureTensor& S, const Subspace& U) {
  const std::uint32_t d = S.dim;
  if (U.dim() != d) throw std::invalid_argument("centralizer ambient mismatch");
  Eliminator e(d, S.F);
  for (const auto& u : U.basis()) {
    // rows per output coordinate k: sum_a x_a (sum_b u_b c_{ab}^k) = 0
    std::vector<std::vector<std::pair<Coord, Scalar>>> per_k(d);
    for (std::uint32_t a = 0; a < d; ++a)
      for (const auto& [b, ub] : u.entries)
        for (const auto& [k, c] : S.at(a, b)) per_k[k].emplace_back(a, S.F.mul(ub, c));
    for (std::uint32_t k = 0; k < d; ++k) {
      if (per_k[k].empty()) continue;
      e.add_row(make_sparse(d, std::move(per_k[k]), S.F));
    }
  }
  return e.kernel();
}

std::vector<SparseVec> torals_in_basis(const AlgebraChain& chain) {
  const PrimeField& F = chain.ctx->field();
  std::vector<SparseVec> out;
  for (const auto& h : toral_basis(*chain.ctx)) {
    auto coeffs = chain.sho.coefficients_of(vf_coords(h), F);
    if (!coeffs) throw std::runtime_error("toral element is not in SHO");
    std::vector<std::pair<Coord, Scalar>> raw;
    for (Coord k = 0; k < coeffs->size(); ++k)
      if ((*coeffs)[k]) raw.emplace_back(k, (*coeffs)[k]);
    out.push_back(make_sparse(chain.dim(), std::move(raw), F));
  }
  return out;
}

bool toral_action_diagonal(const StructureTensor& S, const std::vector<SparseVec>& torals,
                           const std::vector<std::vector<Scalar>>& weights) {
  const std::uint32_t d = S.dim;
  for (std::uint32_t a = 0; a < d; ++a) {
    SparseVec ea;
    ea.dim = d;
    ea.entries = {{a, 1}};
    for (std::size_t i = 0; i < torals.size(); ++i) {
      SparseVec got = S.bracket_vec(torals[i], ea);
      SparseVec want;
      want.dim = d;
      if (weights[a][i]) want.entries = {{a, weights[a][i]}};
      if (!(got == want)) return false;
    }
  }
  return true;
}

bool basis_ideals_full(const StructureTensor& S, std::vector<std::uint32_t>* witness) {
  const std::uint32_t d = S.dim;
  bool ok = true;
  for (std::uint32_t b = 0; b < d; ++b) {
    Eliminator e(d, S.F);
    std::vector<SparseVec> frontier;
    {
      SparseVec seed;
      seed.dim = d;
      seed.entries = {{b, 1}};
      e.add_row(seed);
      frontier.push_back(std::move(seed));
    }
    while (!frontier.empty() && e.rank() < d) {
      std::vector<SparseVec> next;
      for (const auto& v : frontier) {
        for (std::uint32_t g = 0; g < d; ++g) {
          SparseVec eg;
          eg.dim = d;
          eg.entries = {{g, 1}};
          for (SparseVec w : {S.bracket_vec(v, eg), S.bracket_vec(eg, v)}) {
            if (w.is_zero()) continue;
            if (e.add_row(w)) next.push_back(std::move(w));
          }
        }
      }
      frontier = std::move(next);
    }
    if (e.rank() != d) {
      ok = false;
      if (witness) witness->push_back(b);
    }
  }
  return ok;
}

}  // namespace sho
