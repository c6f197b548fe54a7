#pragma once

#include <cstdint>
#include <vector>

#include "sho/linalg.hpp"
#include "sho/vectorfield.hpp"

namespace sho {

/// Odd Hamiltonian map T_H(f) = sum_i (-1)^{tau(i) d(f)} D_i(f) D_{i'},
/// computed per homogeneous term (parity of the result is d(f) + 1).
VectorField t_h(const SuperPoly& f);

SparseVec vf_coords(const VectorField& vf);
VectorField vf_from_coords(const AlgebraContext& ctx, const SparseVec& v);

/// Span of T_H over all basis monomials; dimension p^{|t|} 2^n - 1.
Subspace build_ho(const AlgebraContext& ctx);

/// Kernel of the divergence map inside W-coordinates.
Subspace build_sprime(const AlgebraContext& ctx);

/// Rows [b_i, b_j] over all ordered basis pairs of S, in W coordinates.
/// Throws "not a subalgebra" if some bracket leaves S.
std::vector<SparseVec> bracket_span_rows(const AlgebraContext& ctx, const Subspace& S,
                                         int threads);
std::vector<SparseVec> bracket_span_rows_serial(const AlgebraContext& ctx, const Subspace& S);

/// Echelonized span of all ordered-pair brackets (doubles as a closure check).
Subspace derived_subalgebra(const AlgebraContext& ctx, const Subspace& S, int threads = 0);

/// The full chain HO, S', SHO' = S' cap HO, SHObar = [SHO',SHO'],
/// SHO = [SHObar,SHObar], with the fixed graded SHO basis and its
/// per-vector parity, Z-degree and toral weight data.
struct AlgebraChain {
  const AlgebraContext* ctx = nullptr;
  Subspace ho, sprime, sho_prime, sho_bar, sho;
  std::vector<VectorField> basis_vf;
  std::vector<std::uint32_t> parities;          // per SHO basis vector
  std::vector<std::int32_t> zdegs;              // per SHO basis vector
  std::vector<std::vector<Scalar>> weights;     // per SHO basis vector, length n-1

  std::uint32_t dim() const { return sho.rank(); }
};

AlgebraChain build_chain(const AlgebraContext& ctx, int threads = 0);

/// SHO intersected with the span of W coordinates of Z-degree r;
/// empty for r outside [-1, xi-5].
Subspace graded_component(const AlgebraChain& chain, std::int32_t r);

}  // namespace sho
