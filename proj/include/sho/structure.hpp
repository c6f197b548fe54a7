#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sho/cartan.hpp"

namespace sho {

/// Coordinates c_{ab}^k of the bracket in the fixed SHO basis:
/// [e_a, e_b] = sum_k c_{ab}^k e_k, entries sorted by k per (a,b).
struct StructureTensor {
  std::uint32_t dim = 0;
  PrimeField F;
  std::vector<std::uint32_t> parity;  // d(e_a)
  std::vector<std::int32_t> zdeg;
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> rows;  // index a*dim+b

  explicit StructureTensor(const PrimeField& f) : F(f) {}

  const std::vector<std::pair<std::uint32_t, Scalar>>& at(std::uint32_t a,
                                                          std::uint32_t b) const {
    return rows[std::size_t(a) * dim + b];
  }
  std::uint64_t entry_count() const;

  /// z_k = sum_{a,b} x_a y_b c_{ab}^k for sparse x, y over the basis.
  SparseVec bracket_vec(const SparseVec& x, const SparseVec& y) const;

  bool operator==(const StructureTensor& o) const {
    return dim == o.dim && parity == o.parity && rows == o.rows;
  }
};

StructureTensor structure_constants(const AlgebraChain& chain, int threads = 0);
StructureTensor structure_constants_serial(const AlgebraChain& chain);

/// h_i = T_H(x_i x_{i'} - x_{i+1} x_{(i+1)'}), i = 1..n-1.
std::vector<VectorField> toral_basis(const AlgebraContext& ctx);

using WeightVector = std::vector<Scalar>;

/// Simultaneous eigenspace decomposition of `space` under the torals,
/// eigenvalues found by scanning F_p. Throws "weight decomposition failed"
/// if the action is not diagonalizable on `space`.
std::map<WeightVector, Subspace> weight_decompose(const AlgebraContext& ctx,
                                                  const Subspace& space,
                                                  const std::vector<VectorField>& torals);

/// {x : [x, u] = 0 for all u in U}, with U in SHO-basis coordinates.
Subspace centralizer(const StructureTensor& S, const Subspace& U);

/// Torals expressed in SHO-basis coordinates (throws if not members).
std::vector<SparseVec> torals_in_basis(const AlgebraChain& chain);

/// Checks [h_i, e_a] = weights[a][i] e_a for every basis vector and toral.
bool toral_action_diagonal(const StructureTensor& S, const std::vector<SparseVec>& torals,
                           const std::vector<std::vector<Scalar>>& weights);

/// True when the ideal generated by every single basis vector is the whole
/// algebra (iterated bracketing to a fixed point). Necessary for simplicity;
/// the CLI treats failure as a degenerate parameter set.
bool basis_ideals_full(const StructureTensor& S, std::vector<std::uint32_t>* witness = nullptr);

}  // namespace sho
