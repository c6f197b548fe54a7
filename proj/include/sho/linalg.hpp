#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sho/field.hpp"

namespace sho {

using Coord = std::uint32_t;

/// Sorted sparse vector over F_p; no zero entries.
struct SparseVec {
  Coord dim = 0;
  std::vector<std::pair<Coord, Scalar>> entries;

  bool is_zero() const { return entries.empty(); }
  Scalar at(Coord c) const;
  bool operator==(const SparseVec& o) const { return dim == o.dim && entries == o.entries; }
};

/// Build from unsorted/duplicated (coord, coeff) pairs.
SparseVec make_sparse(Coord dim, std::vector<std::pair<Coord, Scalar>> raw, const PrimeField& F);

/// Subspace of F_p^dim held as a reduced row-echelon basis. Each basis
/// vector's pivot is its lowest coordinate, has coefficient 1, and is zero in
/// every other basis vector; pivots are strictly increasing.
class Subspace {
public:
  Subspace() = default;
  Subspace(Coord dim, std::vector<SparseVec> rref_basis, std::vector<Coord> pivots)
      : dim_(dim), basis_(std::move(rref_basis)), pivots_(std::move(pivots)) {}
  static Subspace zero(Coord dim) { return Subspace(dim, {}, {}); }
  static Subspace full(Coord dim, const PrimeField& F);

  Coord dim() const { return dim_; }
  Coord rank() const { return static_cast<Coord>(basis_.size()); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const std::vector<Coord>& pivots() const { return pivots_; }

  /// Residual of v after reduction against the basis.
  SparseVec reduce(const SparseVec& v, const PrimeField& F) const;
  /// Coefficients expressing v in the basis; nullopt if v is not a member.
  std::optional<std::vector<Scalar>> coefficients_of(const SparseVec& v, const PrimeField& F) const;
  bool contains(const SparseVec& v, const PrimeField& F) const;
  /// A <= B as subspaces.
  bool contained_in(const Subspace& other, const PrimeField& F) const;

  bool operator==(const Subspace& o) const {
    return dim_ == o.dim_ && pivots_ == o.pivots_ && basis_ == o.basis_;
  }

private:
  Coord dim_ = 0;
  std::vector<SparseVec> basis_;
  std::vector<Coord> pivots_;
};

/// Streamed single-writer echelon eliminator. Rows are reduced incrementally
/// against a pivot-indexed table (pivot = lowest coordinate, scaled to 1); the
/// full matrix is never materialized. The resulting row space, kernel and
/// pivot set depend only on the set of rows fed, not their order.
class Eliminator {
public:
  Eliminator(Coord ncols, const PrimeField& F);

  /// Feed one row; returns true if the rank grew. Count of nonzero rows fed
  /// is tracked in rows_consumed().
  bool add_row(std::vector<std::pair<Coord, Scalar>> row);
  bool add_row(const SparseVec& row);

  Coord ncols() const { return ncols_; }
  Coord rank() const { return static_cast<Coord>(rows_.size()); }
  std::uint64_t rows_consumed() const { return rows_consumed_; }
  std::uint64_t reduction_ops() const { return reduction_ops_; }
  bool is_pivot(Coord c) const { return pivot_of_[c] >= 0; }

  /// Reduced row-echelon basis of the row space (back-substituted).
  Subspace row_space() const;

  /// Kernel basis {x : Rx = 0}, echelonized. When `active` is given, only
  /// those columns participate: non-active columns are constrained to zero
  /// (they must not carry pivots unless listed).
  Subspace kernel(const std::vector<Coord>* active = nullptr) const;

private:
  Coord ncols_;
  PrimeField F_;
  std::vector<std::int64_t> pivot_of_;  // coord -> row index, -1 if none
  std::vector<std::vector<std::pair<Coord, Scalar>>> rows_;
  std::uint64_t rows_consumed_ = 0;
  std::uint64_t reduction_ops_ = 0;
  std::vector<std::pair<Coord, Scalar>> scratch_;
};

/// RREF span of a set of rows.
Subspace echelonize(const std::vector<SparseVec>& rows, Coord dim, const PrimeField& F);

Subspace subspace_sum(const Subspace& a, const Subspace& b, const PrimeField& F);
/// Intersection via the kernel of stacked bases.
Subspace subspace_intersect(const Subspace& a, const Subspace& b, const PrimeField& F);
bool membership(const SparseVec& v, const Subspace& s, const PrimeField& F);

/// Finite generator of constraint rows over a fixed unknown space.
using ConstraintStream = std::function<std::optional<SparseVec>()>;

/// Basis of {x : Rx = 0} for the streamed row set.
Subspace nullspace(ConstraintStream stream, Coord unknowns, const PrimeField& F);

/// Dense elimination fallback (cross-check oracle); ambient dim <= 2000.
class DenseMatrix {
public:
  DenseMatrix(Coord ncols, const PrimeField& F);
  void add_row(const SparseVec& row);
  void add_row(const std::vector<Scalar>& row);
  Subspace row_space();
  Subspace kernel();

private:
  void rref();
  Coord ncols_;
  PrimeField F_;
  bool reduced_ = false;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<Coord> pivots_;
};

}  // namespace sho
