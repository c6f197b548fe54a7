#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sho/linalg.hpp"
#include "sho/structure.hpp"

namespace sho {

/// Sparse bilinear map phi(e_a, e_b) = sum_k x_{abk} e_k on the SHO basis,
/// stored as a vector over the d^3 unknown space, index (a*d + b)*d + k.
struct BiderTensor {
  std::uint32_t dim = 0;
  std::uint32_t parity = 0;  // d(phi)
  SparseVec x;

  static std::uint64_t index(std::uint32_t d, std::uint32_t a, std::uint32_t b,
                             std::uint32_t k) {
    return (std::uint64_t(a) * d + b) * d + k;
  }
  Scalar entry(std::uint32_t a, std::uint32_t b, std::uint32_t k) const {
    return x.at(static_cast<Coord>(index(dim, a, b, k)));
  }
  /// phi(e_a, e_b) as a sparse vector over the basis.
  SparseVec slice(std::uint32_t a, std::uint32_t b) const;
};

/// The inner family phi_lambda(x, y) = lambda [x, y] as a tensor.
BiderTensor inner_tensor(const StructureTensor& S, Scalar lambda);

/// The linear system cutting out skew-symmetric super-biderivations of a
/// fixed parity: parity-zeroing rows, skew-symmetry rows, and one row per
/// (a, b, c, k) instance of the defining law
///   phi(x,[y,z]) = [phi(x,y),z] + (-1)^{(d(phi)+d(x))d(y)} [y, phi(x,z)].
/// Rows are enumerated in a fixed canonical order; `left_slot_variant`
/// assembles from the equivalent law on the first slot instead (cross-check).
class BiderSystem {
public:
  BiderSystem(const StructureTensor& S, std::uint32_t phi_parity,
              bool left_slot_variant = false);

  const StructureTensor& tensor() const { return *S_; }
  std::uint32_t dim() const { return d_; }
  std::uint32_t phi_parity() const { return phi_parity_; }
  std::uint64_t unknown_count() const { return std::uint64_t(d_) * d_ * d_; }
  std::uint64_t triple_count() const { return std::uint64_t(d_) * d_ * d_; }

  using Row = std::vector<std::pair<Coord, Scalar>>;

  /// Parity + skew phase rows, streamed in canonical order.
  template <typename Emit>
  void emit_prefix(Emit&& emit) const {
    emit_parity_rows(emit);
    emit_skew_rows(emit);
  }
  std::vector<Row> prefix_rows() const;
  /// Defining-law rows for triples t in [lo, hi), t = (a*d + b)*d + c,
  /// k ascending within a triple; empty rows are skipped.
  void triple_rows(std::uint64_t lo, std::uint64_t hi, std::vector<Row>& out) const;

  /// Serial canonical enumeration of every row (prefix, then all triples).
  template <typename Emit>
  void for_each_row(Emit&& emit) const {
    emit_prefix(emit);
    std::vector<Row> buf;
    const std::uint64_t step = 8192;
    for (std::uint64_t lo = 0; lo < triple_count(); lo += step) {
      buf.clear();
      triple_rows(lo, std::min(lo + step, triple_count()), buf);
      for (auto& r : buf) emit(std::move(r));
    }
  }

private:
  const StructureTensor* S_;
  std::uint32_t d_;
  std::uint32_t phi_parity_;
  bool left_slot_;
  // transposed tensor views: t2_[c*d+k] = {(m, c_{mc}^k)}, t3_[b*d+k] = {(m, c_{bm}^k)}
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> t2_, t3_;
  // k values with nonempty t2_/t3_ slices, per first index
  std::vector<std::vector<std::uint32_t>> t2_klist_, t3_klist_;

  Scalar sigma(std::uint32_t a, std::uint32_t b) const;  // (-1)^{(d(phi)+d(a))d(b)}
  void emit_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                   std::vector<Row>& out) const;

  template <typename Emit>
  void emit_parity_rows(Emit& emit) const {
    for (std::uint32_t a = 0; a < d_; ++a)
      for (std::uint32_t b = 0; b < d_; ++b) {
        const std::uint32_t want = (S_->parity[a] + S_->parity[b] + phi_parity_) & 1u;
        for (std::uint32_t k = 0; k < d_; ++k)
          if (S_->parity[k] != want)
            emit(Row{{Coord(BiderTensor::index(d_, a, b, k)), 1}});
      }
  }
  template <typename Emit>
  void emit_skew_rows(Emit& emit) const;
};

template <typename Emit>
void BiderSystem::emit_skew_rows(Emit& emit) const {
  // x_{abk} + s x_{bak} = 0 with s = (-1)^{d(phi)(d(a)+d(b)) + d(a)d(b)}
  const Scalar minus_one = S_->F.neg(1);
  for (std::uint32_t a = 0; a < d_; ++a)
    for (std::uint32_t b = a; b < d_; ++b) {
      const std::uint32_t e =
          phi_parity_ * (S_->parity[a] + S_->parity[b]) + S_->parity[a] * S_->parity[b];
      const bool s_minus = (e & 1u) != 0;
      for (std::uint32_t k = 0; k < d_; ++k) {
        if (a == b) {
          if (!s_minus)
            emit(Row{{Coord(BiderTensor::index(d_, a, a, k)), 2 % S_->F.p()}});
          continue;
        }
        emit(Row{{Coord(BiderTensor::index(d_, a, b, k)), 1},
                 {Coord(BiderTensor::index(d_, b, a, k)), s_minus ? minus_one : Scalar(1)}});
      }
    }
}

enum class SolveMode { dense, blocked };

struct SolveReport {
  std::uint32_t phi_parity = 0;
  std::string mode;
  std::uint64_t unknowns = 0;
  std::uint64_t active_unknowns = 0;
  std::uint64_t rows_consumed = 0;
  std::uint32_t nullity = 0;
  std::vector<std::optional<Scalar>> lambda;  // per solution; nullopt = not inner
  bool verified_full_stream = false;
  bool fell_back_to_dense = false;
  std::string status;  // "ok" or "unverified"
};

struct SolveResult {
  std::vector<BiderTensor> solutions;
  SolveReport report;
};

/// Nullspace of the assembled system. In blocked mode unknowns are restricted
/// to toral-weight-compatible entries (mu_a + mu_b = mu_k) and every solution
/// is re-verified against the full unrestricted stream; on verification
/// failure the solve falls back to dense mode when permitted, otherwise the
/// result is marked "unverified".
SolveResult solve(const StructureTensor& S, std::uint32_t phi_parity, SolveMode mode,
                  const std::vector<std::vector<Scalar>>* basis_weights = nullptr,
                  int threads = 0, bool allow_dense_fallback = true);

/// Violations of the full canonical row stream on a candidate solution.
std::uint64_t count_violations(const BiderSystem& sys, const BiderTensor& phi, int threads = 0);
std::uint64_t count_violations_serial(const BiderSystem& sys, const BiderTensor& phi);

/// lambda with phi = lambda * bracket tensor, or nullopt.
std::optional<Scalar> classify_inner(const BiderTensor& phi, const StructureTensor& S);

struct ResidualReport {
  // identity name -> (tuples checked, violations)
  std::uint64_t left_slot_checked = 0, left_slot_bad = 0;
  std::uint64_t bracket_exchange_checked = 0, bracket_exchange_bad = 0;
  std::uint64_t self_bracket_checked = 0, self_bracket_bad = 0;
  std::uint64_t commuting_pair_checked = 0, commuting_pair_bad = 0;
  bool all_zero() const {
    return left_slot_bad + bracket_exchange_bad + self_bracket_bad + commuting_pair_bad == 0;
  }
};

/// Residuals of the derived identities on a solution of the defining system:
/// the first-slot law, the bracket-exchange identity
/// [phi(x,y),[u,v]] = (-1)^{d(phi)(d(y)+d(u))} [[x,y],phi(u,v)],
/// [phi(x,y),[x,y]] = 0 for even pairs, and phi(x,y) = 0 on commuting pairs.
/// Exhaustive for dim <= 40, otherwise 10^4 sampled tuples per identity.
ResidualReport lemma_residuals(const BiderTensor& phi, const StructureTensor& S,
                               std::uint64_t seed = 0);

}  // namespace sho
