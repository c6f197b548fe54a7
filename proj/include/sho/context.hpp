#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "sho/field.hpp"

namespace sho {

/// Parameters are valid but the resulting problem is too large to attempt.
class InfeasibleSizeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Basis monomial x^(alpha) x^u of Lambda(n,n;t).
/// odd_set bit b (0-based, b < n) stands for the odd variable x_{n+1+b}.
struct Monomial {
  MultiIndex alpha;
  std::uint32_t odd_set = 0;

  bool operator==(const Monomial& o) const {
    return odd_set == o.odd_set && alpha == o.alpha;
  }
};

/// Everything fixed by the parameters (n, p, t): exponent bounds pi,
/// xi = |pi| + n, the enumerated monomial basis of Lambda(n,n;t) in graded
/// order, and the packed-key <-> rank maps shared by all modules.
///
/// Packed key layout (documented bit-exactly for the algebra file format):
///   key = mixed_radix(alpha) * 2^n + odd_set
/// where mixed_radix(alpha) = alpha_1 + (pi_1+1)*(alpha_2 + (pi_2+1)*(...)),
/// i.e. alpha_1 is the least significant digit, radix pi_i+1 = p^{t_i}.
class AlgebraContext {
public:
  AlgebraContext(std::uint32_t n, Scalar p, MultiIndex t);

  std::uint32_t n() const { return n_; }
  const PrimeField& field() const { return field_; }
  const MultiIndex& t() const { return t_; }
  const MultiIndex& pi() const { return pi_; }
  std::uint32_t xi() const { return xi_; }

  /// Number of directions D_1..D_{2n}.
  std::uint32_t dirs() const { return 2 * n_; }
  /// dim Lambda(n,n;t) = p^{|t|} * 2^n.
  std::uint32_t lambda_dim() const { return static_cast<std::uint32_t>(monos_.size()); }
  /// dim W(n,n;t) = 2n * lambda_dim.
  std::uint32_t w_dim() const { return dirs() * lambda_dim(); }

  std::uint64_t key_of(const Monomial& m) const;
  Monomial mono_of_key(std::uint64_t key) const;
  /// Rank in the graded basis order (sorted by (|alpha|+|u|, key)).
  std::uint32_t rank_of(const Monomial& m) const { return rank_of_key(key_of(m)); }
  std::uint32_t rank_of_key(std::uint64_t key) const;
  const Monomial& mono(std::uint32_t rank) const { return monos_[rank]; }

  std::uint32_t degree(std::uint32_t rank) const { return degs_[rank]; }
  std::uint32_t degree(const Monomial& m) const;
  /// Z_2-parity = |u| mod 2.
  std::uint32_t parity(std::uint32_t rank) const { return pars_[rank]; }
  static std::uint32_t parity(const Monomial& m);

  /// tau(j) for 0-based direction j: 0 for j < n, 1 otherwise.
  std::uint32_t tau(std::uint32_t j) const { return j < n_ ? 0u : 1u; }
  /// j' = j +- n (0-based).
  std::uint32_t conj(std::uint32_t j) const { return j < n_ ? j + n_ : j - n_; }

  /// W-coordinate of the basis vector field (mono rank, direction j).
  std::uint32_t w_coord(std::uint32_t rank, std::uint32_t j) const {
    return rank * dirs() + j;
  }
  std::uint32_t w_rank(std::uint32_t coord) const { return coord / dirs(); }
  std::uint32_t w_dir(std::uint32_t coord) const { return coord % dirs(); }
  /// Z-degree of the W coordinate: |alpha| + |u| - 1.
  std::int32_t w_zdeg(std::uint32_t coord) const {
    return static_cast<std::int32_t>(degs_[w_rank(coord)]) - 1;
  }
  std::uint32_t w_parity(std::uint32_t coord) const {
    return (pars_[w_rank(coord)] + tau(w_dir(coord))) & 1u;
  }

  /// Product of basis monomials; nullopt when truncation, a repeated odd
  /// variable, or a vanishing binomial kills the product.
  std::optional<std::pair<Scalar, std::uint32_t>> mul_ranked(std::uint32_t r1,
                                                             std::uint32_t r2) const;
  std::optional<std::pair<Scalar, Monomial>> mul(const Monomial& a, const Monomial& b) const;

  /// D_{j+1} applied to a basis monomial (0-based j); nullopt when it vanishes.
  std::optional<std::pair<Scalar, std::uint32_t>> derive_ranked(std::uint32_t j,
                                                                std::uint32_t rank) const {
    return derive_tab_[std::size_t(j) * lambda_dim() + rank];
  }

  /// Eigenvalue of the W coordinate under ad h_i, h_i = T_H(x_{i+1}x_{(i+1)'}
  /// - x_{i+2}x_{(i+2)'}) (0-based toral index i < n-1).
  Scalar coord_weight(std::uint32_t coord, std::uint32_t i) const;

  /// `x1^(2) x2 x3 x4`-style rendering; "1" for the empty monomial.
  std::string render(const Monomial& m) const;

  bool same_as(const AlgebraContext& o) const {
    return n_ == o.n_ && field_ == o.field_ && t_ == o.t_;
  }

private:
  std::uint32_t n_;
  PrimeField field_;
  MultiIndex t_;
  MultiIndex pi_;
  std::uint32_t xi_;
  std::vector<Monomial> monos_;
  std::vector<std::uint32_t> degs_;
  std::vector<std::uint32_t> pars_;
  std::unordered_map<std::uint64_t, std::uint32_t> rank_;
  std::vector<std::optional<std::pair<Scalar, std::uint32_t>>> derive_tab_;
};

/// Thrown on operations mixing values from different algebra contexts.
void require_same_context(const AlgebraContext& a, const AlgebraContext& b);

}  // namespace sho
