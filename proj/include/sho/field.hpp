#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sho {

/// Residue in [0, p). All arithmetic goes through PrimeField.
using Scalar = std::uint32_t;

/// Exponent tuple alpha = (alpha_1..alpha_n) of a divided-power monomial.
using MultiIndex = std::vector<std::uint32_t>;

bool is_odd_prime(std::uint64_t p);

/// Exact arithmetic in F_p, p an odd prime. Construction rejects p = 2 and
/// non-primes ("unsupported characteristic").
class PrimeField {
public:
  explicit PrimeField(Scalar p);

  Scalar p() const { return p_; }

  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : p_ - (b - a); }
  Scalar neg(Scalar a) const { return a ? p_ - a : 0; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((std::uint64_t(a) * b) % p_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const;
  /// Multiplicative inverse; throws on a = 0.
  Scalar inv(Scalar a) const;
  /// Reduce an arbitrary signed value into [0, p).
  Scalar reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
  Scalar p_;
};

/// C(a, b) mod p by base-p digit reduction (Lucas); no big integers.
/// Requires b <= a; a digit violation inside the expansion yields 0.
Scalar binom_mod_p(std::uint64_t top, std::uint64_t bottom, const PrimeField& F);

/// Componentwise product of binomials mod p; requires bottom <= top componentwise.
Scalar binom_mod_p(const MultiIndex& top, const MultiIndex& bottom, const PrimeField& F);

/// a + b if componentwise <= bounds, otherwise nullopt (product truncates away).
std::optional<MultiIndex> mi_add_bounded(const MultiIndex& a, const MultiIndex& b,
                                         const MultiIndex& bounds);

inline std::uint32_t mi_total(const MultiIndex& a) {
  std::uint32_t s = 0;
  for (auto v : a) s += v;
  return s;
}

}  // namespace sho
