#include "sho/field.hpp"

#include <stdexcept>

namespace sho {

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(Scalar p) : p_(p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("unsupported characteristic: p must be an odd prime");
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const {
  Scalar r = 1 % p_;
  Scalar base = a % p_;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw std::domain_error("inversion of zero in F_p");
  return pow(a, p_ - 2);
}

namespace {

// C(a, b) for 0 <= b <= a < p, computed mod p term by term.
Scalar small_binom(Scalar a, Scalar b, const PrimeField& F) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  Scalar num = 1, den = 1;
  for (Scalar i = 1; i <= b; ++i) {
    num = F.mul(num, (a - b + i) % F.p());
    den = F.mul(den, i);
  }
  return F.mul(num, F.inv(den));
}

}  // namespace

Scalar binom_mod_p(std::uint64_t top, std::uint64_t bottom, const PrimeField& F) {
  if (bottom > top) throw std::invalid_argument("invalid binomial: bottom > top");
  const std::uint64_t p = F.p();
  Scalar r = 1;
  while (top || bottom) {
    Scalar dt = static_cast<Scalar>(top % p);
    Scalar db = static_cast<Scalar>(bottom % p);
    if (db > dt) return 0;
    r = F.mul(r, small_binom(dt, db, F));
    if (r == 0) return 0;
    top /= p;
    bottom /= p;
  }
  return r;
}

Scalar binom_mod_p(const MultiIndex& top, const MultiIndex& bottom, const PrimeField& F) {
  if (top.size() != bottom.size()) throw std::invalid_argument("multi-index length mismatch");
  Scalar r = 1;
  for (std::size_t i = 0; i < top.size(); ++i) {
    r = F.mul(r, binom_mod_p(std::uint64_t(top[i]), std::uint64_t(bottom[i]), F));
    if (r == 0) return 0;
  }
  return r;
}

std::optional<MultiIndex> mi_add_bounded(const MultiIndex& a, const MultiIndex& b,
                                         const MultiIndex& bounds) {
  if (a.size() != b.size() || a.size() != bounds.size())
    throw std::invalid_argument("multi-index length mismatch");
  MultiIndex out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + b[i];
    if (out[i] > bounds[i]) return std::nullopt;
  }
  return out;
}

}  // namespace sho
