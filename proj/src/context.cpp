#include "sho/context.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace sho {

AlgebraContext::AlgebraContext(std::uint32_t n, Scalar p, MultiIndex t)
    : n_(n), field_(p), t_(std::move(t)) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (t_.size() != n) throw std::invalid_argument("t must have length n");
  pi_.resize(n);
  std::uint64_t L = std::uint64_t(1) << n;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (t_[i] < 1) throw std::invalid_argument("t entries must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t e = 0; e < t_[i]; ++e) {
      q *= p;
      if (q > (1u << 20)) throw InfeasibleSizeError("parameters too large: p^{t_i} exceeds 2^20");
    }
    pi_[i] = static_cast<std::uint32_t>(q - 1);
    L *= q;
    if (L > (1u << 22)) throw InfeasibleSizeError("parameters too large: dim Lambda exceeds 2^22");
  }
  xi_ = mi_total(pi_) + n;

  monos_.reserve(L);
  MultiIndex alpha(n, 0);
  for (;;) {
    for (std::uint32_t u = 0; u < (1u << n); ++u) monos_.push_back({alpha, u});
    std::uint32_t i = 0;
    while (i < n && alpha[i] == pi_[i]) alpha[i++] = 0;
    if (i == n) break;
    ++alpha[i];
  }
  std::sort(monos_.begin(), monos_.end(), [this](const Monomial& a, const Monomial& b) {
    std::uint32_t da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return key_of(a) < key_of(b);
  });
  degs_.resize(monos_.size());
  pars_.resize(monos_.size());
  rank_.reserve(monos_.size() * 2);
  for (std::uint32_t r = 0; r < monos_.size(); ++r) {
    degs_[r] = degree(monos_[r]);
    pars_[r] = parity(monos_[r]);
    rank_.emplace(key_of(monos_[r]), r);
  }

  derive_tab_.resize(std::size_t(dirs()) * lambda_dim());
  for (std::uint32_t j = 0; j < dirs(); ++j) {
    for (std::uint32_t r = 0; r < lambda_dim(); ++r) {
      auto& slot = derive_tab_[std::size_t(j) * lambda_dim() + r];
      const Monomial& m = monos_[r];
      if (j < n_) {
        if (m.alpha[j] == 0) continue;
        Monomial out = m;
        --out.alpha[j];
        slot = {Scalar(1), rank_of(out)};
      } else {
        std::uint32_t b = j - n_;
        if (!((m.odd_set >> b) & 1u)) continue;
        Monomial out = m;
        out.odd_set ^= 1u << b;
        std::uint32_t pos = std::popcount(m.odd_set & ((1u << b) - 1u));
        slot = {pos & 1 ? field_.neg(1) : Scalar(1), rank_of(out)};
      }
    }
  }
}

std::uint64_t AlgebraContext::key_of(const Monomial& m) const {
  std::uint64_t v = 0;
  for (std::uint32_t i = n_; i-- > 0;) v = v * (pi_[i] + 1) + m.alpha[i];
  return (v << n_) | m.odd_set;
}

Monomial AlgebraContext::mono_of_key(std::uint64_t key) const {
  Monomial m;
  m.odd_set = static_cast<std::uint32_t>(key & ((1u << n_) - 1u));
  std::uint64_t v = key >> n_;
  m.alpha.resize(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    m.alpha[i] = static_cast<std::uint32_t>(v % (pi_[i] + 1));
    v /= pi_[i] + 1;
  }
  if (v != 0) throw std::invalid_argument("monomial key out of range");
  return m;
}

std::uint32_t AlgebraContext::rank_of_key(std::uint64_t key) const {
  auto it = rank_.find(key);
  if (it == rank_.end()) throw std::invalid_argument("monomial key not in basis");
  return it->second;
}

std::uint32_t AlgebraContext::degree(const Monomial& m) const {
  return mi_total(m.alpha) + std::popcount(m.odd_set);
}

std::uint32_t AlgebraContext::parity(const Monomial& m) {
  return std::popcount(m.odd_set) & 1u;
}

std::optional<std::pair<Scalar, std::uint32_t>> AlgebraContext::mul_ranked(
    std::uint32_t r1, std::uint32_t r2) const {
  auto r = mul(monos_[r1], monos_[r2]);
  if (!r) return std::nullopt;
  return std::make_pair(r->first, rank_of(r->second));
}

std::optional<std::pair<Scalar, Monomial>> AlgebraContext::mul(const Monomial& a,
                                                               const Monomial& b) const {
  if (a.odd_set & b.odd_set) return std::nullopt;
  auto alpha = mi_add_bounded(a.alpha, b.alpha, pi_);
  if (!alpha) return std::nullopt;
  Scalar c = binom_mod_p(*alpha, a.alpha, field_);
  if (c == 0) return std::nullopt;
  // sign of sorting x^{u_a} x^{u_b}: (-1)^{#{(x,y) in u_a x u_b : x > y}}
  std::uint32_t inversions = 0;
  for (std::uint32_t b2 = 0; b2 < n_; ++b2)
    if ((b.odd_set >> b2) & 1u)
      inversions += std::popcount(a.odd_set >> (b2 + 1));
  if (inversions & 1u) c = field_.neg(c);
  return std::make_pair(c, Monomial{std::move(*alpha), a.odd_set | b.odd_set});
}

Scalar AlgebraContext::coord_weight(std::uint32_t coord, std::uint32_t i) const {
  const Monomial& m = monos_[w_rank(coord)];
  const std::uint32_t j = w_dir(coord);
  std::int64_t w = 0;
  if ((m.odd_set >> i) & 1u) w += 1;          // delta_{i' in u}
  w -= m.alpha[i];
  w += m.alpha[i + 1];
  if ((m.odd_set >> (i + 1)) & 1u) w -= 1;    // delta_{j' in u}
  if (j == i) w += 1;
  if (j == i + n_) w -= 1;
  if (j == i + 1 + n_) w += 1;
  if (j == i + 1) w -= 1;
  return field_.reduce(w);
}

std::string AlgebraContext::render(const Monomial& m) const {
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t i = 0; i < n_; ++i) {
    if (m.alpha[i] == 0) continue;
    if (!first) os << ' ';
    first = false;
    os << 'x' << (i + 1) << "^(" << m.alpha[i] << ')';
  }
  for (std::uint32_t b = 0; b < n_; ++b) {
    if (!((m.odd_set >> b) & 1u)) continue;
    if (!first) os << ' ';
    first = false;
    os << 'x' << (n_ + 1 + b);
  }
  if (first) os << '1';
  return os.str();
}

void require_same_context(const AlgebraContext& a, const AlgebraContext& b) {
  if (!a.same_as(b)) throw std::invalid_argument("algebra context mismatch");
}

}  // namespace sho
