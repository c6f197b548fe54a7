#include "sho/bider.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sho {

SparseVec BiderTensor::slice(std::uint32_t a, std::uint32_t b) const {
  const std::uint64_t base = index(dim, a, b, 0);
  SparseVec out;
  out.dim = dim;
  auto it = std::lower_bound(x.entries.begin(), x.entries.end(), Coord(base),
                             [](const auto& e, Coord v) { return e.first < v; });
  for (; it != x.entries.end() && it->first < base + dim; ++it)
    out.entries.emplace_back(Coord(it->first - base), it->second);
  return out;
}

BiderTensor inner_tensor(const StructureTensor& S, Scalar lambda) {
  BiderTensor t;
  t.dim = S.dim;
  t.parity = 0;
  t.x.dim = static_cast<Coord>(std::uint64_t(S.dim) * S.dim * S.dim);
  for (std::uint32_t a = 0; a < S.dim; ++a)
    for (std::uint32_t b = 0; b < S.dim; ++b)
      for (const auto& [k, c] : S.at(a, b)) {
        Scalar v = S.F.mul(lambda, c);
        if (v) t.x.entries.emplace_back(Coord(BiderTensor::index(S.dim, a, b, k)), v);
      }
  return t;
}

BiderSystem::BiderSystem(const StructureTensor& S, std::uint32_t phi_parity,
                         bool left_slot_variant)
    : S_(&S), d_(S.dim), phi_parity_(phi_parity & 1u), left_slot_(left_slot_variant) {
  if (unknown_count() >> 32)
    throw std::invalid_argument("dimension too large: d^3 unknowns overflow");
  t2_.resize(std::size_t(d_) * d_);
  t3_.resize(std::size_t(d_) * d_);
  for (std::uint32_t a = 0; a < d_; ++a)
    for (std::uint32_t b = 0; b < d_; ++b)
      for (const auto& [k, c] : S.at(a, b)) {
        t2_[std::size_t(b) * d_ + k].emplace_back(a, c);  // c_{ab}^k keyed by (b, k)
        t3_[std::size_t(a) * d_ + k].emplace_back(b, c);  // keyed by (a, k)
      }
  t2_klist_.resize(d_);
  t3_klist_.resize(d_);
  for (std::uint32_t i = 0; i < d_; ++i)
    for (std::uint32_t k = 0; k < d_; ++k) {
      if (!t2_[std::size_t(i) * d_ + k].empty()) t2_klist_[i].push_back(k);
      if (!t3_[std::size_t(i) * d_ + k].empty()) t3_klist_[i].push_back(k);
    }
}

Scalar BiderSystem::sigma(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t e = (phi_parity_ + S_->parity[a]) * S_->parity[b];
  return (e & 1u) ? S_->F.neg(1) : 1;
}

namespace {

// sort, combine duplicate coordinates, drop zeros; emit if anything is left
void push_combined(BiderSystem::Row& row, std::vector<BiderSystem::Row>& out,
                   const PrimeField& F) {
  if (row.empty()) return;
  std::sort(row.begin(), row.end());
  BiderSystem::Row combined;
  for (const auto& [idx, v] : row) {
    if (!combined.empty() && combined.back().first == idx) {
      combined.back().second = F.add(combined.back().second, v);
      if (combined.back().second == 0) combined.pop_back();
    } else if (v) {
      combined.emplace_back(idx, v);
    }
  }
  if (!combined.empty()) out.push_back(std::move(combined));
}

}  // namespace

std::vector<BiderSystem::Row> BiderSystem::prefix_rows() const {
  std::vector<Row> rows;
  emit_prefix([&](Row r) { rows.push_back(std::move(r)); });
  return rows;
}

void BiderSystem::emit_triple(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                              std::vector<Row>& out) const {
  const PrimeField& F = S_->F;
  Row row;
  if (!left_slot_) {
    // phi(e_a,[e_b,e_c]) - [phi(e_a,e_b),e_c] - sigma(a,b) [e_b, phi(e_a,e_c)] = 0
    const auto& base = S_->at(b, c);              // (m, c_{bc}^m)
    const auto* t2s = &t2_[std::size_t(c) * d_];  // [k] -> (m, c_{mc}^k)
    const auto* t3s = &t3_[std::size_t(b) * d_];  // [k] -> (m, c_{bm}^k)
    const Scalar sg = sigma(a, b);
    auto build = [&](std::uint32_t k) {
      row.clear();
      for (const auto& [m, v] : base)
        row.emplace_back(Coord(BiderTensor::index(d_, a, m, k)), v);
      for (const auto& [m, v] : t2s[k])
        row.emplace_back(Coord(BiderTensor::index(d_, a, b, m)), F.neg(v));
      for (const auto& [m, v] : t3s[k])
        row.emplace_back(Coord(BiderTensor::index(d_, a, c, m)), F.neg(F.mul(sg, v)));
      push_combined(row, out, F);
    };
    if (!base.empty()) {
      for (std::uint32_t k = 0; k < d_; ++k) build(k);
    } else {
      const auto& l2 = t2_klist_[c];
      const auto& l3 = t3_klist_[b];
      std::size_t i = 0, j = 0;
      while (i < l2.size() || j < l3.size()) {
        std::uint32_t k;
        if (j >= l3.size() || (i < l2.size() && l2[i] <= l3[j])) {
          k = l2[i];
          if (j < l3.size() && l3[j] == k) ++j;
          ++i;
        } else {
          k = l3[j++];
        }
        build(k);
      }
    }
  } else {
    // phi([e_a,e_b],e_c) - [e_a,phi(e_b,e_c)] - sigma'(c,b) [phi(e_a,e_c),e_b] = 0
    const auto& base = S_->at(a, b);              // (m, c_{ab}^m)
    const auto* t3s = &t3_[std::size_t(a) * d_];  // [k] -> (m, c_{am}^k)
    const auto* t2s = &t2_[std::size_t(b) * d_];  // [k] -> (m, c_{mb}^k)
    const std::uint32_t e = (phi_parity_ + S_->parity[c]) * S_->parity[b];
    const Scalar sg = (e & 1u) ? F.neg(1) : 1;
    auto build = [&](std::uint32_t k) {
      row.clear();
      for (const auto& [m, v] : base)
        row.emplace_back(Coord(BiderTensor::index(d_, m, c, k)), v);
      for (const auto& [m, v] : t3s[k])
        row.emplace_back(Coord(BiderTensor::index(d_, b, c, m)), F.neg(v));
      for (const auto& [m, v] : t2s[k])
        row.emplace_back(Coord(BiderTensor::index(d_, a, c, m)), F.neg(F.mul(sg, v)));
      push_combined(row, out, F);
    };
    if (!base.empty()) {
      for (std::uint32_t k = 0; k < d_; ++k) build(k);
    } else {
      const auto& l3 = t3_klist_[a];
      const auto& l2 = t2_klist_[b];
      std::size_t i = 0, j = 0;
      while (i < l3.size() || j < l2.size()) {
        std::uint32_t k;
        if (j >= l2.size() || (i < l3.size() && l3[i] <= l2[j])) {
          k = l3[i];
          if (j < l2.size() && l2[j] == k) ++j;
          ++i;
        } else {
          k = l2[j++];
        }
        build(k);
      }
    }
  }
}

void BiderSystem::triple_rows(std::uint64_t lo, std::uint64_t hi, std::vector<Row>& out) const {
  for (std::uint64_t t = lo; t < hi; ++t) {
    const std::uint32_t c = std::uint32_t(t % d_);
    const std::uint32_t b = std::uint32_t((t / d_) % d_);
    const std::uint32_t a = std::uint32_t(t / (std::uint64_t(d_) * d_));
    emit_triple(a, b, c, out);
  }
}

namespace {

std::vector<std::uint8_t> weight_active_mask(const StructureTensor& S,
                                             const std::vector<std::vector<Scalar>>& w) {
  const std::uint32_t d = S.dim;
  const std::size_t nw = w.empty() ? 0 : w[0].size();
  std::vector<std::uint8_t> active(std::uint64_t(d) * d * d, 1);
  if (nw == 0) return active;  // no torals: no restriction
  std::uint64_t idx = 0;
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b)
      for (std::uint32_t k = 0; k < d; ++k, ++idx) {
        bool ok = true;
        for (std::size_t i = 0; i < nw && ok; ++i)
          ok = S.F.add(w[a][i], w[b][i]) == w[k][i];
        active[idx] = ok ? 1 : 0;
      }
  return active;
}

// Feed rows into the eliminator: prefix serially, triples in parallel waves
// consumed in canonical order by the single writer.
void feed_system(const BiderSystem& sys, Eliminator& elim,
                 const std::vector<std::uint8_t>* active, int threads) {
  auto filter_add = [&](BiderSystem::Row&& r) {
    if (active) {
      BiderSystem::Row f;
      f.reserve(r.size());
      for (const auto& e : r)
        if ((*active)[e.first]) f.push_back(e);
      if (!f.empty()) elim.add_row(std::move(f));
    } else {
      elim.add_row(std::move(r));
    }
  };
  sys.emit_prefix([&](BiderSystem::Row r) { filter_add(std::move(r)); });

  const std::uint64_t total = sys.triple_count();
  const std::uint64_t chunk = 4096;
  const std::uint64_t nchunks = (total + chunk - 1) / chunk;
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#else
  const int nt = 1;
  (void)threads;
#endif
  const std::uint64_t wave = std::uint64_t(nt) * 8;
  std::vector<std::vector<BiderSystem::Row>> bufs(wave);
  for (std::uint64_t w0 = 0; w0 < nchunks; w0 += wave) {
    const std::uint64_t wn = std::min(wave, nchunks - w0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (std::int64_t q = 0; q < std::int64_t(wn); ++q) {
      auto& buf = bufs[std::size_t(q)];
      buf.clear();
      const std::uint64_t lo = (w0 + std::uint64_t(q)) * chunk;
      sys.triple_rows(lo, std::min(lo + chunk, total), buf);
    }
    for (std::uint64_t q = 0; q < wn; ++q)
      for (auto& r : bufs[std::size_t(q)]) filter_add(std::move(r));
  }
}

std::vector<Scalar> dense_view(const BiderTensor& phi) {
  std::vector<Scalar> dense(phi.x.dim, 0);
  for (const auto& [c, v] : phi.x.entries) dense[c] = v;
  return dense;
}

std::uint64_t prefix_violations(const BiderSystem& sys, const std::vector<Scalar>& dense) {
  const PrimeField& F = sys.tensor().F;
  std::uint64_t bad = 0;
  sys.emit_prefix([&](BiderSystem::Row r) {
    std::int64_t acc = 0;
    for (const auto& [c, v] : r)
      if (dense[c]) acc += std::int64_t(F.mul(v, dense[c]));
    if (F.reduce(acc) != 0) ++bad;
  });
  return bad;
}

std::uint64_t dot_violations(const BiderSystem& sys, const std::vector<Scalar>& dense,
                             std::uint64_t lo, std::uint64_t hi) {
  const PrimeField& F = sys.tensor().F;
  std::vector<BiderSystem::Row> rows;
  std::uint64_t bad = 0;
  for (std::uint64_t t = lo; t < hi; t += 512) {
    rows.clear();
    sys.triple_rows(t, std::min(t + 512, hi), rows);
    for (const auto& r : rows) {
      std::int64_t acc = 0;
      for (const auto& [c, v] : r)
        if (dense[c]) acc += std::int64_t(F.mul(v, dense[c]));
      if (F.reduce(acc) != 0) ++bad;
    }
  }
  return bad;
}

}  // namespace

std::uint64_t count_violations_serial(const BiderSystem& sys, const BiderTensor& phi) {
  const std::vector<Scalar> dense = dense_view(phi);
  return prefix_violations(sys, dense) + dot_violations(sys, dense, 0, sys.triple_count());
}

std::uint64_t count_violations(const BiderSystem& sys, const BiderTensor& phi, int threads) {
  const std::vector<Scalar> dense = dense_view(phi);
  std::uint64_t bad = prefix_violations(sys, dense);
  const std::uint64_t total = sys.triple_count();
  const std::uint64_t nblk = 256;
  const std::uint64_t blk = (total + nblk - 1) / nblk;
  std::uint64_t sum = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : sum) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (std::int64_t q = 0; q < std::int64_t(nblk); ++q) {
    const std::uint64_t lo = std::uint64_t(q) * blk;
    if (lo >= total) continue;
    sum += dot_violations(sys, dense, lo, std::min(lo + blk, total));
  }
  return bad + sum;
}

std::optional<Scalar> classify_inner(const BiderTensor& phi, const StructureTensor& S) {
  if (phi.dim != S.dim) throw std::invalid_argument("dimension mismatch");
  // lambda from the lexicographically first nonzero bracket entry
  std::optional<Scalar> lambda;
  for (std::uint32_t a = 0; a < S.dim && !lambda; ++a)
    for (std::uint32_t b = 0; b < S.dim && !lambda; ++b) {
      const auto& row = S.at(a, b);
      if (!row.empty())
        lambda = S.F.mul(phi.entry(a, b, row.front().first), S.F.inv(row.front().second));
    }
  if (!lambda) return phi.x.is_zero() ? std::optional<Scalar>(0) : std::nullopt;
  BiderTensor expect = inner_tensor(S, *lambda);
  if (expect.x.entries == phi.x.entries) return lambda;
  return std::nullopt;
}

ResidualReport lemma_residuals(const BiderTensor& phi, const StructureTensor& S,
                               std::uint64_t seed) {
  const std::uint32_t d = S.dim;
  const PrimeField& F = S.F;
  ResidualReport rep;
  // phi slices once
  std::vector<SparseVec> slices(std::size_t(d) * d);
  for (std::uint32_t a = 0; a < d; ++a)
    for (std::uint32_t b = 0; b < d; ++b) slices[std::size_t(a) * d + b] = phi.slice(a, b);
  auto unit = [&](std::uint32_t a) {
    SparseVec v;
    v.dim = d;
    v.entries = {{a, 1}};
    return v;
  };
  auto add_scaled = [&](SparseVec& acc, const SparseVec& v, Scalar s) {
    std::vector<std::pair<Coord, Scalar>> raw = acc.entries;
    for (const auto& [c, x] : v.entries) raw.emplace_back(c, F.mul(s, x));
    acc = make_sparse(d, std::move(raw), F);
  };
  const bool exhaustive = d <= 40;
  std::mt19937_64 rng(seed);

  // first-slot law: phi([a,b],c) = [a,phi(b,c)] + (-1)^{(dphi+d(c))d(b)} [phi(a,c),b]
  auto check_left = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    SparseVec lhs;
    lhs.dim = d;
    for (const auto& [m, v] : S.at(a, b)) add_scaled(lhs, slices[std::size_t(m) * d + c], v);
    SparseVec r1 = S.bracket_vec(unit(a), slices[std::size_t(b) * d + c]);
    SparseVec r2 = S.bracket_vec(slices[std::size_t(a) * d + c], unit(b));
    const std::uint32_t e = (phi.parity + S.parity[c]) * S.parity[b];
    add_scaled(lhs, r1, F.neg(1));
    add_scaled(lhs, r2, (e & 1u) ? 1 : F.neg(1));
    ++rep.left_slot_checked;
    if (!lhs.is_zero()) ++rep.left_slot_bad;
  };
  if (exhaustive) {
    for (std::uint32_t a = 0; a < d; ++a)
      for (std::uint32_t b = 0; b < d; ++b)
        for (std::uint32_t c = 0; c < d; ++c) check_left(a, b, c);
  } else {
    for (int i = 0; i < 10000; ++i)
      check_left(std::uint32_t(rng() % d), std::uint32_t(rng() % d), std::uint32_t(rng() % d));
  }

  // bracket exchange: [phi(x,y),[u,v]] = (-1)^{dphi (d(y)+d(u))} [[x,y],phi(u,v)]
  auto check_exch = [&](std::uint32_t x, std::uint32_t y, std::uint32_t u, std::uint32_t v) {
    SparseVec buv;
    buv.dim = d;
    for (const auto& [k, c] : S.at(u, v)) buv.entries.emplace_back(k, c);
    SparseVec bxy;
    bxy.dim = d;
    for (const auto& [k, c] : S.at(x, y)) bxy.entries.emplace_back(k, c);
    SparseVec lhs = S.bracket_vec(slices[std::size_t(x) * d + y], buv);
    SparseVec rhs = S.bracket_vec(bxy, slices[std::size_t(u) * d + v]);
    const std::uint32_t e = phi.parity * (S.parity[y] + S.parity[u]);
    add_scaled(lhs, rhs, (e & 1u) ? 1 : F.neg(1));
    ++rep.bracket_exchange_checked;
    if (!lhs.is_zero()) ++rep.bracket_exchange_bad;
  };
  if (exhaustive) {
    for (std::uint32_t x = 0; x < d; ++x)
      for (std::uint32_t y = 0; y < d; ++y)
        for (std::uint32_t u = 0; u < d; ++u)
          for (std::uint32_t v = 0; v < d; ++v) check_exch(x, y, u, v);
  } else {
    for (int i = 0; i < 10000; ++i)
      check_exch(std::uint32_t(rng() % d), std::uint32_t(rng() % d), std::uint32_t(rng() % d),
                 std::uint32_t(rng() % d));
  }

  // self bracket on even pairs: [phi(x,y),[x,y]] = 0 when d(x)+d(y) even
  for (std::uint32_t x = 0; x < d; ++x)
    for (std::uint32_t y = 0; y < d; ++y) {
      if (((S.parity[x] + S.parity[y]) & 1u) != 0) continue;
      SparseVec bxy;
      bxy.dim = d;
      for (const auto& [k, c] : S.at(x, y)) bxy.entries.emplace_back(k, c);
      SparseVec lhs = S.bracket_vec(slices[std::size_t(x) * d + y], bxy);
      ++rep.self_bracket_checked;
      if (!lhs.is_zero()) ++rep.self_bracket_bad;
    }

  // commuting pairs: [x,y] = 0 implies phi(x,y) = 0
  for (std::uint32_t x = 0; x < d; ++x)
    for (std::uint32_t y = 0; y < d; ++y) {
      if (!S.at(x, y).empty()) continue;
      ++rep.commuting_pair_checked;
      if (!slices[std::size_t(x) * d + y].is_zero()) ++rep.commuting_pair_bad;
    }
  return rep;
}

SolveResult solve(const StructureTensor& S, std::uint32_t phi_parity, SolveMode mode,
                  const std::vector<std::vector<Scalar>>* basis_weights, int threads,
                  bool allow_dense_fallback) {
  const std::uint32_t d = S.dim;
  const std::uint64_t nunk = std::uint64_t(d) * d * d;
  if (nunk > std::uint64_t(1) << 31) throw std::invalid_argument("dimension too large: d^3 unknowns overflow");
  BiderSystem sys(S, phi_parity);

  SolveResult res;
  res.report.phi_parity = phi_parity & 1u;
  res.report.mode = mode == SolveMode::dense ? "dense" : "blocked";
  res.report.unknowns = nunk;

  std::vector<std::uint8_t> active;
  std::vector<Coord> active_list;
  if (mode == SolveMode::blocked) {
    if (!basis_weights) throw std::invalid_argument("blocked mode requires basis weights");
    active = weight_active_mask(S, *basis_weights);
    for (std::uint64_t i = 0; i < nunk; ++i)
      if (active[i]) active_list.push_back(Coord(i));
    res.report.active_unknowns = active_list.size();
  } else {
    res.report.active_unknowns = nunk;
  }

  Eliminator elim(Coord(nunk), S.F);
  feed_system(sys, elim, mode == SolveMode::blocked ? &active : nullptr, threads);
  res.report.rows_consumed = elim.rows_consumed();
  Subspace K = elim.kernel(mode == SolveMode::blocked ? &active_list : nullptr);
  res.report.nullity = K.rank();

  for (const auto& kv : K.basis()) {
    BiderTensor t;
    t.dim = d;
    t.parity = phi_parity & 1u;
    t.x = kv;
    res.solutions.push_back(std::move(t));
  }

  res.report.status = "ok";
  if (mode == SolveMode::blocked) {
    bool all_ok = true;
    for (const auto& t : res.solutions)
      if (count_violations(sys, t, threads) != 0) all_ok = false;
    res.report.verified_full_stream = all_ok;
    if (!all_ok) {
      if (allow_dense_fallback) {
        SolveResult dense = solve(S, phi_parity, SolveMode::dense, nullptr, threads, false);
        dense.report.fell_back_to_dense = true;
        dense.report.mode = "blocked->dense";
        return dense;
      }
      res.report.status = "unverified";
    }
  }

  for (const auto& t : res.solutions) res.report.lambda.push_back(classify_inner(t, S));
  return res;
}

}  // namespace sho
