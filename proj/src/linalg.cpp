#include "sho/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace sho {

namespace {

using Entries = std::vector<std::pair<Coord, Scalar>>;

// out += tail of `cur` starting at `a`, merged with -coeff * tail of `row`
// starting at `b`. Both inputs sorted; result appended sorted.
void merge_sub(Entries& out, const Entries& cur, std::size_t a, const Entries& row,
               std::size_t b, Scalar coeff, const PrimeField& F) {
  while (a < cur.size() || b < row.size()) {
    if (b >= row.size() || (a < cur.size() && cur[a].first < row[b].first)) {
      out.push_back(cur[a++]);
    } else if (a >= cur.size() || row[b].first < cur[a].first) {
      out.emplace_back(row[b].first, F.neg(F.mul(coeff, row[b].second)));
      ++b;
    } else {
      Scalar s = F.sub(cur[a].second, F.mul(coeff, row[b].second));
      if (s) out.emplace_back(cur[a].first, s);
      ++a;
      ++b;
    }
  }
}

// Reduce `cur` against fully reduced rows (pivot first, coefficient 1, no
// other pivot in any tail). Entries at pivot coords are eliminated in one
// ascending pass; `on_hit(pivot_index, coeff)` reports each elimination.
// Returns the residual (supported on non-pivot coords only).
template <typename OnHit>
Entries reduce_against_rref(Entries cur, const std::vector<Coord>& pivots,
                            const std::vector<const Entries*>& rows, const PrimeField& F,
                            OnHit&& on_hit) {
  Entries out;
  std::size_t i = 0;
  while (i < cur.size()) {
    const Coord c = cur[i].first;
    auto it = std::lower_bound(pivots.begin(), pivots.end(), c);
    if (it != pivots.end() && *it == c) {
      const std::size_t bi = static_cast<std::size_t>(it - pivots.begin());
      const Scalar coeff = cur[i].second;
      on_hit(bi, coeff);
      Entries merged;
      const Entries& row = *rows[bi];
      merged.reserve(cur.size() - i + row.size());
      merge_sub(merged, cur, i + 1, row, 1, coeff, F);
      cur = std::move(merged);
      i = 0;
    } else {
      out.push_back(cur[i++]);
    }
  }
  return out;
}

}  // namespace

Scalar SparseVec::at(Coord c) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), c,
                             [](const auto& e, Coord v) { return e.first < v; });
  return (it != entries.end() && it->first == c) ? it->second : 0;
}

SparseVec make_sparse(Coord dim, std::vector<std::pair<Coord, Scalar>> raw, const PrimeField& F) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec v;
  v.dim = dim;
  for (const auto& [c, val] : raw) {
    if (c >= dim) throw std::out_of_range("coordinate out of range");
    Scalar x = val % F.p();
    if (!v.entries.empty() && v.entries.back().first == c) {
      v.entries.back().second = F.add(v.entries.back().second, x);
      if (v.entries.back().second == 0) v.entries.pop_back();
    } else if (x) {
      v.entries.emplace_back(c, x);
    }
  }
  return v;
}

Subspace Subspace::full(Coord dim, const PrimeField& F) {
  (void)F;
  std::vector<SparseVec> basis(dim);
  std::vector<Coord> piv(dim);
  for (Coord i = 0; i < dim; ++i) {
    basis[i].dim = dim;
    basis[i].entries = {{i, 1}};
    piv[i] = i;
  }
  return Subspace(dim, std::move(basis), std::move(piv));
}

SparseVec Subspace::reduce(const SparseVec& v, const PrimeField& F) const {
  std::vector<const std::vector<std::pair<Coord, Scalar>>*> rows(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) rows[i] = &basis_[i].entries;
  SparseVec res;
  res.dim = dim_;
  res.entries = reduce_against_rref(v.entries, pivots_, rows, F, [](std::size_t, Scalar) {});
  return res;
}

std::optional<std::vector<Scalar>> Subspace::coefficients_of(const SparseVec& v,
                                                             const PrimeField& F) const {
  std::vector<const std::vector<std::pair<Coord, Scalar>>*> rows(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) rows[i] = &basis_[i].entries;
  std::vector<Scalar> coeffs(rank(), 0);
  auto residual = reduce_against_rref(v.entries, pivots_, rows, F,
                                      [&](std::size_t bi, Scalar c) { coeffs[bi] = c; });
  if (!residual.empty()) return std::nullopt;
  return coeffs;
}

bool Subspace::contains(const SparseVec& v, const PrimeField& F) const {
  return reduce(v, F).is_zero();
}

bool Subspace::contained_in(const Subspace& other, const PrimeField& F) const {
  for (const auto& b : basis_)
    if (!other.contains(b, F)) return false;
  return true;
}

Eliminator::Eliminator(Coord ncols, const PrimeField& F)
    : ncols_(ncols), F_(F), pivot_of_(ncols, -1) {}

bool Eliminator::add_row(const SparseVec& row) {
  if (row.dim != ncols_) throw std::invalid_argument("row dimension mismatch");
  return add_row(row.entries);
}

bool Eliminator::add_row(std::vector<std::pair<Coord, Scalar>> row) {
  if (row.empty()) return false;
#ifndef NDEBUG
  for (std::size_t i = 1; i < row.size(); ++i) assert(row[i - 1].first < row[i].first);
#endif
  if (row.back().first >= ncols_) throw std::out_of_range("coordinate out of range");
  ++rows_consumed_;
  while (!row.empty()) {
    const Coord lead = row.front().first;
    const std::int64_t pr = pivot_of_[lead];
    if (pr < 0) {
      const Scalar s = F_.inv(row.front().second);
      if (s != 1)
        for (auto& e : row) e.second = F_.mul(e.second, s);
      pivot_of_[lead] = static_cast<std::int64_t>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    const auto& prow = rows_[std::size_t(pr)];
    const Scalar coeff = row.front().second;
    scratch_.clear();
    scratch_.reserve(row.size() + prow.size());
    merge_sub(scratch_, row, 1, prow, 1, coeff, F_);
    reduction_ops_ += prow.size();
    row.swap(scratch_);
  }
  return false;
}

Subspace Eliminator::row_space() const {
  std::vector<Coord> piv;
  std::vector<Coord> order;
  piv.reserve(rows_.size());
  order.reserve(rows_.size());
  for (Coord c = 0; c < ncols_; ++c)
    if (pivot_of_[c] >= 0) {
      piv.push_back(c);
      order.push_back(static_cast<Coord>(pivot_of_[c]));
    }
  // Back-substitute from the highest pivot down; once reduced, a row's tail
  // holds no pivot coordinate, so the one-pass reducer applies.
  std::vector<std::vector<std::pair<Coord, Scalar>>> reduced(piv.size());
  std::vector<const std::vector<std::pair<Coord, Scalar>>*> rowptrs(piv.size(), nullptr);
  for (std::size_t k = 0; k < piv.size(); ++k) rowptrs[k] = &reduced[k];
  for (std::size_t k = piv.size(); k-- > 0;) {
    const auto& src = rows_[order[k]];
    std::vector<std::pair<Coord, Scalar>> tail(src.begin() + 1, src.end());
    auto res = reduce_against_rref(std::move(tail), piv, rowptrs, F_, [](std::size_t, Scalar) {});
    reduced[k].clear();
    reduced[k].emplace_back(piv[k], 1);
    reduced[k].insert(reduced[k].end(), res.begin(), res.end());
  }
  std::vector<SparseVec> basis(piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k) {
    basis[k].dim = ncols_;
    basis[k].entries = std::move(reduced[k]);
  }
  return Subspace(ncols_, std::move(basis), std::move(piv));
}

Subspace Eliminator::kernel(const std::vector<Coord>* active) const {
  std::vector<Coord> piv;
  piv.reserve(rows_.size());
  for (Coord c = 0; c < ncols_; ++c)
    if (pivot_of_[c] >= 0) piv.push_back(c);

  std::vector<Coord> free_cols;
  if (active) {
    for (Coord c : *active)
      if (pivot_of_[c] < 0) free_cols.push_back(c);
    std::sort(free_cols.begin(), free_cols.end());
  } else {
    for (Coord c = 0; c < ncols_; ++c)
      if (pivot_of_[c] < 0) free_cols.push_back(c);
  }

  std::vector<SparseVec> out;
  out.reserve(free_cols.size());
  for (Coord f : free_cols) {
    std::unordered_map<Coord, Scalar> x;
    x.emplace(f, 1);
    // x_{pivot} = -sum_{c > pivot} row[c] * x_c, pivots processed descending;
    // pivots above f resolve to zero and are skipped.
    for (std::size_t k = piv.size(); k-- > 0;) {
      const Coord pc = piv[k];
      if (pc > f) continue;
      const auto& row = rows_[std::size_t(pivot_of_[pc])];
      std::int64_t acc = 0;
      for (std::size_t e = 1; e < row.size(); ++e) {
        auto it = x.find(row[e].first);
        if (it != x.end()) acc += std::int64_t(F_.mul(row[e].second, it->second));
      }
      const Scalar v = F_.neg(F_.reduce(acc));
      if (v) x.emplace(pc, v);
    }
    std::vector<std::pair<Coord, Scalar>> entries(x.begin(), x.end());
    std::sort(entries.begin(), entries.end());
    SparseVec kv;
    kv.dim = ncols_;
    kv.entries = std::move(entries);
    out.push_back(std::move(kv));
  }
  return echelonize(out, ncols_, F_);
}

Subspace echelonize(const std::vector<SparseVec>& rows, Coord dim, const PrimeField& F) {
  Eliminator e(dim, F);
  for (const auto& r : rows) e.add_row(r);
  return e.row_space();
}

Subspace subspace_sum(const Subspace& a, const Subspace& b, const PrimeField& F) {
  if (a.dim() != b.dim()) throw std::invalid_argument("ambient dimension mismatch");
  Eliminator e(a.dim(), F);
  for (const auto& r : a.basis()) e.add_row(r);
  for (const auto& r : b.basis()) e.add_row(r);
  return e.row_space();
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, const PrimeField& F) {
  if (a.dim() != b.dim()) throw std::invalid_argument("ambient dimension mismatch");
  if (a.rank() == 0 || b.rank() == 0) return Subspace::zero(a.dim());
  // unknowns (x, y) with sum x_i a_i + sum y_j b_j = 0; one row per ambient coord
  const Coord ra = a.rank(), rb = b.rank();
  std::vector<std::vector<std::pair<Coord, Scalar>>> per_coord(a.dim());
  for (Coord i = 0; i < ra; ++i)
    for (const auto& [c, v] : a.basis()[i].entries) per_coord[c].emplace_back(i, v);
  for (Coord j = 0; j < rb; ++j)
    for (const auto& [c, v] : b.basis()[j].entries) per_coord[c].emplace_back(ra + j, v);
  Eliminator e(ra + rb, F);
  for (Coord c = 0; c < a.dim(); ++c)
    if (!per_coord[c].empty()) e.add_row(std::move(per_coord[c]));
  Subspace K = e.kernel();
  std::vector<SparseVec> vecs;
  vecs.reserve(K.rank());
  for (const auto& kv : K.basis()) {
    std::vector<std::pair<Coord, Scalar>> raw;
    for (const auto& [i, ci] : kv.entries) {
      if (i >= ra) break;
      for (const auto& [c, v] : a.basis()[i].entries) raw.emplace_back(c, F.mul(ci, v));
    }
    SparseVec vec = make_sparse(a.dim(), std::move(raw), F);
    if (!vec.is_zero()) vecs.push_back(std::move(vec));
  }
  return echelonize(vecs, a.dim(), F);
}

bool membership(const SparseVec& v, const Subspace& s, const PrimeField& F) {
  if (v.dim != s.dim()) throw std::invalid_argument("ambient dimension mismatch");
  return s.contains(v, F);
}

Subspace nullspace(ConstraintStream stream, Coord unknowns, const PrimeField& F) {
  Eliminator e(unknowns, F);
  while (auto row = stream()) {
    if (row->dim != unknowns) throw std::invalid_argument("row dimension mismatch");
    e.add_row(*row);
  }
  return e.kernel();
}

DenseMatrix::DenseMatrix(Coord ncols, const PrimeField& F) : ncols_(ncols), F_(F) {
  if (ncols > 2000) throw std::invalid_argument("dense fallback limited to 2000 columns");
}

void DenseMatrix::add_row(const SparseVec& row) {
  if (row.dim != ncols_) throw std::invalid_argument("row dimension mismatch");
  std::vector<Scalar> r(ncols_, 0);
  for (const auto& [c, v] : row.entries) r[c] = v;
  rows_.push_back(std::move(r));
  reduced_ = false;
}

void DenseMatrix::add_row(const std::vector<Scalar>& row) {
  if (row.size() != ncols_) throw std::invalid_argument("row dimension mismatch");
  rows_.push_back(row);
  for (auto& v : rows_.back()) v %= F_.p();
  reduced_ = false;
}

void DenseMatrix::rref() {
  if (reduced_) return;
  pivots_.clear();
  std::size_t r = 0;
  for (Coord c = 0; c < ncols_ && r < rows_.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows_.size() && rows_[sel][c] == 0) ++sel;
    if (sel == rows_.size()) continue;
    std::swap(rows_[r], rows_[sel]);
    const Scalar s = F_.inv(rows_[r][c]);
    if (s != 1)
      for (auto& v : rows_[r]) v = F_.mul(v, s);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Scalar f = rows_[i][c];
      for (Coord k = c; k < ncols_; ++k)
        rows_[i][k] = F_.sub(rows_[i][k], F_.mul(f, rows_[r][k]));
    }
    pivots_.push_back(c);
    ++r;
  }
  rows_.resize(r);
  reduced_ = true;
}

Subspace DenseMatrix::row_space() {
  rref();
  std::vector<SparseVec> basis(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    basis[i].dim = ncols_;
    for (Coord c = 0; c < ncols_; ++c)
      if (rows_[i][c]) basis[i].entries.emplace_back(c, rows_[i][c]);
  }
  return Subspace(ncols_, std::move(basis), pivots_);
}

Subspace DenseMatrix::kernel() {
  rref();
  std::vector<bool> is_piv(ncols_, false);
  for (Coord c : pivots_) is_piv[c] = true;
  std::vector<SparseVec> out;
  for (Coord f = 0; f < ncols_; ++f) {
    if (is_piv[f]) continue;
    std::vector<std::pair<Coord, Scalar>> raw;
    raw.emplace_back(f, 1);
    for (std::size_t r = 0; r < pivots_.size(); ++r)
      if (rows_[r][f]) raw.emplace_back(pivots_[r], F_.neg(rows_[r][f]));
    out.push_back(make_sparse(ncols_, std::move(raw), F_));
  }
  return echelonize(out, ncols_, F_);
}

}  // namespace sho
