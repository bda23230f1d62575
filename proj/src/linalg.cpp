#include "chiralp1/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace chiralp1 {

Scalar SparseVector::at(int col) const {
    auto it = entries_.find(col);
    return it == entries_.end() ? Scalar(0) : it->second;
}

void SparseVector::set(int col, Scalar value) {
    if (value == 0)
        entries_.erase(col);
    else
        entries_[col] = std::move(value);
}

void SparseVector::add(int col, const Scalar& value) {
    auto it = entries_.find(col);
    if (it == entries_.end()) {
        if (value != 0) entries_.emplace(col, value);
        return;
    }
    it->second += value;
    if (it->second == 0) entries_.erase(it);
}

void SparseVector::axpy(const Scalar& c, const SparseVector& other) {
    if (c == 0) return;
    for (const auto& [col, val] : other.entries_) add(col, c * val);
}

void SparseVector::scale(const Scalar& c) {
    if (c == 0) {
        entries_.clear();
        return;
    }
    for (auto& [col, val] : entries_) val *= c;
}

std::pair<int, Scalar> SparseVector::leading() const {
    assert(!entries_.empty());
    return *entries_.begin();
}

SparseVector SubspaceBasis::reduce(const SparseVector& v) const {
    SparseVector r = v;
    for (size_t i = 0; i < rows_.size(); ++i) {
        Scalar c = r.at(pivots_[i]);
        if (c != 0) r.axpy(-c, rows_[i]);
    }
    return r;
}

bool SubspaceBasis::insert(SparseVector v) {
    if (!v.is_zero()) {
        int max_col = v.entries().rbegin()->first;
        int min_col = v.entries().begin()->first;
        if (min_col < 0 || max_col >= ambient_dim_)
            throw std::invalid_argument("SubspaceBasis: vector index out of ambient range");
    }
    SparseVector r = reduce(v);
    if (r.is_zero()) return false;
    auto [pivot, lead] = r.leading();
    r.scale(Scalar(1) / lead);
    // Eliminate the new pivot from the existing rows.
    for (auto& row : rows_) {
        Scalar c = row.at(pivot);
        if (c != 0) row.axpy(-c, r);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    size_t idx = static_cast<size_t>(pos - pivots_.begin());
    pivots_.insert(pos, pivot);
    rows_.insert(rows_.begin() + idx, std::move(r));
    return true;
}

SubspaceBasis row_reduce(const std::vector<SparseVector>& vectors, int ambient_dim) {
    SubspaceBasis basis(ambient_dim);
    for (const auto& v : vectors) basis.insert(v);
    return basis;
}

int rank_of(const std::vector<SparseVector>& vectors, int ambient_dim) {
    return row_reduce(vectors, ambient_dim).dim();
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    // Zassenhaus: reduce rows [u|u] for u in a and [w|0] for w in b; rows of
    // the echelon form whose left block vanishes have right blocks spanning
    // the intersection.
    int offset = a.ambient_dim();

    std::vector<SparseVector> stacked;
    for (const auto& u : a.rows()) {
        SparseVector row = u;
        for (const auto& [col, val] : u.entries()) row.set(col + offset, val);
        stacked.push_back(std::move(row));
    }
    for (const auto& w : b.rows()) stacked.push_back(w);

    SubspaceBasis big = row_reduce(stacked, 2 * offset);
    std::vector<SparseVector> inter;
    for (const auto& row : big.rows()) {
        if (!row.is_zero() && row.entries().begin()->first >= offset) {
            SparseVector v;
            for (const auto& [col, val] : row.entries()) v.set(col - offset, val);
            inter.push_back(std::move(v));
        }
    }
    return row_reduce(inter, a.ambient_dim());
}

int quotient_dim(int ambient_dim, const SubspaceBasis& sub) {
    if (sub.dim() > ambient_dim)
        throw std::invalid_argument("quotient_dim: subspace larger than ambient space");
    return ambient_dim - sub.dim();
}

std::vector<SparseVector> kernel(const std::vector<SparseVector>& rows, int ncols) {
    SubspaceBasis rref = row_reduce(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : rref.pivots()) is_pivot[p] = true;
    std::vector<SparseVector> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        SparseVector v;
        v.set(f, Scalar(1));
        for (size_t i = 0; i < rref.rows().size(); ++i) {
            Scalar c = rref.rows()[i].at(f);
            if (c != 0) v.set(rref.pivots()[i], -c);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

LinearSolution solve_linear_system(const std::vector<SparseVector>& lhs_rows,
                                   const std::vector<Scalar>& rhs, int nunknowns) {
    assert(lhs_rows.size() == rhs.size());
    std::vector<SparseVector> aug;
    aug.reserve(lhs_rows.size());
    for (size_t i = 0; i < lhs_rows.size(); ++i) {
        SparseVector row = lhs_rows[i];
        row.set(nunknowns, rhs[i]);
        aug.push_back(std::move(row));
    }
    SubspaceBasis rref = row_reduce(aug, nunknowns + 1);

    LinearSolution sol;
    for (int p : rref.pivots())
        if (p == nunknowns) return sol;  // 0 = 1 row: inconsistent
    sol.consistent = true;
    sol.values.assign(nunknowns, Scalar(0));
    std::vector<bool> is_pivot(nunknowns, false);
    for (size_t i = 0; i < rref.rows().size(); ++i) {
        int p = rref.pivots()[i];
        is_pivot[p] = true;
        sol.values[p] = rref.rows()[i].at(nunknowns);
    }
    for (int j = 0; j < nunknowns; ++j)
        if (!is_pivot[j]) sol.free_unknowns.push_back(j);
    sol.unique = sol.free_unknowns.empty();
    return sol;
}

}  // namespace chiralp1
