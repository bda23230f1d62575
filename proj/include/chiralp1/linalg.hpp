#pragma once

#include <map>
#include <utility>
#include <vector>

#include "chiralp1/scalar.hpp"

namespace chiralp1 {

// Sparse rational vector indexed by non-negative columns. Invariant: no
// stored zero coefficients, so is_zero() == entries().empty().
class SparseVector {
   public:
    SparseVector() = default;

    const std::map<int, Scalar>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    Scalar at(int col) const;
    void set(int col, Scalar value);
    void add(int col, const Scalar& value);

    // this += c * other
    void axpy(const Scalar& c, const SparseVector& other);
    void scale(const Scalar& c);

    // Leading (lowest-column) entry; vector must be nonzero.
    std::pair<int, Scalar> leading() const;

    bool operator==(const SparseVector& o) const { return entries_ == o.entries_; }

   private:
    std::map<int, Scalar> entries_;
};

// Reduced row echelon basis of a subspace of Q^ambient: rows with strictly
// increasing pivot columns, each pivot 1 and alone in its column.
class SubspaceBasis {
   public:
    SubspaceBasis() = default;
    explicit SubspaceBasis(int ambient_dim) : ambient_dim_(ambient_dim) {}

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVector>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Residual of v after elimination against the basis; zero iff v lies in
    // the span.
    SparseVector reduce(const SparseVector& v) const;
    bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }

    // Inserts v if independent, keeping RREF form. Returns true if dim grew.
    bool insert(SparseVector v);

   private:
    int ambient_dim_ = 0;
    std::vector<SparseVector> rows_;
    std::vector<int> pivots_;
};

SubspaceBasis row_reduce(const std::vector<SparseVector>& vectors, int ambient_dim);

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b);

int quotient_dim(int ambient_dim, const SubspaceBasis& sub);

// Kernel of the matrix with the given rows acting on unknowns 0..ncols-1.
// Deterministic basis: one vector per free column, unit at that column.
std::vector<SparseVector> kernel(const std::vector<SparseVector>& rows, int ncols);

// Exact solve of  sum_j lhs_row[j] * x_j = rhs_row  over all rows.
struct LinearSolution {
    bool consistent = false;
    bool unique = false;
    std::vector<Scalar> values;  // particular solution, free unknowns set to 0
    std::vector<int> free_unknowns;
};
LinearSolution solve_linear_system(const std::vector<SparseVector>& lhs_rows,
                                   const std::vector<Scalar>& rhs, int nunknowns);

int rank_of(const std::vector<SparseVector>& vectors, int ambient_dim);

}  // namespace chiralp1
