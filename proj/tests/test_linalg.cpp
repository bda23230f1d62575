#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <vector>

#include "chiralp1/linalg.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace chiralp1;
using chiralp1::testing::Rng;

namespace {

SparseVector unit(int col) {
    SparseVector v;
    v.set(col, Scalar(1));
    return v;
}

// Independent dense oracle: fraction-free Bareiss elimination over integers
// (row denominators cleared first). Returns the rank.
int bareiss_rank(const std::vector<SparseVector>& vectors, int dim) {
    size_t n = vectors.size();
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(dim, 0));
    for (size_t i = 0; i < n; ++i) {
        mpz_class lcm = 1;
        for (const auto& [col, val] : vectors[i].entries()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), val.get_den_mpz_t());
        for (const auto& [col, val] : vectors[i].entries()) {
            mpq_class scaled = val * Scalar(lcm);
            m[i][col] = scaled.get_num();
        }
    }
    mpz_class prev = 1;
    size_t row = 0;
    for (int col = 0; col < dim && row < n; ++col) {
        size_t piv = row;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[row], m[piv]);
        for (size_t i = row + 1; i < n; ++i) {
            for (int j = col + 1; j < dim; ++j) {
                mpz_class t = m[row][col] * m[i][j] - m[i][col] * m[row][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[row][col];
        ++row;
    }
    return static_cast<int>(row);
}

std::vector<SparseVector> random_vectors(Rng& rng, int count, int dim, int sparsity) {
    std::vector<SparseVector> out;
    for (int i = 0; i < count; ++i) {
        SparseVector v;
        for (int j = 0; j < dim; ++j)
            if (rng.range(0, sparsity) == 0) v.set(j, rng.rational());
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

TEST_CASE("row_reduce on empty input over dim 3") {
    SubspaceBasis b = row_reduce({}, 3);
    CHECK(b.dim() == 0);
    CHECK(b.ambient_dim() == 3);
}

TEST_CASE("row_reduce of {e0, e0+e1} spans the full plane") {
    SparseVector v = unit(0);
    SparseVector w = unit(0);
    w.add(1, Scalar(1));
    SubspaceBasis b = row_reduce({v, w}, 2);
    REQUIRE(b.dim() == 2);
    CHECK(b.rows()[0] == unit(0));
    CHECK(b.rows()[1] == unit(1));
}

TEST_CASE("rank agrees with dense Bareiss oracle on random input") {
    for (uint64_t seed : {11u, 12u, 13u, 14u}) {
        Rng rng(seed);
        auto vecs = random_vectors(rng, 20, 10, 2);
        CHECK(rank_of(vecs, 10) == bareiss_rank(vecs, 10));
    }
}

TEST_CASE("row_reduce is idempotent and order-independent") {
    Rng rng(99);
    auto vecs = random_vectors(rng, 12, 8, 1);
    SubspaceBasis b = row_reduce(vecs, 8);
    SubspaceBasis again = row_reduce(b.rows(), 8);
    CHECK(again.rows() == b.rows());

    auto shuffled = vecs;
    std::reverse(shuffled.begin(), shuffled.end());
    SubspaceBasis c = row_reduce(shuffled, 8);
    CHECK(c.rows() == b.rows());
    CHECK(c.pivots() == b.pivots());
}

TEST_CASE("row_reduce rejects out-of-range indices") {
    CHECK_THROWS(row_reduce({unit(3)}, 3));
}

TEST_CASE("intersect of coordinate axes is zero") {
    SubspaceBasis u = row_reduce({unit(0)}, 2);
    SubspaceBasis w = row_reduce({unit(1)}, 2);
    CHECK(intersect(u, w).dim() == 0);
}

TEST_CASE("intersect is idempotent: U cap U = U") {
    Rng rng(7);
    auto vecs = random_vectors(rng, 5, 8, 1);
    SubspaceBasis u = row_reduce(vecs, 8);
    SubspaceBasis same = intersect(u, u);
    CHECK(same.rows() == u.rows());
}

TEST_CASE("intersect rejects mismatched ambient dimensions") {
    SubspaceBasis u = row_reduce({unit(0)}, 2);
    SubspaceBasis w = row_reduce({unit(0)}, 3);
    CHECK_THROWS(intersect(u, w));
}

TEST_CASE("dimension identity dim U + dim W = dim(U+W) + dim(U cap W)") {
    for (uint64_t seed : {21u, 22u, 23u, 24u, 25u}) {
        Rng rng(seed);
        auto uv = random_vectors(rng, rng.range(1, 6), 8, 1);
        auto wv = random_vectors(rng, rng.range(1, 6), 8, 1);
        SubspaceBasis u = row_reduce(uv, 8);
        SubspaceBasis w = row_reduce(wv, 8);
        auto sum_vecs = uv;
        sum_vecs.insert(sum_vecs.end(), wv.begin(), wv.end());
        int dim_sum = rank_of(sum_vecs, 8);
        int dim_int = intersect(u, w).dim();
        CHECK(u.dim() + w.dim() == dim_sum + dim_int);
    }
}

TEST_CASE("quotient_dim rank-nullity cases") {
    CHECK(quotient_dim(5, SubspaceBasis(5)) == 5);
    SubspaceBasis full = row_reduce({unit(0), unit(1), unit(2), unit(3), unit(4)}, 5);
    CHECK(quotient_dim(5, full) == 0);
    SubspaceBasis three = row_reduce({unit(1), unit(3), unit(5)}, 7);
    CHECK(quotient_dim(7, three) == 4);
}

TEST_CASE("kernel basis solves the system and has complementary dimension") {
    Rng rng(31);
    auto rows = random_vectors(rng, 4, 6, 1);
    auto ker = kernel(rows, 6);
    CHECK(static_cast<int>(ker.size()) == 6 - rank_of(rows, 6));
    for (const auto& k : ker) {
        for (const auto& row : rows) {
            Scalar dot(0);
            for (const auto& [col, val] : row.entries()) dot += val * k.at(col);
            CHECK(dot == 0);
        }
    }
}

TEST_CASE("solve_linear_system finds the unique solution of a regular system") {
    // x + 2y = 5, 3x - y = 1  =>  x = 1, y = 2
    SparseVector r1, r2;
    r1.set(0, Scalar(1));
    r1.set(1, Scalar(2));
    r2.set(0, Scalar(3));
    r2.set(1, Scalar(-1));
    auto sol = solve_linear_system({r1, r2}, {Scalar(5), Scalar(1)}, 2);
    REQUIRE(sol.consistent);
    REQUIRE(sol.unique);
    CHECK(sol.values[0] == 1);
    CHECK(sol.values[1] == 2);

    auto bad = solve_linear_system({r1, r1}, {Scalar(5), Scalar(6)}, 2);
    CHECK_FALSE(bad.consistent);

    auto under = solve_linear_system({r1}, {Scalar(5)}, 2);
    CHECK(under.consistent);
    CHECK_FALSE(under.unique);
    CHECK(under.free_unknowns == std::vector<int>{1});
}
