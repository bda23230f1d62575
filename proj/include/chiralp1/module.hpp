#pragma once

#include <map>
#include <string>
#include <vector>

#include "chiralp1/gamma.hpp"
#include "chiralp1/linalg.hpp"
#include "chiralp1/scalar.hpp"

namespace chiralp1 {

// Weight-zero base monomial b^m or b^m db.
struct BaseMon {
    int exponent = 0;
    bool has_db = false;

    friend auto operator<=>(const BaseMon&, const BaseMon&) = default;
};

// Laurent differential form on the punctured line: finite sums of b^m and
// b^m db.
struct LaurentForm {
    std::map<int, Scalar> fun_part;   // coefficient of b^m
    std::map<int, Scalar> form_part;  // coefficient of b^m db
};

// Sorted product of creation (negative-mode) generators.  Order: kind
// A < B < Phi < Psi, then mode ascending; odd factors never repeat.
struct CreationMonomial {
    std::vector<GenMode> factors;

    friend auto operator<=>(const CreationMonomial&, const CreationMonomial&) = default;
};

struct TermKey {
    CreationMonomial mono;
    BaseMon base;

    friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

struct TriDegree {
    int weight = 0;
    int fermion = 0;
    int degree = 0;

    friend auto operator<=>(const TriDegree&, const TriDegree&) = default;
};

int weight(const TermKey& t);
int fermion(const TermKey& t);
int degree(const TermKey& t);
TriDegree tri_degree(const TermKey& t);

// Element of the induced module: finite rational combination of normal
// form terms.  The map never stores zero coefficients.
struct VElement {
    std::map<TermKey, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const TermKey& key, const Scalar& c);
    VElement& operator+=(const VElement& other);
    VElement& operator-=(const VElement& other);
    VElement& operator*=(const Scalar& c);

    friend bool operator==(const VElement&, const VElement&) = default;
};

VElement operator+(VElement lhs, const VElement& rhs);
VElement operator-(VElement lhs, const VElement& rhs);
VElement operator*(const Scalar& c, VElement v);

// Single-term constructors.
VElement term(const CreationMonomial& mono, const BaseMon& base, const Scalar& c = 1);
VElement base_elem(int exponent, bool has_db = false, const Scalar& c = 1);

// Largest conformal weight among the terms (0 for the zero element).
int max_weight(const VElement& v);

// Homogeneous component in one trigraded piece.
VElement component(const VElement& v, const TriDegree& t);

// All homogeneous components, keyed by piece.
std::map<TriDegree, VElement> components(const VElement& v);

// Module action of one generator mode.  Creation modes insert into the
// sorted monomial with transposition signs; mode >= 0 commutes rightward,
// contracting via the bracket, and then acts on the base (zero modes:
// b multiplies, a differentiates, phi wedges db, psi contracts db;
// positive modes kill the base).
VElement act(const GenMode& x, const VElement& v);

// sign * act(gen, v); convenient for eta images.
VElement act(const SignedGen& x, const VElement& v);

// Normally ordered weight operator; diagonal with eigenvalue equal to the
// conformal weight on homogeneous elements.
VElement l_zero(const VElement& v);

// Ordered basis of one finite-dimensional trigraded piece.
struct PieceBasis {
    TriDegree tri;
    std::vector<TermKey> keys;      // sorted
    std::map<TermKey, int> index;   // key -> position in keys

    int dim() const { return static_cast<int>(keys.size()); }
};

// All normal-form terms of the given tridegree; the base exponent is
// forced to degree + weight.
PieceBasis enumerate_basis(const TriDegree& t);

// Coordinates of v in a piece basis; throws std::invalid_argument if v
// has a term outside the piece.
SparseVector coordinates(const VElement& v, const PieceBasis& piece);

// All sorted creation monomials of the given total weight.
std::vector<CreationMonomial> creation_monomials(int weight);

// True iff every term's base exponent is >= 0 (regular at b = 0).
bool in_chart_zero(const VElement& v);

// Joint kernel of all generator modes x_j with 0 < j <= weight, one
// subspace per trigraded piece with degrees in [deg_lo, deg_hi].
std::map<TriDegree, SubspaceBasis> singular_subspace(int weight_val, int deg_lo, int deg_hi);

// Weight-zero part of v as a Laurent form (terms with creation factors
// are ignored).
LaurentForm weight_zero_part(const VElement& v);
VElement from_laurent(const LaurentForm& f);

// Deterministic rendering, e.g. "a(-2) phi(-1) . b^3 db"; bijective with
// the normal form.
std::string to_string(const TermKey& t);
std::string to_string(const VElement& v);

}  // namespace chiralp1
