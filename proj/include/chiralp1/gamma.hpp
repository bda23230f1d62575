#pragma once

#include <compare>
#include <string>

#include "chiralp1/scalar.hpp"

namespace chiralp1 {

// Generator kinds of the loop superalgebra: one even pair (a, b) and one
// odd pair (phi, psi).  The enum order is the canonical sort order used
// for PBW normal forms downstream.
enum class Kind { A, B, Phi, Psi };

inline bool is_odd(Kind k) { return k == Kind::Phi || k == Kind::Psi; }

const char* kind_name(Kind k);

// A single Fourier mode x_i of a generator.
struct GenMode {
    Kind kind;
    int mode;

    friend auto operator<=>(const GenMode&, const GenMode&) = default;
};

inline bool is_odd(const GenMode& x) { return is_odd(x.kind); }

// Conformal weight shift of the operator x_i on a graded module: x_{-j}
// raises weight by j.
inline int weight_shift(const GenMode& x) { return -x.mode; }

// Auxiliary Z-grading: deg(x_i) = i for i != 0; at mode zero only the
// even pair carries degree, deg(b_0) = 1 = -deg(a_0).
int degree(const GenMode& x);

// "a(-2)", "phi(0)", ... ; bijective with (kind, mode).
std::string to_string(const GenMode& x);

// Image of a generator under the antiinvolution eta, always a signed
// generator with coefficient +-1.
struct SignedGen {
    int sign;
    GenMode gen;

    friend bool operator==(const SignedGen&, const SignedGen&) = default;
};

// eta negates the mode index; the sign is -1 exactly for kinds A and Psi.
SignedGen eta(const GenMode& x);

// Central value c with [x, y] = c (supercommutator, i.e. anticommutator
// when both arguments are odd).  Nonzero only for a/b and psi/phi pairs
// with mode indices summing to zero.  Convention: [y,x] = -(-1)^{xy}[x,y].
Scalar super_bracket(const GenMode& x, const GenMode& y);

}  // namespace chiralp1
