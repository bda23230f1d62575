#pragma once

#include <map>

#include "chiralp1/module.hpp"

namespace chiralp1 {

// Composite states are VElements in a restricted grammar: every creation
// factor must be a(-1) or psi(-1); b and phi content lives in the Laurent
// base (b exponent and db bit).  These are exactly the states whose
// fields the two-chart computation needs.
bool supported_state(const VElement& u);

// n-th Fourier mode of the field of the state u, applied to v.  Shifts
// conformal weight by -n.  Recursive normally ordered expansion: the
// leading factor x of u contributes creation modes x_i (i <= -1) on the
// left and annihilation modes (i >= 0) on the right of the remaining
// field's modes; the Laurent base is handled by expand_laurent_field.
// Throws std::domain_error on states outside the grammar.
VElement mode_apply(const VElement& u, int n, const VElement& v);

// Mode n of the field of f(b) (db if form_bit), applied to v.  Negative
// exponents expand binomially around the invertible zero mode; the sum
// terminates because positive modes must contract a-factors of v and the
// output weight bounds the creation content.
VElement expand_laurent_field(const std::map<int, Scalar>& fun, bool form_bit, int n,
                              const VElement& v);

// Image of the mode operator u_n under the antiinvolution, applied to v.
// Shifts conformal weight by +n.  Defined by signed order reversal of the
// normally ordered expansion; on pure Laurent states the image of mode n
// is mode -n of the same state.
VElement eta_mode_apply(const VElement& u, int n, const VElement& v);

struct ModeOperator {
    VElement state;
    int mode = 0;

    VElement apply(const VElement& v) const { return mode_apply(state, mode, v); }
    VElement apply_eta(const VElement& v) const { return eta_mode_apply(state, mode, v); }
};

// Differential Q = sum_j phi_{-j} a_j: raises fermion number by 1,
// preserves conformal weight, squares to zero, and restricts to the de
// Rham differential on weight 0.
VElement q_diff(const VElement& v);

// Odd operator G0 = sum_j c_j psi_{-j} b_j with QG0 + G0Q = L0.  The
// coefficients are solved, weight by weight, from that identity.
struct HomotopyOperator {
    std::map<int, Scalar> coeffs;  // j -> c_j, |j| <= solved weight
    bool unique = true;

    VElement apply(const VElement& v) const;
};

// Solves c_j for |j| <= max_weight_val.  At each weight w the identity on
// the weight-w pieces is an overdetermined linear system in c_{+w}, c_{-w}
// whose consistency re-verifies the lower coefficients.  Throws
// std::runtime_error if no solution exists.
HomotopyOperator derive_homotopy(int max_weight_val);

// Applies the homotopy with coefficients solved up to the weight of v
// (cached across calls).
VElement g_zero(const VElement& v);

// Zero modes of the chiral lifts of d/db, -2b d/db, -b^2 d/db.  The
// fermionic correction coefficients are solved from the bracket relations
// [h,e] = 2e, [e,f] = h together with the classical weight-zero action;
// [h,f] = -2f is left as an independent check.
struct Sl2Modes {
    ModeOperator e, h, f;
    Scalar alpha, beta, gamma, delta;  // h = alpha a(-1).b + beta psi(-1).db,
                                       // f = gamma a(-1).b^2 + delta psi(-1).b db
    bool unique = true;
};
Sl2Modes sl2_modes();

}  // namespace chiralp1
