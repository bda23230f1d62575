#include "chiralp1/gamma.hpp"

namespace chiralp1 {

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::A: return "a";
        case Kind::B: return "b";
        case Kind::Phi: return "phi";
        case Kind::Psi: return "psi";
    }
    return "?";
}

int degree(const GenMode& x) {
    if (x.mode != 0) return x.mode;
    if (x.kind == Kind::B) return 1;
    if (x.kind == Kind::A) return -1;
    return 0;
}

std::string to_string(const GenMode& x) {
    return std::string(kind_name(x.kind)) + "(" + std::to_string(x.mode) + ")";
}

SignedGen eta(const GenMode& x) {
    int sign = (x.kind == Kind::A || x.kind == Kind::Psi) ? -1 : 1;
    return {sign, {x.kind, -x.mode}};
}

Scalar super_bracket(const GenMode& x, const GenMode& y) {
    if (x.mode + y.mode != 0) return 0;
    // [a_i, b_{-i}] = 1 and {psi_i, phi_{-i}} = 1; the reversed even pair
    // picks up the antisymmetry sign, the reversed odd pair does not.
    if (x.kind == Kind::A && y.kind == Kind::B) return 1;
    if (x.kind == Kind::B && y.kind == Kind::A) return -1;
    if (x.kind == Kind::Psi && y.kind == Kind::Phi) return 1;
    if (x.kind == Kind::Phi && y.kind == Kind::Psi) return 1;
    return 0;
}

}  // namespace chiralp1
