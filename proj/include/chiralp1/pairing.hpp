#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chiralp1/module.hpp"

namespace chiralp1 {

// Residue pairing of weight-zero elements: the coefficient of b^-1 db in
// the wedge product.  Only function-against-form cross terms survive.
Scalar residue_pair(const LaurentForm& nu, const LaurentForm& mu);

// Contravariant pairing on the whole module: creation factors of the left
// argument move to the right argument through the antiinvolution, with a
// Koszul sign against the parity of what remains on the left.  Vanishes
// across distinct conformal weights.
Scalar pair(const VElement& v, const VElement& w);

struct PairingReport {
    TriDegree left;
    TriDegree right;
    std::vector<std::vector<Scalar>> gram;
    int rank = 0;
    bool nondegenerate = false;  // square and full rank
};

PairingReport gram_matrix(const TriDegree& left, const TriDegree& right);

// Empirical search for the piece dual to `piece`: which (fermion, degree)
// companions inside the window produce nonzero pairings, and which one
// gives a square full-rank gram block.  The complement is discovered, not
// assumed.
struct ComplementScan {
    TriDegree piece;
    std::vector<TriDegree> nonzero_partners;
    std::optional<TriDegree> full_rank_partner;
};

ComplementScan scan_complement(const TriDegree& piece, int deg_lo, int deg_hi);

struct ContravarianceReport {
    int samples = 0;
    int failures = 0;
    std::string counterexample;  // first failing instance, empty if none

    bool ok() const { return failures == 0; }
};

// Seeded property check: generator modes move across the pairing through
// the antiinvolution from either side, and the pairing is supersymmetric.
ContravarianceReport contravariance_check(int sample_count, std::uint64_t seed);

}  // namespace chiralp1
