#pragma once

#include <map>
#include <string>
#include <vector>

#include "chiralp1/fields.hpp"
#include "chiralp1/linalg.hpp"
#include "chiralp1/module.hpp"

namespace chiralp1 {

// Generators pulled back through the coordinate flip b -> 1/b.  The three
// classical pullbacks are fixed; the vector-field generator needs a
// correction term whose coefficient lambda is solved from the requirement
// that the transformed modes satisfy the defining relations.
struct TransformedGenerators {
    VElement b_tilde;    // state of b^-1
    VElement phi_tilde;  // state of -b^-2 db
    VElement psi_tilde;  // -(psi(-1) . b^2)
    VElement a_tilde;    // -(a(-1) . b^2) + lambda * (-(psi(-1) . b db))
    Scalar lambda = 0;
    bool lambda_unique = true;
};

// Solves lambda and returns the four states; throws std::runtime_error if
// the constraint system has no solution.
TransformedGenerators derive_transformed_generators();

// Cached accessor (the derivation is deterministic and reused everywhere).
const TransformedGenerators& transformed_generators();

// Classical pullback on the weight-zero base: b^m -> b^-m,
// b^m db -> -b^(-m-2) db.
VElement sigma_base(const BaseMon& base);

// The chart involution on the whole module: transformed-state modes applied
// at the original mode indices over the pulled-back base.  Preserves weight
// and fermion number but mixes degrees: quantum corrections spread an image
// over several degrees, so the involution is studied per (weight, fermion)
// sector rather than per tri-graded piece.
VElement sigma(const VElement& v);

// Ordered ambient basis of one (weight, fermion) sector over a degree
// window: keys sorted by degree, then by normal form.
struct SectorWindow {
    int weight = 0;
    int fermion = 0;
    int deg_lo = 0;
    int deg_hi = 0;
    std::vector<TermKey> keys;
    std::map<TermKey, int> index;

    int dim() const { return static_cast<int>(keys.size()); }
};

SectorWindow sector_window(int weight_val, int fermion_val, int deg_lo, int deg_hi);

// Coordinates of v in the window basis; throws std::invalid_argument if v
// has a term outside the window.
SparseVector sector_coordinates(const VElement& v, const SectorWindow& win);

// Sections regular at the origin: the keys with non-negative base exponent.
SubspaceBasis chart_zero_sector(const SectorWindow& win);

// Sections regular at infinity, inside the window.  Since the involution
// squares to the identity, x lies in the image of the chart-zero space
// exactly when sigma(x) is regular at the origin; the image of sigma(x) is
// a complete vector, so this kernel characterization is exact and needs no
// truncation of its own.
SubspaceBasis chart_infinity_sector(const SectorWindow& win);

// Degree-graded envelope of the infinity chart inside one piece: the span
// of the piece components of sigma over chart-zero inputs.  Because sigma
// is not degree-homogeneous this only bounds the graded piece from above;
// kept as a diagnostic for the component-collection route.
SubspaceBasis chart_infinity_piece_envelope(const TriDegree& t, int src_lo, int src_hi);

struct CohomologyEntry {
    int weight = 0;
    int fermion = 0;
    int window_lo = 0;
    int window_hi = 0;
    int enlarged_lo = 0;
    int enlarged_hi = 0;
    int h0 = 0;
    int h1 = 0;
    int h0_enlarged = 0;
    int h1_enlarged = 0;
    bool stabilized = false;   // dims unchanged under the enlargement re-run
    bool reps_stable = false;  // representative keys unchanged as well
    SectorWindow frame;                   // primary-window ambient basis
    std::vector<SparseVector> chart_sum;  // reduced basis of V0 + Vinf in frame coordinates
    std::vector<VElement> h0_basis;       // reduced basis of the intersection
    std::vector<TermKey> h1_reps;         // smallest monomials completing the chart sum
};

// Two-chart Cech cohomology of one (weight, fermion) sector over a degree
// window, with a stabilization re-run over the window widened by 4 on both
// sides.
CohomologyEntry cech_cohomology(int weight_val, int fermion_val, int win_lo, int win_hi);

// Same computation without the stabilization re-run; the enlarged fields
// mirror the primary ones and the stability flags stay false.
CohomologyEntry cech_cohomology_once(int weight_val, int fermion_val, int win_lo, int win_hi);

// Default degree half-window for a given truncation weight: wide enough
// for the quotient classes, whose representatives reach degree
// -(3 weight + 1).
inline int default_window(int max_weight_val) {
    int duality_reach = 3 * max_weight_val + 3;
    return duality_reach > max_weight_val + 4 ? duality_reach : max_weight_val + 4;
}

struct CohomologyPairing {
    int weight = 0;
    int fermion = 0;  // fermion number of the H0 side
    std::vector<std::vector<Scalar>> gram;
    int rank = 0;
    bool nondegenerate = false;
};

// Pairs H0 basis vectors of one sector against H1 representatives of the
// complementary sector; well-defined because each chart subspace
// annihilates itself under the pairing.
CohomologyPairing cohomology_pairing(const CohomologyEntry& h0_side, const CohomologyEntry& h1_side);

}  // namespace chiralp1
