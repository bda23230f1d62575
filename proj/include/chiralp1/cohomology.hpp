#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chiralp1/charts.hpp"
#include "chiralp1/scalar.hpp"

namespace chiralp1 {

// Cohomology of the differential induced by the odd screening on the two
// Cech spaces, per (weight, fermion) sector.  The differential is not
// degree-homogeneous, so each sector aggregates a full degree window.
struct QCohomologyReport {
    int max_weight = 0;
    int window_lo = 0;
    int window_hi = 0;
    std::map<std::pair<int, int>, int> h0_q;  // (weight, fermion) -> dim, nonzero only
    std::map<std::pair<int, int>, int> h1_q;
    int total = 0;
    bool q_square_zero = true;
    bool images_contained = true;  // differential never escaped the computed spaces
    bool matches_de_rham = false;  // exactly two classes, both at weight zero
    std::string failure;
};

QCohomologyReport q_cohomology_check(int max_weight_val, int win_lo, int win_hi);

inline QCohomologyReport q_cohomology_check(int max_weight_val) {
    int w = default_window(max_weight_val);
    return q_cohomology_check(max_weight_val, -w, w);
}

struct IntegrabilityReport {
    int max_weight = 0;
    int bound = 0;
    bool h0_nilpotent = true;         // e0 and f0 orbits of H0 vectors terminate
    std::map<int, int> steps_needed;  // weight -> longest orbit observed
    bool contravariant = true;
    int samples = 0;
    bool witnesses_found = true;          // per weight, some vector escapes nilpotence
    std::map<int, std::string> witnesses;  // weight -> witness monomial
    bool h_diagonalizable = true;         // h0 on H0 splits into integer eigenspaces
    std::map<std::pair<int, int>, std::vector<Scalar>> h_eigenvalues;
    std::string failure;

    bool ok() const {
        return h0_nilpotent && contravariant && witnesses_found && h_diagonalizable;
    }
};

IntegrabilityReport integrability_check(int max_weight_val, int orbit_bound, std::uint64_t seed,
                                        int win_lo, int win_hi);

inline IntegrabilityReport integrability_check(int max_weight_val, int orbit_bound,
                                               std::uint64_t seed) {
    int w = default_window(max_weight_val);
    return integrability_check(max_weight_val, orbit_bound, seed, -w, w);
}

}  // namespace chiralp1
