#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "chiralp1/charts.hpp"
#include "chiralp1/cohomology.hpp"

namespace chiralp1 {

struct RunConfig {
    int max_weight = 3;
    int degree_pad = 4;
    std::string format = "plain";  // plain | json | csv
    std::set<std::string> suites;  // empty means all
    std::uint64_t seed = 2024;
    bool force_large = false;
};

// Canonical suite order for running and reporting.
const std::vector<std::string>& all_suites();

// Empty when the configuration is usable, otherwise the reason it is
// rejected (unknown format or suite, negative weight, or a truncation past
// the soft cap without the explicit override).
std::string validate_config(const RunConfig& config);

// Half-width of the degree window: the configured pad beyond the
// truncation weight, floored at what faithful class representatives need.
int half_window(const RunConfig& config);

struct CheckResult {
    std::string suite;
    std::string name;    // the identity being verified, self-describing
    std::string detail;  // ranges covered, counts, or the counterexample
    bool passed = true;
};

struct VerifyReport {
    RunConfig config;
    std::vector<CheckResult> checks;
    bool all_passed = true;
    std::string first_failure;  // suite/name of the first failed check
};

VerifyReport run_verify(const RunConfig& config);

struct CharacterRow {
    int weight = 0;
    int fermion = 0;
    int h0 = 0;
    int h1 = 0;
};

struct CharacterTable {
    RunConfig config;
    std::vector<CharacterRow> rows;  // realized sectors, sorted by (weight, fermion)
    bool duality_symmetric = true;   // row (w, f) always mirrors row (w, 1-f)
    bool stabilized = true;
};

CharacterTable character_table(const RunConfig& config);

struct PairingBlock {
    int weight = 0;
    int fermion = 0;  // fermion number of the section side
    int sections = 0;
    int classes = 0;
    std::vector<std::vector<Scalar>> gram;
    int rank = 0;
    bool full_rank = false;
};

struct PairingTable {
    RunConfig config;
    std::vector<PairingBlock> blocks;  // every fermion level, empty blocks explicit
    bool all_full_rank = true;
};

PairingTable pairing_table(const RunConfig& config);

struct CohomologySector {
    int weight = 0;
    int fermion = 0;
    int h0 = 0;
    int h1 = 0;
    int window_lo = 0;
    int window_hi = 0;
    bool stabilized = true;
    bool reps_stable = true;
    std::vector<std::string> representatives;
};

struct CohomologyTable {
    RunConfig config;
    std::vector<CohomologySector> sectors;
    bool all_stable = true;
};

CohomologyTable cohomology_table(const RunConfig& config);

// Serializers; byte-deterministic for a fixed input, and the json forms
// round-trip (parse then re-serialize reproduces the bytes).
std::string render_verify(const VerifyReport& report, const std::string& format);
std::string render_characters(const CharacterTable& table, const std::string& format);
std::string render_pairing(const PairingTable& table, const std::string& format);
std::string render_cohomology(const CohomologyTable& table, const std::string& format);

}  // namespace chiralp1
