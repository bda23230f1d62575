#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chiralp1/reports.hpp"

namespace py = pybind11;
using namespace chiralp1;

namespace {

RunConfig make_config(int max_weight, int degree_pad, std::uint64_t seed,
                      const std::vector<std::string>& suites, bool force_large) {
    RunConfig config;
    config.max_weight = max_weight;
    config.degree_pad = degree_pad;
    config.seed = seed;
    config.suites = std::set<std::string>(suites.begin(), suites.end());
    config.force_large = force_large;
    std::string rejection = validate_config(config);
    if (!rejection.empty()) throw std::invalid_argument(rejection);
    return config;
}

py::dict verify_py(int max_weight, int degree_pad, std::uint64_t seed,
                   const std::vector<std::string>& suites, bool force_large) {
    VerifyReport report = run_verify(make_config(max_weight, degree_pad, seed, suites,
                                                 force_large));
    py::list checks;
    for (const CheckResult& c : report.checks) {
        py::dict check;
        check["suite"] = c.suite;
        check["name"] = c.name;
        check["detail"] = c.detail;
        check["passed"] = c.passed;
        checks.append(check);
    }
    py::dict out;
    out["all_passed"] = report.all_passed;
    out["first_failure"] = report.first_failure;
    out["checks"] = checks;
    return out;
}

py::list characters_py(int max_weight, int degree_pad, bool force_large) {
    CharacterTable table = character_table(make_config(max_weight, degree_pad, 2024, {},
                                                       force_large));
    py::list rows;
    for (const CharacterRow& r : table.rows) {
        py::dict row;
        row["weight"] = r.weight;
        row["fermion"] = r.fermion;
        row["h0"] = r.h0;
        row["h1"] = r.h1;
        rows.append(row);
    }
    return rows;
}

py::list pairing_table_py(int max_weight, int degree_pad, bool force_large) {
    PairingTable table = pairing_table(make_config(max_weight, degree_pad, 2024, {},
                                                   force_large));
    py::list blocks;
    for (const PairingBlock& b : table.blocks) {
        py::list gram;
        for (const auto& row : b.gram) {
            py::list cells;
            for (const Scalar& c : row) cells.append(to_string(c));
            gram.append(cells);
        }
        py::dict block;
        block["weight"] = b.weight;
        block["fermion"] = b.fermion;
        block["sections"] = b.sections;
        block["classes"] = b.classes;
        block["rank"] = b.rank;
        block["full_rank"] = b.full_rank;
        block["gram"] = gram;
        blocks.append(block);
    }
    return blocks;
}

py::list cohomology_py(int max_weight, int degree_pad, bool force_large) {
    CohomologyTable table = cohomology_table(make_config(max_weight, degree_pad, 2024, {},
                                                         force_large));
    py::list sectors;
    for (const CohomologySector& s : table.sectors) {
        py::dict sector;
        sector["weight"] = s.weight;
        sector["fermion"] = s.fermion;
        sector["h0"] = s.h0;
        sector["h1"] = s.h1;
        sector["window_lo"] = s.window_lo;
        sector["window_hi"] = s.window_hi;
        sector["stabilized"] = s.stabilized;
        sector["reps_stable"] = s.reps_stable;
        sector["representatives"] = s.representatives;
        sectors.append(sector);
    }
    return sectors;
}

}  // namespace

PYBIND11_MODULE(chiralp1_core, m) {
    m.doc() =
        "Exact two-chart model of chiral differential forms on the projective "
        "line: verification suites, cohomology characters, and residue "
        "pairing tables.";

    m.def("verify", &verify_py, py::arg("max_weight") = 3, py::arg("degree_pad") = 4,
          py::arg("seed") = 2024, py::arg("suites") = std::vector<std::string>{},
          py::arg("force_large") = false,
          "Run the verification suites; returns checks with pass/fail and detail.");
    m.def("characters", &characters_py, py::arg("max_weight") = 3, py::arg("degree_pad") = 4,
          py::arg("force_large") = false,
          "Cohomology dimensions h0, h1 by (weight, fermion), populated sectors only.");
    m.def("pairing_table", &pairing_table_py, py::arg("max_weight") = 3,
          py::arg("degree_pad") = 4, py::arg("force_large") = false,
          "Residue pairing blocks between sections and dual classes; gram entries "
          "are exact rationals rendered as strings.");
    m.def("cohomology", &cohomology_py, py::arg("max_weight") = 3, py::arg("degree_pad") = 4,
          py::arg("force_large") = false,
          "Per-sector cohomology with window data and class representatives.");
    m.def("suite_names", [] { return all_suites(); },
          "Names accepted by verify(suites=...).");
}
