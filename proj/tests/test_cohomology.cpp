#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <utility>
#include <vector>

#include "chiralp1/cohomology.hpp"
#include "chiralp1/fields.hpp"

using namespace chiralp1;

TEST_CASE("screening cohomology at weight zero alone") {
    QCohomologyReport rep = q_cohomology_check(0);
    CHECK(rep.q_square_zero);
    CHECK(rep.images_contained);
    CHECK(rep.total == 2);
    const std::map<std::pair<int, int>, int> sections{{{0, 0}, 1}};
    const std::map<std::pair<int, int>, int> classes{{{0, 1}, 1}};
    CHECK(rep.h0_q == sections);
    CHECK(rep.h1_q == classes);
    CHECK(rep.matches_de_rham);
    CHECK(rep.failure.empty());
}

TEST_CASE("screening cohomology collapses to the de Rham picture") {
    QCohomologyReport rep = q_cohomology_check(2);
    CHECK(rep.max_weight == 2);
    CHECK(rep.window_lo == -default_window(2));
    CHECK(rep.q_square_zero);
    CHECK(rep.images_contained);
    // everything at positive weight cancels; what survives is one function
    // class and one form class, both at weight zero
    CHECK(rep.total == 2);
    const std::map<std::pair<int, int>, int> sections{{{0, 0}, 1}};
    const std::map<std::pair<int, int>, int> classes{{{0, 1}, 1}};
    CHECK(rep.h0_q == sections);
    CHECK(rep.h1_q == classes);
    CHECK(rep.matches_de_rham);
    CHECK(rep.failure.empty());
}

TEST_CASE("zero-mode orbits on sections terminate within the linear bound") {
    IntegrabilityReport rep = integrability_check(2, 9, 20240817);
    CHECK(rep.h0_nilpotent);
    const std::map<int, int> steps{{0, 1}, {1, 3}, {2, 5}};
    CHECK(rep.steps_needed == steps);
    for (const auto& [w, n] : rep.steps_needed) CHECK(n <= 2 * w + 3);
    CHECK(rep.contravariant);
    CHECK(rep.samples == 240);
    CHECK(rep.witnesses_found);
    REQUIRE(rep.witnesses.size() == 3);
    CHECK(rep.witnesses.at(0) == "b^1");
    CHECK(rep.witnesses.at(1) == "psi(-1) . b^3");
    CHECK(!rep.witnesses.at(2).empty());
    CHECK(rep.failure.empty());
    CHECK(rep.ok());
}

TEST_CASE("h0 acts semisimply with integer spectra on sections") {
    IntegrabilityReport rep = integrability_check(2, 9, 31337);
    CHECK(rep.h_diagonalizable);
    const std::map<std::pair<int, int>, std::vector<Scalar>> expect = {
        {{0, 0}, {0}},
        {{1, -1}, {-2, 0, 2}},
        {{1, 0}, {-2, 0, 2}},
        {{2, -1}, {-4, -2, -2, 0, 0, 0, 2, 2, 4}},
        {{2, 0}, {-4, -2, -2, 0, 0, 0, 2, 2, 4}},
    };
    CHECK(rep.h_eigenvalues == expect);
}

TEST_CASE("an insufficient orbit bound is reported, not hidden") {
    IntegrabilityReport rep = integrability_check(1, 1, 7);
    CHECK(!rep.h0_nilpotent);
    CHECK(!rep.ok());
    CHECK(!rep.failure.empty());
}
