#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "chiralp1/charts.hpp"
#include "chiralp1/fields.hpp"
#include "chiralp1/pairing.hpp"
#include "test_support.hpp"

using namespace chiralp1;
using chiralp1::testing::Rng;

namespace {

VElement key_vec(const TermKey& k) { return term(k.mono, k.base); }

std::vector<TermKey> sample_keys(int max_w, int flo, int fhi, int dlo, int dhi) {
    std::vector<TermKey> keys;
    for (int w = 0; w <= max_w; ++w)
        for (int f = flo; f <= fhi; ++f)
            for (int d = dlo; d <= dhi; ++d)
                for (const TermKey& key : enumerate_basis({w, f, d}).keys) keys.push_back(key);
    return keys;
}

VElement materialize(const SparseVector& row, const SectorWindow& win) {
    VElement v;
    for (const auto& [col, c] : row.entries()) v.add(win.keys[col], c);
    return v;
}

}  // namespace

TEST_CASE("transition correction is solved uniquely") {
    const TransformedGenerators& g = transformed_generators();
    CHECK(g.lambda == Scalar(-2));
    CHECK(g.lambda_unique);
    CHECK(g.b_tilde == base_elem(-1));
    CHECK(g.phi_tilde == Scalar(-1) * base_elem(-2, true));
    CHECK(g.psi_tilde == Scalar(-1) * act(GenMode{Kind::Psi, -1}, base_elem(2)));
    // the corrected generator is the chiral lift of -b^2 d/db and coincides
    // with the lowering state of the derived sl2 triple
    VElement expect = Scalar(-1) * act(GenMode{Kind::A, -1}, base_elem(2)) +
                      Scalar(2) * act(GenMode{Kind::Psi, -1}, base_elem(1, true));
    CHECK(g.a_tilde == expect);
    const Sl2Modes& s = sl2_modes();
    CHECK(g.a_tilde == s.f.state);
}

TEST_CASE("transformed generators satisfy the defining relations") {
    const TransformedGenerators& g = transformed_generators();
    struct Entry {
        char tag;
        const VElement* state;
        bool odd;
    };
    const std::vector<Entry> gens = {{'a', &g.a_tilde, false},
                                     {'b', &g.b_tilde, false},
                                     {'p', &g.phi_tilde, true},
                                     {'s', &g.psi_tilde, true}};
    const std::map<std::pair<char, char>, Scalar> central = {
        {{'a', 'b'}, 1}, {{'b', 'a'}, -1}, {{'s', 'p'}, 1}, {{'p', 's'}, 1}};

    std::vector<TermKey> keys = sample_keys(2, -1, 2, -1, 1);
    REQUIRE(!keys.empty());
    for (const Entry& x : gens)
        for (const Entry& y : gens) {
            Scalar c = 0;
            if (auto it = central.find({x.tag, y.tag}); it != central.end()) c = it->second;
            for (int i = -2; i <= 2; ++i)
                for (int j : {-i, 1 - i}) {
                    Scalar want = i + j == 0 ? c : Scalar(0);
                    for (const TermKey& key : keys) {
                        VElement v = key_vec(key);
                        VElement lhs = mode_apply(*x.state, i, mode_apply(*y.state, j, v));
                        VElement rhs = mode_apply(*y.state, j, mode_apply(*x.state, i, v));
                        VElement r = x.odd && y.odd ? lhs + rhs : lhs - rhs;
                        CHECK(r == want * v);
                    }
                }
        }
}

TEST_CASE("involution on the base") {
    CHECK(sigma_base({3, false}) == base_elem(-3));
    CHECK(sigma_base({0, false}) == base_elem(0));
    CHECK(sigma_base({0, true}) == Scalar(-1) * base_elem(-2, true));
    CHECK(sigma_base({-1, true}) == Scalar(-1) * base_elem(-1, true));
    CHECK(sigma_base({2, true}) == Scalar(-1) * base_elem(-4, true));
    // double application returns the input
    for (int m = -4; m <= 4; ++m) {
        CHECK(sigma(sigma_base({m, false})) == base_elem(m));
        CHECK(sigma(sigma_base({m, true})) == base_elem(m, true));
    }
}

TEST_CASE("involution frozen images") {
    CHECK(sigma(key_vec({{{GenMode{Kind::B, -1}}}, {0, false}})) ==
          Scalar(-1) * key_vec({{{GenMode{Kind::B, -1}}}, {-2, false}}));
    CHECK(sigma(key_vec({{{GenMode{Kind::A, -1}}}, {0, false}})) == sl2_modes().f.state);
    // quantum correction spreads one monomial over two degrees
    VElement img = sigma(key_vec({{{GenMode{Kind::Phi, -1}}}, {1, false}}));
    VElement expect = Scalar(2) * key_vec({{{GenMode{Kind::B, -1}}}, {-4, true}}) +
                      Scalar(-1) * key_vec({{{GenMode{Kind::Phi, -1}}}, {-3, false}});
    CHECK(img == expect);
    CHECK(sigma(key_vec({{{GenMode{Kind::Psi, -1}}}, {0, true}})) ==
          Scalar(2) * key_vec({{{GenMode{Kind::B, -1}}}, {-1, false}}) +
              key_vec({{{GenMode{Kind::Psi, -1}}}, {0, true}}));
}

TEST_CASE("involution squares to the identity") {
    for (const TermKey& key : sample_keys(2, -2, 3, -3, 2)) {
        VElement v = key_vec(key);
        CHECK(sigma(sigma(v)) == v);
    }
    for (const TermKey& key : sample_keys(3, 0, 1, -1, 0)) {
        if (weight(key) < 3) continue;
        VElement v = key_vec(key);
        CHECK(sigma(sigma(v)) == v);
    }
}

TEST_CASE("involution transports modes to transformed modes") {
    const TransformedGenerators& g = transformed_generators();
    const std::map<Kind, const VElement*> tilde = {{Kind::A, &g.a_tilde},
                                                   {Kind::B, &g.b_tilde},
                                                   {Kind::Phi, &g.phi_tilde},
                                                   {Kind::Psi, &g.psi_tilde}};
    for (const TermKey& key : sample_keys(2, 0, 1, -1, 1)) {
        VElement v = key_vec(key);
        VElement sv = sigma(v);
        for (const auto& [kind, state] : tilde)
            for (int j = -2; j <= 2; ++j)
                CHECK(sigma(act(GenMode{kind, j}, v)) == mode_apply(*state, j, sv));
    }
}

TEST_CASE("involution negates the pairing") {
    Rng rng(611);
    CHECK(pair(sigma(base_elem(0)), sigma(base_elem(-1, true))) == Scalar(-1));
    for (int trial = 0; trial < 40; ++trial) {
        int w = rng.range(0, 2);
        int f = rng.range(-w, w + 1);
        int d = rng.range(-3, 2);
        VElement v, u;
        for (const TermKey& key : enumerate_basis({w, f, d}).keys)
            if (rng.range(0, 2) == 0) v.add(key, rng.rational());
        for (const TermKey& key : enumerate_basis({w, 1 - f, -1 - 2 * w - d}).keys)
            if (rng.range(0, 2) == 0) u.add(key, rng.rational());
        CHECK(pair(sigma(v), sigma(u)) == Scalar(-1) * pair(v, u));
    }
}

TEST_CASE("sector windows enumerate keys by degree") {
    SectorWindow win = sector_window(1, 0, -3, 3);
    REQUIRE(win.dim() > 0);
    for (int i = 0; i < win.dim(); ++i) {
        CHECK(weight(win.keys[i]) == 1);
        CHECK(fermion(win.keys[i]) == 0);
        CHECK(win.index.at(win.keys[i]) == i);
        if (i > 0) CHECK(degree(win.keys[i - 1]) <= degree(win.keys[i]));
    }
    int zeros = 0;
    for (const TermKey& key : win.keys)
        if (key.base.exponent >= 0) ++zeros;
    CHECK(chart_zero_sector(win).dim() == zeros);
}

TEST_CASE("infinity chart is exactly the involution image of the zero chart") {
    for (auto [w, f] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {1, 0}, {2, 0}}) {
        SectorWindow win = sector_window(w, f, -8, 8);
        SubspaceBasis zero = chart_zero_sector(win);
        SubspaceBasis infinity = chart_infinity_sector(win);
        // kernel rows map into the zero chart under sigma
        for (const SparseVector& row : infinity.rows()) {
            VElement img = sigma(materialize(row, win));
            for (const auto& [key, c] : img.terms) CHECK(key.base.exponent >= 0);
        }
        // and conversely every in-window image of a zero-chart monomial lands
        // in the kernel span
        for (const SparseVector& row : zero.rows()) {
            VElement img = sigma(materialize(row, win));
            bool inside = true;
            for (const auto& [key, c] : img.terms)
                if (!win.index.count(key)) inside = false;
            if (!inside) continue;
            CHECK(infinity.contains(sector_coordinates(img, win)));
        }
    }
}

TEST_CASE("piece envelope bounds the graded components of the infinity chart") {
    SectorWindow win = sector_window(1, 1, -6, 6);
    SubspaceBasis infinity = chart_infinity_sector(win);
    for (const SparseVector& row : infinity.rows()) {
        VElement v = materialize(row, win);
        for (const auto& [tri, comp] : components(v)) {
            SubspaceBasis env = chart_infinity_piece_envelope(tri, -15, 15);
            CHECK(env.contains(coordinates(comp, enumerate_basis(tri))));
        }
    }
}

TEST_CASE("weight-zero cohomology is the projective line's Hodge diamond") {
    CohomologyEntry functions = cech_cohomology(0, 0, -4, 4);
    CHECK(functions.h0 == 1);
    CHECK(functions.h1 == 0);
    CHECK(functions.stabilized);
    CHECK(functions.reps_stable);
    REQUIRE(functions.h0_basis.size() == 1);
    CHECK(functions.h0_basis[0] == base_elem(0));

    CohomologyEntry forms = cech_cohomology(0, 1, -4, 4);
    CHECK(forms.h0 == 0);
    CHECK(forms.h1 == 1);
    REQUIRE(forms.h1_reps.size() == 1);
    CHECK(forms.h1_reps[0] == TermKey{{}, {-1, true}});

    CohomologyPairing p = cohomology_pairing(functions, forms);
    REQUIRE(p.gram.size() == 1);
    CHECK(p.gram[0][0] == Scalar(1));
    CHECK(p.nondegenerate);
}

TEST_CASE("cohomology dimensions at low weight") {
    const int W = default_window(2);
    std::map<std::pair<int, int>, std::pair<int, int>> got;
    for (int w = 0; w <= 2; ++w)
        for (int f = -w - 1; f <= w + 2; ++f) {
            CohomologyEntry e = cech_cohomology_once(w, f, -W, W);
            if (e.h0 || e.h1) got[{w, f}] = {e.h0, e.h1};
        }
    const std::map<std::pair<int, int>, std::pair<int, int>> expect = {
        {{0, 0}, {1, 0}}, {{0, 1}, {0, 1}},  //
        {{1, -1}, {3, 0}}, {{1, 0}, {3, 0}}, {{1, 1}, {0, 3}}, {{1, 2}, {0, 3}},
        {{2, -1}, {9, 0}}, {{2, 0}, {9, 0}}, {{2, 1}, {0, 9}}, {{2, 2}, {0, 9}},
    };
    CHECK(got == expect);
}

TEST_CASE("weight-one section bases and class representatives") {
    CohomologyEntry odd = cech_cohomology_once(1, -1, -9, 9);
    std::vector<VElement> expect_odd = {
        key_vec({{{GenMode{Kind::Psi, -1}}}, {0, false}}),
        key_vec({{{GenMode{Kind::Psi, -1}}}, {1, false}}),
        key_vec({{{GenMode{Kind::Psi, -1}}}, {2, false}}),
    };
    CHECK(odd.h0_basis == expect_odd);

    // the even sections are the sl2 triple up to normalization
    CohomologyEntry even = cech_cohomology_once(1, 0, -9, 9);
    const Sl2Modes& s = sl2_modes();
    REQUIRE(even.h0_basis.size() == 3);
    CHECK(even.h0_basis[0] == s.e.state);
    CHECK(Scalar(2) * even.h0_basis[1] == s.h.state);
    CHECK(Scalar(2) * even.h0_basis[2] == s.f.state);

    CohomologyEntry classes = cech_cohomology_once(1, 1, -9, 9);
    std::vector<TermKey> expect_reps = {
        {{{GenMode{Kind::B, -1}}}, {-3, true}},
        {{{GenMode{Kind::B, -1}}}, {-2, true}},
        {{{GenMode{Kind::B, -1}}}, {-1, true}},
    };
    CHECK(classes.h1_reps == expect_reps);

    CohomologyEntry top = cech_cohomology_once(1, 2, -9, 9);
    std::vector<TermKey> expect_top = {
        {{{GenMode{Kind::Phi, -1}}}, {-3, true}},
        {{{GenMode{Kind::Phi, -1}}}, {-2, true}},
        {{{GenMode{Kind::Phi, -1}}}, {-1, true}},
    };
    CHECK(top.h1_reps == expect_top);
}

TEST_CASE("duality table and nondegenerate pairing through weight three") {
    const int W = default_window(3);
    for (int w = 0; w <= 3; ++w)
        for (int f = -w - 1; f <= w + 2; ++f) {
            CohomologyEntry a = cech_cohomology_once(w, f, -W, W);
            CohomologyEntry b = cech_cohomology_once(w, 1 - f, -W, W);
            CHECK(a.h0 == b.h1);
            if (a.h0 == 0) continue;
            CohomologyPairing p = cohomology_pairing(a, b);
            CHECK(p.rank == a.h0);
            CHECK(p.nondegenerate);
        }
}

TEST_CASE("weight-three sector dimensions") {
    const int W = default_window(3);
    CHECK(cech_cohomology_once(3, -2, -W, W).h0 == 5);
    CHECK(cech_cohomology_once(3, -1, -W, W).h0 == 27);
    CohomologyEntry mid = cech_cohomology_once(3, 0, -W, W);
    CHECK(mid.h0 == 27);
    CHECK(mid.h1 == 5);
    CohomologyEntry odd = cech_cohomology_once(3, 1, -W, W);
    CHECK(odd.h0 == 5);
    CHECK(odd.h1 == 27);
    CHECK(cech_cohomology_once(3, 2, -W, W).h1 == 27);
    CHECK(cech_cohomology_once(3, 3, -W, W).h1 == 5);
}

TEST_CASE("sections live in both charts") {
    const int W = default_window(2);
    for (int w = 0; w <= 2; ++w)
        for (int f = -w - 1; f <= w + 2; ++f) {
            CohomologyEntry e = cech_cohomology_once(w, f, -W, W);
            for (const VElement& v : e.h0_basis) {
                CHECK(in_chart_zero(v));
                CHECK(in_chart_zero(sigma(v)));
            }
        }
}

TEST_CASE("class representatives vanish against both chart subspaces") {
    // the pairing of a section with a class is independent of the chosen
    // representative because each chart annihilates itself
    CohomologyEntry secs = cech_cohomology_once(1, 0, -9, 9);
    SectorWindow win = sector_window(1, 1, -9, 9);
    SubspaceBasis infinity = chart_infinity_sector(win);
    for (const VElement& v : secs.h0_basis) {
        for (const TermKey& key : win.keys)
            if (key.base.exponent >= 0) CHECK(pair(v, key_vec(key)) == Scalar(0));
        for (const SparseVector& row : infinity.rows())
            CHECK(pair(v, materialize(row, win)) == Scalar(0));
    }
}

TEST_CASE("narrow windows keep dimensions but not representatives") {
    CohomologyEntry narrow = cech_cohomology(2, 1, -5, 5);
    CHECK(narrow.h0 == 0);
    CHECK(narrow.h1 == 9);
    CHECK(narrow.h1_enlarged == 9);
    CHECK(narrow.stabilized);
    CHECK(!narrow.reps_stable);

    CohomologyEntry wide = cech_cohomology(2, 1, -9, 9);
    CHECK(wide.stabilized);
    CHECK(wide.reps_stable);
}

TEST_CASE("default windows cover the class supports") {
    CHECK(default_window(0) == 4);
    CHECK(default_window(1) == 6);
    CHECK(default_window(3) == 12);
    // lowest representative degree observed at weight w is -(3w + 1)
    const int W = default_window(3);
    CohomologyEntry e = cech_cohomology_once(3, 1, -W, W);
    REQUIRE(!e.h1_reps.empty());
    CHECK(degree(e.h1_reps.front()) == -10);
    CHECK(degree(e.h1_reps.back()) == -4);
}
