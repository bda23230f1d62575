#include "chiralp1/reports.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "chiralp1/fields.hpp"
#include "chiralp1/pairing.hpp"
#include <json.hpp>

namespace chiralp1 {

namespace {

using Checks = std::vector<CheckResult>;
using nlohmann::json;

constexpr int kSoftWeightCap = 6;

const std::vector<Kind> kKinds = {Kind::A, Kind::B, Kind::Phi, Kind::Psi};

// Fermion numbers realized at a given weight; outside this band every
// trigraded piece is empty.
int fermion_lo(int w) { return -w - 1; }
int fermion_hi(int w) { return w + 2; }

void add(Checks& out, std::string suite, std::string name, bool passed, std::string detail) {
    out.push_back({std::move(suite), std::move(name), std::move(detail), passed});
}

std::vector<TermKey> piece_keys(int w, int f, int d_lo, int d_hi) {
    std::vector<TermKey> keys;
    for (int d = d_lo; d <= d_hi; ++d) {
        PieceBasis pb = enumerate_basis({w, f, d});
        keys.insert(keys.end(), pb.keys.begin(), pb.keys.end());
    }
    return keys;
}

std::vector<TermKey> weight_keys(int w, int d_lo, int d_hi) {
    std::vector<TermKey> keys;
    for (int f = fermion_lo(w); f <= fermion_hi(w); ++f) {
        std::vector<TermKey> piece = piece_keys(w, f, d_lo, d_hi);
        keys.insert(keys.end(), piece.begin(), piece.end());
    }
    return keys;
}

// The canonical state of each generator: the image of x_{-weight(x)} on
// the vacuum, whose field reproduces the generator's modes.
VElement generator_state(Kind k) {
    switch (k) {
        case Kind::A: return term({{GenMode{Kind::A, -1}}}, {0, false});
        case Kind::B: return base_elem(1, false);
        case Kind::Phi: return base_elem(0, true);
        case Kind::Psi: return term({{GenMode{Kind::Psi, -1}}}, {0, false});
    }
    return {};
}

int generator_weight(Kind k) { return (k == Kind::A || k == Kind::Psi) ? 1 : 0; }

std::string fail_at(const TermKey& key, const std::string& what) {
    return what + " at " + to_string(key);
}

// ---------------------------------------------------------------- algebra

Checks suite_algebra(const RunConfig& config) {
    Checks out;
    const std::string s = "algebra";

    // Central bracket table: only a/b and psi/phi pairs at opposite modes
    // survive, with the orientation signs of the table.
    {
        bool ok = true;
        int pairs = 0;
        std::string detail;
        for (Kind kx : kKinds) {
            for (Kind ky : kKinds) {
                for (int i = -3; i <= 3 && ok; ++i) {
                    for (int j = -3; j <= 3; ++j) {
                        GenMode x{kx, i}, y{ky, j};
                        Scalar c = super_bracket(x, y);
                        Scalar expected = 0;
                        if (i + j == 0) {
                            if (kx == Kind::A && ky == Kind::B) expected = 1;
                            if (kx == Kind::B && ky == Kind::A) expected = -1;
                            if (kx == Kind::Psi && ky == Kind::Phi) expected = 1;
                            if (kx == Kind::Phi && ky == Kind::Psi) expected = 1;
                        }
                        int koszul = (is_odd(x) && is_odd(y)) ? -1 : 1;
                        if (c != expected || super_bracket(y, x) != Scalar(-koszul) * c) {
                            ok = false;
                            detail = "mismatch at [" + to_string(x) + ", " + to_string(y) + "]";
                            break;
                        }
                        ++pairs;
                    }
                }
            }
        }
        if (ok) detail = std::to_string(pairs) + " mode pairs, modes -3..3";
        add(out, s, "central bracket table with graded antisymmetry", ok, detail);
    }

    // The antiinvolution squares to the identity and reverses brackets
    // with the Koszul sign of the pair.
    {
        bool ok = true;
        std::string detail;
        for (Kind k : kKinds) {
            for (int m = -3; m <= 3; ++m) {
                SignedGen once = eta({k, m});
                SignedGen twice = eta(once.gen);
                if (twice.gen != GenMode{k, m} || once.sign * twice.sign != 1) {
                    ok = false;
                    detail = "eta^2 fails at " + to_string(GenMode{k, m});
                }
            }
        }
        for (Kind kx : kKinds) {
            for (Kind ky : kKinds) {
                for (int i = -3; i <= 3 && ok; ++i) {
                    for (int j = -3; j <= 3; ++j) {
                        GenMode x{kx, i}, y{ky, j};
                        SignedGen ex = eta(x), ey = eta(y);
                        int koszul = (is_odd(x) && is_odd(y)) ? -1 : 1;
                        Scalar lhs =
                            Scalar(ex.sign * ey.sign) * super_bracket(ey.gen, ex.gen);
                        if (lhs != Scalar(koszul) * super_bracket(x, y)) {
                            ok = false;
                            detail = "bracket reversal fails at [" + to_string(x) + ", " +
                                     to_string(y) + "]";
                            break;
                        }
                    }
                }
            }
        }
        if (ok) detail = "modes -3..3, all kind pairs";
        add(out, s, "antiinvolution squares to identity and reverses brackets", ok, detail);
    }

    // The module realizes the supercommutator: on every sampled vector
    // [x_i, y_j] acts as the central value.
    {
        bool ok = true;
        int cases = 0;
        std::string detail;
        int w_cap = std::min(config.max_weight, 2);
        std::vector<TermKey> keys;
        for (int w = 0; w <= w_cap; ++w) {
            for (int f = -1; f <= 2; ++f) {
                auto piece = piece_keys(w, f, -1, 1);
                keys.insert(keys.end(), piece.begin(), piece.end());
            }
        }
        for (Kind kx : kKinds) {
            for (Kind ky : kKinds) {
                for (int i = -2; i <= 2 && ok; ++i) {
                    for (int j = -2; j <= 2 && ok; ++j) {
                        GenMode x{kx, i}, y{ky, j};
                        int koszul = (is_odd(x) && is_odd(y)) ? -1 : 1;
                        Scalar c = super_bracket(x, y);
                        for (const TermKey& key : keys) {
                            VElement v = term(key.mono, key.base);
                            VElement lhs = act(x, act(y, v)) - Scalar(koszul) * act(y, act(x, v));
                            if (lhs != c * v) {
                                ok = false;
                                detail = fail_at(key, "[" + to_string(x) + ", " + to_string(y) +
                                                          "] misrealized");
                                break;
                            }
                            ++cases;
                        }
                    }
                }
            }
        }
        if (ok)
            detail = std::to_string(cases) + " commutators on " + std::to_string(keys.size()) +
                     " basis vectors";
        add(out, s, "module action realizes the supercommutator", ok, detail);
    }

    // The weight operator is diagonal with the conformal weight as
    // eigenvalue on every normal-form term.
    {
        bool ok = true;
        int count = 0;
        std::string detail;
        for (int w = 0; w <= config.max_weight && ok; ++w) {
            for (const TermKey& key : weight_keys(w, -2, 2)) {
                VElement v = term(key.mono, key.base);
                if (l_zero(v) != Scalar(w) * v) {
                    ok = false;
                    detail = fail_at(key, "weight operator off-diagonal");
                    break;
                }
                ++count;
            }
        }
        if (ok) detail = std::to_string(count) + " basis vectors, degrees -2..2";
        add(out, s, "weight operator is diagonal with integer spectrum", ok, detail);
    }

    return out;
}

// ----------------------------------------------------------------- module

Checks suite_module(const RunConfig& config) {
    Checks out;
    const std::string s = "module";
    int half = half_window(config);

    // Every enumerated key carries exactly the gradings of its piece, and
    // the base exponent is pinned to degree + weight.
    {
        bool ok = true;
        int count = 0;
        std::string detail;
        for (int w = 0; w <= config.max_weight && ok; ++w) {
            for (int f = fermion_lo(w); f <= fermion_hi(w) && ok; ++f) {
                for (int d = -3; d <= 3; ++d) {
                    PieceBasis pb = enumerate_basis({w, f, d});
                    for (const TermKey& key : pb.keys) {
                        if (tri_degree(key) != TriDegree{w, f, d} ||
                            key.base.exponent != d + w) {
                            ok = false;
                            detail = fail_at(key, "grading mismatch");
                            break;
                        }
                        ++count;
                    }
                    if (!ok) break;
                }
            }
        }
        if (ok) detail = std::to_string(count) + " keys, degrees -3..3";
        add(out, s, "trigraded enumeration is consistent with the gradings", ok, detail);
    }

    // Piece dimensions match across the pairing's complementary reflection
    // (w, f, d) <-> (w, 1-f, -1-2w-d).
    {
        bool ok = true;
        int pieces = 0;
        std::string detail;
        for (int w = 0; w <= config.max_weight && ok; ++w) {
            for (int f = fermion_lo(w); f <= fermion_hi(w) && ok; ++f) {
                for (int d = -half; d <= half; ++d) {
                    int lhs = enumerate_basis({w, f, d}).dim();
                    int rhs = enumerate_basis({w, 1 - f, -1 - 2 * w - d}).dim();
                    if (lhs != rhs) {
                        ok = false;
                        detail = "w=" + std::to_string(w) + " f=" + std::to_string(f) +
                                 " d=" + std::to_string(d) + ": " + std::to_string(lhs) +
                                 " vs " + std::to_string(rhs);
                        break;
                    }
                    ++pieces;
                }
            }
        }
        if (ok)
            detail = std::to_string(pieces) + " pieces, degrees [-" + std::to_string(half) +
                     ", " + std::to_string(half) + "]";
        add(out, s, "piece dimensions are symmetric under the dual reflection", ok, detail);
    }

    // Vectors killed by every positive mode: all of weight zero, none in
    // any positive-weight piece.
    {
        bool ok = true;
        std::string detail;
        auto w0 = singular_subspace(0, -half, half);
        int zero_pieces = 0;
        for (const auto& [tri, sub] : w0) {
            if (sub.dim() != enumerate_basis(tri).dim()) {
                ok = false;
                detail = "weight-0 piece f=" + std::to_string(tri.fermion) +
                         " d=" + std::to_string(tri.degree) + " not fully singular";
                break;
            }
            ++zero_pieces;
        }
        int positive_pieces = 0;
        for (int w = 1; w <= config.max_weight && ok; ++w) {
            for (const auto& [tri, sub] : singular_subspace(w, -half, half)) {
                if (sub.dim() != 0) {
                    ok = false;
                    detail = "singular vector in w=" + std::to_string(w) +
                             " f=" + std::to_string(tri.fermion) +
                             " d=" + std::to_string(tri.degree);
                    break;
                }
                ++positive_pieces;
            }
        }
        if (ok)
            detail = std::to_string(zero_pieces) + " weight-0 pieces full, " +
                     std::to_string(positive_pieces) + " positive-weight pieces empty";
        add(out, s, "singular vectors are confined to weight zero", ok, detail);
    }

    return out;
}

// ----------------------------------------------------------------- fields

Checks suite_fields(const RunConfig& config) {
    Checks out;
    const std::string s = "fields";
    int half = half_window(config);

    // The homotopy identity QG0 + G0Q = L0 on every basis vector in the
    // window, together with Q^2 = 0 and G0^2 = 0.
    {
        bool identity_ok = true, q_sq_ok = true, g_sq_ok = true;
        int count = 0;
        std::string id_detail, q_detail, g_detail;
        for (int w = 0; w <= config.max_weight; ++w) {
            for (const TermKey& key : weight_keys(w, -half, half)) {
                VElement v = term(key.mono, key.base);
                VElement qv = q_diff(v);
                VElement gv = g_zero(v);
                if (identity_ok && g_zero(qv) + q_diff(gv) != Scalar(w) * v) {
                    identity_ok = false;
                    id_detail = fail_at(key, "QG0 + G0Q != L0");
                }
                if (q_sq_ok && !q_diff(qv).is_zero()) {
                    q_sq_ok = false;
                    q_detail = fail_at(key, "Q^2 != 0");
                }
                if (g_sq_ok && !g_zero(gv).is_zero()) {
                    g_sq_ok = false;
                    g_detail = fail_at(key, "G0^2 != 0");
                }
                ++count;
            }
        }
        std::string window = "degrees [-" + std::to_string(half) + ", " + std::to_string(half) +
                             "], " + std::to_string(count) + " basis vectors";
        add(out, s, "homotopy identity QG0 + G0Q = L0", identity_ok,
            identity_ok ? window : id_detail);
        add(out, s, "differential squares to zero", q_sq_ok, q_sq_ok ? window : q_detail);
        add(out, s, "homotopy squares to zero", g_sq_ok, g_sq_ok ? window : g_detail);
    }

    // Fields of the canonical generator states reproduce the generator
    // modes themselves.
    {
        bool ok = true;
        int cases = 0;
        std::string detail;
        int w_cap = std::min(config.max_weight, 2);
        for (Kind k : kKinds) {
            VElement state = generator_state(k);
            for (int n = -2; n <= 2 && ok; ++n) {
                for (int w = 0; w <= w_cap && ok; ++w) {
                    for (const TermKey& key : weight_keys(w, -2, 2)) {
                        VElement v = term(key.mono, key.base);
                        if (mode_apply(state, n, v) != act(GenMode{k, n}, v)) {
                            ok = false;
                            detail = fail_at(key, "field of " + std::string(kind_name(k)) +
                                                      " misses mode " + std::to_string(n));
                            break;
                        }
                        ++cases;
                    }
                }
            }
        }
        if (ok) detail = std::to_string(cases) + " mode applications";
        add(out, s, "generator fields reproduce the generator modes", ok, detail);
    }

    // Normally ordered reassociation: the modes of x_{-wt(x)} y factor
    // through the bilinear expansion sum_i :x_i y_{n-i}:.
    {
        bool ok = true;
        int cases = 0;
        std::string detail;
        std::vector<TermKey> keys;
        for (int w = 0; w <= std::min(config.max_weight, 2); ++w) {
            for (int f = -1; f <= 2; ++f) {
                auto piece = piece_keys(w, f, -1, 1);
                keys.insert(keys.end(), piece.begin(), piece.end());
            }
        }
        for (Kind kx : kKinds) {
            for (Kind ky : kKinds) {
                int wx = generator_weight(kx);
                VElement composite = act(GenMode{kx, -wx}, generator_state(ky));
                if (composite.is_zero()) continue;
                int koszul = (is_odd(kx) && is_odd(ky)) ? -1 : 1;
                for (int n = -2; n <= 2 && ok; ++n) {
                    for (const TermKey& key : keys) {
                        VElement v = term(key.mono, key.base);
                        VElement lhs = mode_apply(composite, n, v);
                        VElement rhs;
                        // Annihilation tail first: y_{n-i} x_i for i >= 1 - wt(x),
                        // truncated once x_i kills everything of bounded weight.
                        for (int i = 1 - wx; i <= n + 2 * wx + weight(key) + 2; ++i) {
                            VElement xi = act(GenMode{kx, i}, v);
                            if (xi.is_zero()) continue;
                            rhs += Scalar(koszul) * act(GenMode{ky, n - i}, xi);
                        }
                        // Creation head: x_i y_{n-i} for i <= -wt(x); the y-mode
                        // lowers weight at most to 0, bounding i from below.
                        for (int i = -wx; i >= n - weight(key) - 2 * wx - 2; --i) {
                            VElement yv = act(GenMode{ky, n - i}, v);
                            if (yv.is_zero()) continue;
                            rhs += act(GenMode{kx, i}, yv);
                        }
                        if (lhs != rhs) {
                            ok = false;
                            detail = fail_at(key, "reassociation of " +
                                                      std::string(kind_name(kx)) + "*" +
                                                      kind_name(ky) + " at mode " +
                                                      std::to_string(n));
                            break;
                        }
                        ++cases;
                    }
                }
                if (!ok) break;
            }
            if (!ok) break;
        }
        if (ok) detail = std::to_string(cases) + " composite mode applications";
        add(out, s, "composite fields reassociate into normally ordered modes", ok, detail);
    }

    return out;
}

// ---------------------------------------------------------------- pairing

Checks suite_pairing(const RunConfig& config) {
    Checks out;
    const std::string s = "pairing";

    // Seeded property samples: modes move across the pairing through the
    // antiinvolution, and the pairing is supersymmetric.
    {
        ContravarianceReport rep = contravariance_check(240, config.seed);
        std::string detail = rep.ok() ? std::to_string(rep.samples) + " samples, seed " +
                                            std::to_string(config.seed)
                                      : rep.counterexample;
        add(out, s, "contravariance and supersymmetry on seeded samples", rep.ok(), detail);
    }

    // Regular-at-origin vectors pair to zero among themselves: the chart
    // subspace is isotropic.
    {
        bool ok = true;
        long pairs = 0;
        std::string detail;
        for (int w = 0; w <= config.max_weight && ok; ++w) {
            for (int f = fermion_lo(w); f <= fermion_hi(w) && ok; ++f) {
                std::vector<TermKey> left = piece_keys(w, f, -w, 3);
                std::vector<TermKey> right = piece_keys(w, 1 - f, -w, 3);
                for (const TermKey& lk : left) {
                    if (lk.base.exponent < 0) continue;
                    VElement lv = term(lk.mono, lk.base);
                    for (const TermKey& rk : right) {
                        if (rk.base.exponent < 0) continue;
                        if (pair(lv, term(rk.mono, rk.base)) != 0) {
                            ok = false;
                            detail = "nonzero pairing " + to_string(lk) + " against " +
                                     to_string(rk);
                            break;
                        }
                        ++pairs;
                    }
                    if (!ok) break;
                }
            }
        }
        if (ok) detail = std::to_string(pairs) + " pairs, exhaustive in degrees [-w, 3]";
        add(out, s, "regular vectors are isotropic for the pairing", ok, detail);
    }

    // Distinct conformal weights never pair.
    {
        bool ok = true;
        int pairs = 0;
        std::string detail;
        int w_cap = std::min(config.max_weight, 2);
        for (int wl = 0; wl <= w_cap && ok; ++wl) {
            for (int wr = 0; wr <= w_cap && ok; ++wr) {
                if (wl == wr) continue;
                for (const TermKey& lk : weight_keys(wl, -2, 2)) {
                    VElement lv = term(lk.mono, lk.base);
                    for (const TermKey& rk : weight_keys(wr, -4, 2)) {
                        if (pair(lv, term(rk.mono, rk.base)) != 0) {
                            ok = false;
                            detail =
                                "cross-weight pairing " + to_string(lk) + " / " + to_string(rk);
                            break;
                        }
                        ++pairs;
                    }
                    if (!ok) break;
                }
            }
        }
        if (ok) detail = std::to_string(pairs) + " cross-weight pairs";
        add(out, s, "the pairing vanishes across distinct weights", ok, detail);
    }

    // Each trigraded piece pairs perfectly with its reflected piece: the
    // gram block is square and of full rank.
    {
        bool ok = true;
        int blocks = 0;
        std::string detail;
        int w_cap = std::min(config.max_weight, 2);
        for (int w = 0; w <= w_cap && ok; ++w) {
            for (int f = -w; f <= w + 1 && ok; ++f) {
                for (int d = -2; d <= 2; ++d) {
                    TriDegree left{w, f, d};
                    TriDegree right{w, 1 - f, -1 - 2 * w - d};
                    if (enumerate_basis(left).dim() == 0) continue;
                    PairingReport rep = gram_matrix(left, right);
                    if (!rep.nondegenerate) {
                        ok = false;
                        detail = "degenerate block w=" + std::to_string(w) +
                                 " f=" + std::to_string(f) + " d=" + std::to_string(d);
                        break;
                    }
                    ++blocks;
                }
            }
        }
        if (ok) detail = std::to_string(blocks) + " piece blocks, all full rank";
        add(out, s, "piece-level gram blocks are square and nondegenerate", ok, detail);
    }

    return out;
}

// ------------------------------------------------------------- cohomology

Checks suite_cohomology(const RunConfig& config) {
    Checks out;
    const std::string s = "cohomology";
    int half = half_window(config);
    int T = config.max_weight;

    std::map<std::pair<int, int>, CohomologyEntry> table;
    for (int w = 0; w <= T; ++w)
        for (int f = fermion_lo(w); f <= fermion_hi(w); ++f)
            table.emplace(std::make_pair(w, f), cech_cohomology(w, f, -half, half));

    // Weight zero reproduces the Hodge numbers of the projective line.
    {
        bool ok = true;
        std::string detail = "h0 = 1 at fermion 0, h1 = 1 at fermion 1";
        for (int f = fermion_lo(0); f <= fermion_hi(0); ++f) {
            const CohomologyEntry& e = table.at({0, f});
            int h0_want = (f == 0) ? 1 : 0;
            int h1_want = (f == 1) ? 1 : 0;
            if (e.h0 != h0_want || e.h1 != h1_want) {
                ok = false;
                detail = "weight 0 fermion " + std::to_string(f) + ": h0=" +
                         std::to_string(e.h0) + " h1=" + std::to_string(e.h1);
            }
        }
        add(out, s, "weight zero matches the Hodge numbers of the line", ok, detail);
    }

    // Duality: h0 at fermion f equals h1 at fermion 1-f, sector by sector.
    {
        bool ok = true;
        int sectors = 0;
        std::string detail;
        for (const auto& [wf, e] : table) {
            const CohomologyEntry& dual = table.at({wf.first, 1 - wf.second});
            if (e.h0 != dual.h1) {
                ok = false;
                detail = "w=" + std::to_string(wf.first) + " f=" + std::to_string(wf.second) +
                         ": h0=" + std::to_string(e.h0) + " but dual h1=" +
                         std::to_string(dual.h1);
                break;
            }
            ++sectors;
        }
        if (ok) detail = std::to_string(sectors) + " sectors through weight " + std::to_string(T);
        add(out, s, "cohomology dimensions satisfy the duality reflection", ok, detail);
    }

    // The residue pairing between sections and classes is square and of
    // full rank in every populated sector.
    {
        bool ok = true;
        int blocks = 0;
        std::string detail;
        for (const auto& [wf, e] : table) {
            if (e.h0 == 0) continue;
            CohomologyPairing p = cohomology_pairing(e, table.at({wf.first, 1 - wf.second}));
            if (!p.nondegenerate) {
                ok = false;
                detail = "degenerate gram at w=" + std::to_string(wf.first) +
                         " f=" + std::to_string(wf.second) + ", rank " + std::to_string(p.rank);
                break;
            }
            ++blocks;
        }
        if (ok) detail = std::to_string(blocks) + " gram blocks, all full rank";
        add(out, s, "sections pair perfectly with dual classes", ok, detail);
    }

    // Dimensions and representatives agree with a strictly larger window.
    {
        bool dims_ok = true, reps_ok = true;
        std::string dims_detail, reps_detail;
        for (const auto& [wf, e] : table) {
            if (dims_ok && !e.stabilized) {
                dims_ok = false;
                dims_detail = "dimensions moved at w=" + std::to_string(wf.first) +
                              " f=" + std::to_string(wf.second);
            }
            if (reps_ok && !e.reps_stable) {
                reps_ok = false;
                reps_detail = "representatives moved at w=" + std::to_string(wf.first) +
                              " f=" + std::to_string(wf.second);
            }
        }
        std::string window = "window [-" + std::to_string(half) + ", " + std::to_string(half) +
                             "] against [-" + std::to_string(half + 4) + ", " +
                             std::to_string(half + 4) + "]";
        add(out, s, "dimensions are stable under window enlargement", dims_ok,
            dims_ok ? window : dims_detail);
        add(out, s, "class representatives are stable under window enlargement", reps_ok,
            reps_ok ? window : reps_detail);
    }

    // The chart involution squares to the identity.
    {
        bool ok = true;
        int count = 0;
        std::string detail;
        for (int w = 0; w <= std::min(T, 2) && ok; ++w) {
            for (int f = -1; f <= 2 && ok; ++f) {
                for (const TermKey& key : piece_keys(w, f, -2, 1)) {
                    VElement v = term(key.mono, key.base);
                    if (sigma(sigma(v)) != v) {
                        ok = false;
                        detail = fail_at(key, "involution fails to square to identity");
                        break;
                    }
                    ++count;
                }
            }
        }
        if (ok) detail = std::to_string(count) + " basis vectors";
        add(out, s, "chart involution squares to the identity", ok, detail);
    }

    // The involution transports generator modes to transformed-state modes.
    {
        const TransformedGenerators& tg = transformed_generators();
        bool ok = true;
        int count = 0;
        std::string detail;
        auto tilde = [&](Kind k) -> const VElement& {
            switch (k) {
                case Kind::A: return tg.a_tilde;
                case Kind::B: return tg.b_tilde;
                case Kind::Phi: return tg.phi_tilde;
                default: return tg.psi_tilde;
            }
        };
        std::vector<TermKey> keys = piece_keys(1, 0, -1, 1);
        auto extra = piece_keys(1, 1, -1, 1);
        keys.insert(keys.end(), extra.begin(), extra.end());
        for (Kind k : kKinds) {
            for (int j = -1; j <= 1 && ok; ++j) {
                for (const TermKey& key : keys) {
                    VElement v = term(key.mono, key.base);
                    if (sigma(act(GenMode{k, j}, v)) != mode_apply(tilde(k), j, sigma(v))) {
                        ok = false;
                        detail = fail_at(key, "intertwining fails for " +
                                                  to_string(GenMode{k, j}));
                        break;
                    }
                    ++count;
                }
            }
        }
        if (ok) detail = std::to_string(count) + " mode transports";
        add(out, s, "involution intertwines modes with transformed modes", ok, detail);
    }

    // Transformed generator states satisfy the original bracket table, and
    // the correction coefficient in the transformed a-state is pinned.
    {
        const TransformedGenerators& tg = transformed_generators();
        add(out, s, "transition correction coefficient is determined", tg.lambda_unique,
            "lambda = " + to_string(tg.lambda) + (tg.lambda_unique ? ", unique" : ", AMBIGUOUS"));

        bool ok = true;
        int count = 0;
        std::string detail;
        auto tilde = [&](Kind k) -> const VElement& {
            switch (k) {
                case Kind::A: return tg.a_tilde;
                case Kind::B: return tg.b_tilde;
                case Kind::Phi: return tg.phi_tilde;
                default: return tg.psi_tilde;
            }
        };
        std::vector<TermKey> keys = piece_keys(1, 0, -1, 0);
        auto extra = piece_keys(0, 1, -1, 1);
        keys.insert(keys.end(), extra.begin(), extra.end());
        for (Kind kx : kKinds) {
            for (Kind ky : kKinds) {
                bool both_odd = is_odd(kx) && is_odd(ky);
                for (int i = -1; i <= 1 && ok; ++i) {
                    for (int j : {-i, 1 - i}) {
                        Scalar c = super_bracket({kx, i}, {ky, j});
                        for (const TermKey& key : keys) {
                            VElement v = term(key.mono, key.base);
                            VElement xy = mode_apply(tilde(kx), i, mode_apply(tilde(ky), j, v));
                            VElement yx = mode_apply(tilde(ky), j, mode_apply(tilde(kx), i, v));
                            VElement lhs = both_odd ? xy + yx : xy - yx;
                            if (lhs != c * v) {
                                ok = false;
                                detail = fail_at(key, "transformed bracket [" +
                                                          std::string(kind_name(kx)) + "~_" +
                                                          std::to_string(i) + ", " +
                                                          kind_name(ky) + "~_" +
                                                          std::to_string(j) + "]");
                                break;
                            }
                            ++count;
                        }
                        if (!ok) break;
                    }
                }
                if (!ok) break;
            }
            if (!ok) break;
        }
        if (ok) detail = std::to_string(count) + " transformed brackets";
        add(out, s, "transformed generators satisfy the defining relations", ok, detail);
    }

    // Screening cohomology over the window agrees with the de Rham picture
    // of the line: two classes, both at weight zero.
    {
        QCohomologyReport rep = q_cohomology_check(T, -half, half);
        bool ok = rep.matches_de_rham && rep.q_square_zero && rep.images_contained;
        std::string detail;
        if (ok) {
            detail = "total " + std::to_string(rep.total) + " (h0 at (0,0), h1 at (0,1))";
        } else {
            detail = rep.failure.empty() ? "total " + std::to_string(rep.total) : rep.failure;
        }
        add(out, s, "screening cohomology collapses to the de Rham classes", ok, detail);
    }

    return out;
}

// -------------------------------------------------------------------- sl2

Checks suite_sl2(const RunConfig& config) {
    Checks out;
    const std::string s = "sl2";
    const Sl2Modes& m = sl2_modes();

    add(out, s, "fermionic corrections of the zero modes are determined", m.unique,
        "h: " + to_string(m.alpha) + " a(-1).b + " + to_string(m.beta) + " psi(-1).db; f: " +
            to_string(m.gamma) + " a(-1).b^2 + " + to_string(m.delta) + " psi(-1).b db" +
            (m.unique ? "" : " (AMBIGUOUS)"));

    // The three zero modes close into the standard relations on the module.
    {
        bool ok = true;
        int count = 0;
        std::string detail;
        int w_cap = std::min(config.max_weight, 2);
        for (int w = 0; w <= w_cap && ok; ++w) {
            for (int f = -1; f <= 2 && ok; ++f) {
                for (const TermKey& key : piece_keys(w, f, -2, 2)) {
                    VElement v = term(key.mono, key.base);
                    VElement ev = m.e.apply(v), hv = m.h.apply(v), fv = m.f.apply(v);
                    bool he = m.h.apply(ev) - m.e.apply(hv) == Scalar(2) * ev;
                    bool ef = m.e.apply(fv) - m.f.apply(ev) == hv;
                    bool hf = m.h.apply(fv) - m.f.apply(hv) == Scalar(-2) * fv;
                    if (!(he && ef && hf)) {
                        ok = false;
                        detail = fail_at(key, "a bracket relation fails");
                        break;
                    }
                    ++count;
                }
            }
        }
        if (ok) detail = std::to_string(count) + " basis vectors";
        add(out, s, "zero modes satisfy the bracket relations", ok, detail);
    }

    IntegrabilityReport rep =
        integrability_check(config.max_weight, 2 * config.max_weight + 3, config.seed);

    {
        std::ostringstream steps;
        steps << "orbit steps by weight:";
        for (const auto& [w, n] : rep.steps_needed) steps << " " << w << ":" << n;
        steps << " (bound " << rep.bound << ")";
        add(out, s, "raising and lowering orbits on sections terminate", rep.h0_nilpotent,
            rep.h0_nilpotent ? steps.str() : rep.failure);
    }
    {
        std::ostringstream wit;
        wit << "witnesses:";
        for (const auto& [w, name] : rep.witnesses) wit << " w" << w << " = " << name;
        add(out, s, "nilpotence fails outside the section subspace", rep.witnesses_found,
            rep.witnesses_found ? wit.str() : rep.failure);
    }
    {
        std::ostringstream eig;
        eig << "integer spectra:";
        for (const auto& [wf, vals] : rep.h_eigenvalues) {
            eig << " (" << wf.first << "," << wf.second << "):[";
            for (std::size_t i = 0; i < vals.size(); ++i)
                eig << (i ? "," : "") << to_string(vals[i]);
            eig << "]";
        }
        add(out, s, "the diagonal mode acts semisimply with integer spectrum",
            rep.h_diagonalizable, rep.h_diagonalizable ? eig.str() : rep.failure);
    }
    add(out, s, "zero modes are contravariant for the pairing", rep.contravariant,
        rep.contravariant ? std::to_string(rep.samples) + " seeded samples" : rep.failure);

    return out;
}

// -------------------------------------------------------------- rendering

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

json config_json(const RunConfig& config) {
    json suites = json::array();
    for (const std::string& name : config.suites.empty()
                                       ? all_suites()
                                       : std::vector<std::string>(config.suites.begin(),
                                                                  config.suites.end()))
        suites.push_back(name);
    return json{{"max_weight", config.max_weight},
                {"degree_pad", config.degree_pad},
                {"window", half_window(config)},
                {"seed", config.seed},
                {"suites", suites}};
}

std::string gram_to_text(const std::vector<std::vector<Scalar>>& gram) {
    std::string text;
    for (std::size_t r = 0; r < gram.size(); ++r) {
        if (r) text += ";";
        for (std::size_t c = 0; c < gram[r].size(); ++c) {
            if (c) text += " ";
            text += to_string(gram[r][c]);
        }
    }
    return text;
}

}  // namespace

const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names = {"algebra",  "module",     "fields",
                                                   "pairing",  "cohomology", "sl2"};
    return names;
}

std::string validate_config(const RunConfig& config) {
    if (config.max_weight < 0) return "max weight must be nonnegative";
    if (config.degree_pad < 0) return "degree pad must be nonnegative";
    if (config.format != "plain" && config.format != "json" && config.format != "csv")
        return "unknown format '" + config.format + "' (expected plain, json, or csv)";
    for (const std::string& name : config.suites) {
        const auto& known = all_suites();
        if (std::find(known.begin(), known.end(), name) == known.end())
            return "unknown suite '" + name + "'";
    }
    if (config.max_weight > kSoftWeightCap && !config.force_large)
        return "max weight " + std::to_string(config.max_weight) + " exceeds the soft cap " +
               std::to_string(kSoftWeightCap) + "; pass --force-large to proceed";
    return "";
}

int half_window(const RunConfig& config) {
    int padded = config.max_weight + config.degree_pad;
    int floor = default_window(config.max_weight);
    return padded > floor ? padded : floor;
}

VerifyReport run_verify(const RunConfig& config) {
    VerifyReport report;
    report.config = config;

    std::vector<std::string> selected;
    for (const std::string& name : all_suites())
        if (config.suites.empty() || config.suites.count(name)) selected.push_back(name);

    auto dispatch = [&config](const std::string& name) -> Checks {
        if (name == "algebra") return suite_algebra(config);
        if (name == "module") return suite_module(config);
        if (name == "fields") return suite_fields(config);
        if (name == "pairing") return suite_pairing(config);
        if (name == "cohomology") return suite_cohomology(config);
        return suite_sl2(config);
    };

    // Suites are independent and every shared cache is either immutable
    // after first use or guarded, so they can run concurrently; results
    // are merged in the canonical order to keep the output deterministic.
    std::vector<std::future<Checks>> futures;
    futures.reserve(selected.size());
    for (const std::string& name : selected)
        futures.push_back(std::async(std::launch::async, dispatch, name));
    for (std::future<Checks>& f : futures) {
        Checks checks = f.get();
        report.checks.insert(report.checks.end(), checks.begin(), checks.end());
    }

    for (const CheckResult& check : report.checks) {
        if (!check.passed) {
            report.all_passed = false;
            if (report.first_failure.empty())
                report.first_failure = check.suite + ": " + check.name;
        }
    }
    return report;
}

CharacterTable character_table(const RunConfig& config) {
    CharacterTable table;
    table.config = config;
    int half = half_window(config);
    std::map<std::pair<int, int>, CohomologyEntry> entries;
    for (int w = 0; w <= config.max_weight; ++w)
        for (int f = fermion_lo(w); f <= fermion_hi(w); ++f)
            entries.emplace(std::make_pair(w, f), cech_cohomology(w, f, -half, half));
    for (const auto& [wf, e] : entries) {
        if (e.h0 == 0 && e.h1 == 0) continue;
        table.rows.push_back({wf.first, wf.second, e.h0, e.h1});
        if (!e.stabilized) table.stabilized = false;
    }
    for (const CharacterRow& row : table.rows) {
        auto dual = entries.find({row.weight, 1 - row.fermion});
        int dual_h1 = dual == entries.end() ? 0 : dual->second.h1;
        int dual_h0 = dual == entries.end() ? 0 : dual->second.h0;
        if (row.h0 != dual_h1 || row.h1 != dual_h0) table.duality_symmetric = false;
    }
    return table;
}

PairingTable pairing_table(const RunConfig& config) {
    PairingTable table;
    table.config = config;
    int half = half_window(config);
    std::map<std::pair<int, int>, CohomologyEntry> entries;
    for (int w = 0; w <= config.max_weight; ++w)
        for (int f = fermion_lo(w); f <= fermion_hi(w); ++f)
            entries.emplace(std::make_pair(w, f), cech_cohomology(w, f, -half, half));
    for (int w = 0; w <= config.max_weight; ++w) {
        for (int f = fermion_lo(w); f <= fermion_hi(w); ++f) {
            const CohomologyEntry& sections = entries.at({w, f});
            const CohomologyEntry& classes = entries.at({w, 1 - f});
            PairingBlock block;
            block.weight = w;
            block.fermion = f;
            block.sections = sections.h0;
            block.classes = classes.h1;
            if (sections.h0 > 0 || classes.h1 > 0) {
                CohomologyPairing p = cohomology_pairing(sections, classes);
                block.gram = p.gram;
                block.rank = p.rank;
                block.full_rank = p.nondegenerate;
            } else {
                block.full_rank = true;  // empty block, vacuously perfect
            }
            if (!block.full_rank) table.all_full_rank = false;
            table.blocks.push_back(std::move(block));
        }
    }
    return table;
}

CohomologyTable cohomology_table(const RunConfig& config) {
    CohomologyTable table;
    table.config = config;
    int half = half_window(config);
    for (int w = 0; w <= config.max_weight; ++w) {
        for (int f = fermion_lo(w); f <= fermion_hi(w); ++f) {
            CohomologyEntry e = cech_cohomology(w, f, -half, half);
            CohomologySector sector;
            sector.weight = w;
            sector.fermion = f;
            sector.h0 = e.h0;
            sector.h1 = e.h1;
            sector.window_lo = e.window_lo;
            sector.window_hi = e.window_hi;
            sector.stabilized = e.stabilized;
            sector.reps_stable = e.reps_stable;
            for (const TermKey& rep : e.h1_reps) sector.representatives.push_back(to_string(rep));
            if (!e.stabilized) table.all_stable = false;
            table.sectors.push_back(std::move(sector));
        }
    }
    return table;
}

std::string render_verify(const VerifyReport& report, const std::string& format) {
    if (format == "json") {
        json checks = json::array();
        for (const CheckResult& c : report.checks)
            checks.push_back(json{{"suite", c.suite},
                                  {"name", c.name},
                                  {"detail", c.detail},
                                  {"passed", c.passed}});
        json doc{{"config", config_json(report.config)},
                 {"checks", checks},
                 {"all_passed", report.all_passed},
                 {"first_failure", report.first_failure}};
        return doc.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = "suite,check,passed,detail\n";
        for (const CheckResult& c : report.checks)
            out += csv_field(c.suite) + "," + csv_field(c.name) + "," +
                   (c.passed ? "true" : "false") + "," + csv_field(c.detail) + "\n";
        return out;
    }
    std::ostringstream out;
    out << "chiral structure on the projective line: verification\n";
    out << "max weight " << report.config.max_weight << ", degree window [-"
        << half_window(report.config) << ", " << half_window(report.config) << "], seed "
        << report.config.seed << "\n\n";
    int failed = 0;
    for (const CheckResult& c : report.checks) {
        out << (c.passed ? "PASS" : "FAIL") << " [" << c.suite << "] " << c.name;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
        if (!c.passed) ++failed;
    }
    out << "\n";
    if (failed == 0) {
        out << "all " << report.checks.size() << " checks passed\n";
    } else {
        out << failed << " of " << report.checks.size()
            << " checks failed; first failure: " << report.first_failure << "\n";
    }
    return out.str();
}

std::string render_characters(const CharacterTable& table, const std::string& format) {
    if (format == "json") {
        json rows = json::array();
        for (const CharacterRow& r : table.rows)
            rows.push_back(json{{"weight", r.weight},
                                {"fermion", r.fermion},
                                {"h0", r.h0},
                                {"h1", r.h1}});
        return rows.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = "weight,fermion,h0,h1\n";
        for (const CharacterRow& r : table.rows)
            out += std::to_string(r.weight) + "," + std::to_string(r.fermion) + "," +
                   std::to_string(r.h0) + "," + std::to_string(r.h1) + "\n";
        return out;
    }
    std::ostringstream out;
    out << "weight fermion h0 h1\n";
    for (const CharacterRow& r : table.rows)
        out << r.weight << " " << r.fermion << " " << r.h0 << " " << r.h1 << "\n";
    return out.str();
}

std::string render_pairing(const PairingTable& table, const std::string& format) {
    if (format == "json") {
        json blocks = json::array();
        for (const PairingBlock& b : table.blocks) {
            json gram = json::array();
            for (const auto& row : b.gram) {
                json cells = json::array();
                for (const Scalar& c : row) cells.push_back(to_string(c));
                gram.push_back(cells);
            }
            blocks.push_back(json{{"weight", b.weight},
                                  {"fermion", b.fermion},
                                  {"sections", b.sections},
                                  {"classes", b.classes},
                                  {"rank", b.rank},
                                  {"full_rank", b.full_rank},
                                  {"gram", gram}});
        }
        return blocks.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out = "weight,fermion,sections,classes,rank,full_rank,gram\n";
        for (const PairingBlock& b : table.blocks)
            out += std::to_string(b.weight) + "," + std::to_string(b.fermion) + "," +
                   std::to_string(b.sections) + "," + std::to_string(b.classes) + "," +
                   std::to_string(b.rank) + "," + (b.full_rank ? "true" : "false") + "," +
                   csv_field(gram_to_text(b.gram)) + "\n";
        return out;
    }
    std::ostringstream out;
    for (const PairingBlock& b : table.blocks) {
        out << "weight " << b.weight << ", fermion " << b.fermion << ": sections " << b.sections
            << ", classes " << b.classes << ", rank " << b.rank << ", "
            << (b.full_rank ? "full rank" : "DEGENERATE");
        if (b.sections == 0 && b.classes == 0) out << " (empty)";
        out << "\n";
        for (const auto& row : b.gram) {
            out << "  [";
            for (std::size_t c = 0; c < row.size(); ++c)
                out << (c ? " " : " ") << to_string(row[c]);
            out << " ]\n";
        }
    }
    return out.str();
}

std::string render_cohomology(const CohomologyTable& table, const std::string& format) {
    if (format == "json") {
        json sectors = json::array();
        for (const CohomologySector& s : table.sectors) {
            json reps = json::array();
            for (const std::string& r : s.representatives) reps.push_back(r);
            sectors.push_back(json{{"weight", s.weight},
                                   {"fermion", s.fermion},
                                   {"h0", s.h0},
                                   {"h1", s.h1},
                                   {"window_lo", s.window_lo},
                                   {"window_hi", s.window_hi},
                                   {"stabilized", s.stabilized},
                                   {"reps_stable", s.reps_stable},
                                   {"representatives", reps}});
        }
        return sectors.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out =
            "weight,fermion,h0,h1,window_lo,window_hi,stabilized,reps_stable,representatives\n";
        for (const CohomologySector& s : table.sectors) {
            std::string reps;
            for (std::size_t i = 0; i < s.representatives.size(); ++i)
                reps += (i ? "; " : "") + s.representatives[i];
            out += std::to_string(s.weight) + "," + std::to_string(s.fermion) + "," +
                   std::to_string(s.h0) + "," + std::to_string(s.h1) + "," +
                   std::to_string(s.window_lo) + "," + std::to_string(s.window_hi) + "," +
                   (s.stabilized ? "true" : "false") + "," +
                   (s.reps_stable ? "true" : "false") + "," + csv_field(reps) + "\n";
        }
        return out;
    }
    std::ostringstream out;
    for (const CohomologySector& s : table.sectors) {
        out << "weight " << s.weight << ", fermion " << s.fermion << ": h0 " << s.h0 << ", h1 "
            << s.h1 << ", window [" << s.window_lo << ", " << s.window_hi << "], "
            << (s.stabilized ? "stable" : "UNSTABLE");
        if (!s.reps_stable) out << " (representatives window-sensitive)";
        out << "\n";
        if (!s.representatives.empty()) {
            out << "  class representatives:";
            for (std::size_t i = 0; i < s.representatives.size(); ++i)
                out << (i ? "; " : " ") << s.representatives[i];
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace chiralp1
