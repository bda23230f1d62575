#include "chiralp1/cohomology.hpp"

#include <cstdlib>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "chiralp1/fields.hpp"
#include "chiralp1/pairing.hpp"

namespace chiralp1 {

namespace {

std::optional<SparseVector> window_coords(const SectorWindow& win, const VElement& v) {
    SparseVector out;
    for (const auto& [key, c] : v.terms) {
        auto it = win.index.find(key);
        if (it == win.index.end()) return std::nullopt;
        out.set(it->second, c);
    }
    return out;
}

// Coefficients expressing target in the spanning set, or nullopt if it is
// not in the span.  The spanning sets used here are linearly independent,
// so the coefficients are unique.
std::optional<std::vector<Scalar>> express_in(const std::vector<SparseVector>& spanning,
                                              const SparseVector& target, int ambient_dim) {
    if (spanning.empty()) {
        if (target.is_zero()) return std::vector<Scalar>{};
        return std::nullopt;
    }
    std::vector<SparseVector> lhs(ambient_dim);
    std::vector<Scalar> rhs(ambient_dim, Scalar(0));
    for (std::size_t j = 0; j < spanning.size(); ++j)
        for (const auto& [row, c] : spanning[j].entries()) lhs[row].set(static_cast<int>(j), c);
    for (const auto& [row, c] : target.entries()) rhs[row] = c;
    LinearSolution sol = solve_linear_system(lhs, rhs, static_cast<int>(spanning.size()));
    if (!sol.consistent) return std::nullopt;
    return sol.values;
}

using Mat = std::vector<std::vector<Scalar>>;

Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size();
    Mat out(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

bool mat_is_zero(const Mat& m) {
    for (const auto& row : m)
        for (const Scalar& x : row)
            if (x != 0) return false;
    return true;
}

// Monic characteristic polynomial, leading coefficient first.
std::vector<Scalar> char_poly(const Mat& m) {
    int n = static_cast<int>(m.size());
    std::vector<Scalar> c(n + 1, Scalar(0));
    c[0] = 1;
    Mat acc = m;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            Mat shifted = acc;
            for (int i = 0; i < n; ++i) shifted[i][i] += c[k - 1];
            acc = mat_mul(m, shifted);
        }
        Scalar tr = 0;
        for (int i = 0; i < n; ++i) tr += acc[i][i];
        c[k] = -tr / Scalar(k);
    }
    return c;
}

Scalar poly_eval(const std::vector<Scalar>& c, long r) {
    Scalar acc = 0;
    for (const Scalar& k : c) acc = acc * r + k;
    return acc;
}

std::vector<Scalar> deflate(const std::vector<Scalar>& c, long r) {
    std::vector<Scalar> out(c.size() - 1);
    Scalar carry = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        carry = carry * r + c[i];
        out[i] = carry;
    }
    return out;
}

// Fujiwara bound for a monic polynomial, leading coefficient first: every
// root r satisfies |r| <= 2 * max_i |c[i]|^(1/i).  The i-th root keeps the
// bound linear in the matrix size where the naive coefficient bound is
// determinant-sized and makes the integer scan below intractable.
long root_bound(const std::vector<Scalar>& c) {
    mpz_class best = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        mpz_class num = abs(c[i].get_num());
        mpz_class den = c[i].get_den();
        mpz_class q = (num + den - 1) / den;
        if (q == 0) continue;
        mpz_class r;
        mpz_root(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i));
        r += 1;
        if (r > best) best = r;
    }
    mpz_class b = 2 * best + 1;
    if (!b.fits_slong_p()) throw std::runtime_error("eigenvalue bound overflow");
    return b.get_si();
}

}  // namespace

QCohomologyReport q_cohomology_check(int max_weight_val, int win_lo, int win_hi) {
    QCohomologyReport rep;
    rep.max_weight = max_weight_val;
    rep.window_lo = win_lo;
    rep.window_hi = win_hi;
    auto note = [&](const std::string& msg) {
        if (rep.failure.empty()) rep.failure = msg;
    };

    for (int w = 0; w <= max_weight_val; ++w) {
        const int flo = -w - 1;
        const int fhi = w + 2;
        std::map<int, CohomologyEntry> entries;
        for (int f = flo; f <= fhi; ++f)
            entries.emplace(f, cech_cohomology_once(w, f, win_lo, win_hi));

        // Global sections: express the image of each basis vector in the
        // next fermion level's basis.
        std::map<int, int> section_rank;
        for (int f = flo; f < fhi; ++f) {
            const auto& src = entries.at(f).h0_basis;
            const auto& dst = entries.at(f + 1).h0_basis;
            section_rank[f] = 0;
            if (src.empty()) continue;
            SectorWindow frame = sector_window(w, f + 1, win_lo - 1, win_hi);
            std::vector<SparseVector> spanning;
            for (const VElement& t : dst) {
                auto c = window_coords(frame, t);
                if (c) spanning.push_back(std::move(*c));
            }
            bool bad = spanning.size() != dst.size();
            std::vector<SparseVector> cols;
            for (std::size_t i = 0; i < src.size() && !bad; ++i) {
                VElement img = q_diff(src[i]);
                if (!q_diff(img).is_zero()) rep.q_square_zero = false;
                auto c = window_coords(frame, img);
                auto sol = c ? express_in(spanning, *c, frame.dim())
                             : std::optional<std::vector<Scalar>>{};
                if (!sol) {
                    bad = true;
                    break;
                }
                SparseVector col;
                for (std::size_t j = 0; j < sol->size(); ++j)
                    if ((*sol)[j] != 0) col.set(static_cast<int>(j), (*sol)[j]);
                cols.push_back(std::move(col));
            }
            if (bad) {
                rep.images_contained = false;
                note("weight " + std::to_string(w) +
                     ": section differential escaped the computed spaces");
                continue;
            }
            section_rank[f] = rank_of(cols, static_cast<int>(dst.size()));
        }
        for (int f = flo; f <= fhi; ++f) {
            int n = static_cast<int>(entries.at(f).h0_basis.size());
            int r_out = f < fhi ? section_rank[f] : 0;
            int r_in = f > flo ? section_rank[f - 1] : 0;
            int dim = n - r_out - r_in;
            if (dim != 0) rep.h0_q[{w, f}] = dim;
        }

        // Quotient classes: reduce the image of each representative modulo
        // the chart sum of the target sector, then read off its coefficients
        // over that sector's representatives.
        std::map<int, int> class_rank;
        for (int f = flo; f < fhi; ++f) {
            const auto& src = entries.at(f).h1_reps;
            const CohomologyEntry& target = entries.at(f + 1);
            const auto& dst = target.h1_reps;
            class_rank[f] = 0;
            if (src.empty()) continue;
            std::vector<SparseVector> spanning = target.chart_sum;
            const int sum_rows = static_cast<int>(spanning.size());
            for (const TermKey& key : dst) {
                SparseVector e;
                e.set(target.frame.index.at(key), 1);
                spanning.push_back(std::move(e));
            }
            bool bad = false;
            std::vector<SparseVector> cols;
            for (const TermKey& key : src) {
                VElement img = q_diff(term(key.mono, key.base));
                if (!q_diff(img).is_zero()) rep.q_square_zero = false;
                auto c = window_coords(target.frame, img);
                auto sol = c ? express_in(spanning, *c, target.frame.dim())
                             : std::optional<std::vector<Scalar>>{};
                if (!sol) {
                    bad = true;
                    break;
                }
                SparseVector col;
                for (std::size_t t = 0; t < dst.size(); ++t) {
                    const Scalar& cc = (*sol)[sum_rows + static_cast<int>(t)];
                    if (cc != 0) col.set(static_cast<int>(t), cc);
                }
                cols.push_back(std::move(col));
            }
            if (bad) {
                rep.images_contained = false;
                note("weight " + std::to_string(w) +
                     ": class differential escaped the computed spaces");
                continue;
            }
            class_rank[f] = rank_of(cols, static_cast<int>(dst.size()));
        }
        for (int f = flo; f <= fhi; ++f) {
            int n = static_cast<int>(entries.at(f).h1_reps.size());
            int r_out = f < fhi ? class_rank[f] : 0;
            int r_in = f > flo ? class_rank[f - 1] : 0;
            int dim = n - r_out - r_in;
            if (dim != 0) rep.h1_q[{w, f}] = dim;
        }
    }

    for (const auto& [key, d] : rep.h0_q) rep.total += d;
    for (const auto& [key, d] : rep.h1_q) rep.total += d;
    const std::map<std::pair<int, int>, int> want_sections{{{0, 0}, 1}};
    const std::map<std::pair<int, int>, int> want_classes{{{0, 1}, 1}};
    rep.matches_de_rham = rep.images_contained && rep.q_square_zero &&
                          rep.h0_q == want_sections && rep.h1_q == want_classes;
    if (!rep.matches_de_rham) note("surviving classes differ from the de Rham picture");
    return rep;
}

IntegrabilityReport integrability_check(int max_weight_val, int orbit_bound, std::uint64_t seed,
                                        int win_lo, int win_hi) {
    IntegrabilityReport rep;
    rep.max_weight = max_weight_val;
    rep.bound = orbit_bound;
    const Sl2Modes s = sl2_modes();
    auto note = [&](const std::string& msg) {
        if (rep.failure.empty()) rep.failure = msg;
    };

    for (int w = 0; w <= max_weight_val; ++w) {
        std::map<int, std::vector<VElement>> sections;
        for (int f = -w - 1; f <= w + 2; ++f)
            sections[f] = cech_cohomology_once(w, f, win_lo, win_hi).h0_basis;

        int longest = 0;
        for (const auto& [f, vs] : sections) {
            for (const VElement& v : vs) {
                for (const ModeOperator* op : {&s.f, &s.e}) {
                    VElement u = v;
                    int n = 0;
                    while (!u.is_zero() && n < orbit_bound) {
                        u = op->apply(u);
                        ++n;
                    }
                    if (!u.is_zero()) {
                        rep.h0_nilpotent = false;
                        note("weight " + std::to_string(w) + ": orbit of " + to_string(v) +
                             " exceeded the bound");
                    } else if (n > longest) {
                        longest = n;
                    }
                }
            }
        }
        rep.steps_needed[w] = longest;

        // A vector of the full module whose orbit does not terminate within
        // the bound: the submodule of global sections is proper.
        bool found = false;
        for (int f = -w; f <= w + 1 && !found; ++f)
            for (int d = 0; d <= w + 3 && !found; ++d) {
                PieceBasis pb = enumerate_basis({w, f, d});
                for (const TermKey& key : pb.keys) {
                    VElement u = term(key.mono, key.base);
                    bool dies = false;
                    for (int n = 0; n <= orbit_bound && !dies; ++n) {
                        u = s.f.apply(u);
                        dies = u.is_zero();
                    }
                    if (!dies) {
                        rep.witnesses[w] = to_string(key);
                        found = true;
                        break;
                    }
                }
            }
        if (!found) {
            rep.witnesses_found = false;
            note("weight " + std::to_string(w) + ": every candidate orbit terminated");
        }

        // h0 restricted to each section space: exact characteristic
        // polynomial, integer roots only, squarefree minimal polynomial.
        for (const auto& [f, vs] : sections) {
            if (vs.empty()) continue;
            SectorWindow frame = sector_window(w, f, win_lo - 1, win_hi);
            std::vector<SparseVector> spanning;
            for (const VElement& v : vs) {
                auto c = window_coords(frame, v);
                if (c) spanning.push_back(std::move(*c));
            }
            std::size_t n = vs.size();
            bool bad = spanning.size() != n;
            Mat m(n, std::vector<Scalar>(n, Scalar(0)));
            for (std::size_t i = 0; i < n && !bad; ++i) {
                VElement img = s.h.apply(vs[i]);
                auto c = window_coords(frame, img);
                auto sol = c ? express_in(spanning, *c, frame.dim())
                             : std::optional<std::vector<Scalar>>{};
                if (!sol) {
                    bad = true;
                    break;
                }
                for (std::size_t j = 0; j < n; ++j) m[j][i] = (*sol)[j];
            }
            if (bad) {
                rep.h_diagonalizable = false;
                note("weight " + std::to_string(w) + ", fermion " + std::to_string(f) +
                     ": h0 left the section space");
                continue;
            }
            std::vector<Scalar> p = char_poly(m);
            std::vector<long> roots;
            long bound = root_bound(p);
            for (long r = -bound; r <= bound && p.size() > 1; ++r)
                while (p.size() > 1 && poly_eval(p, r) == 0) {
                    roots.push_back(r);
                    p = deflate(p, r);
                }
            if (p.size() > 1) {
                rep.h_diagonalizable = false;
                note("weight " + std::to_string(w) + ", fermion " + std::to_string(f) +
                     ": non-integer eigenvalue of h0");
                continue;
            }
            Mat prod(n, std::vector<Scalar>(n, Scalar(0)));
            for (std::size_t i = 0; i < n; ++i) prod[i][i] = 1;
            for (long r : std::set<long>(roots.begin(), roots.end())) {
                Mat shifted = m;
                for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= Scalar(r);
                prod = mat_mul(prod, shifted);
            }
            if (!mat_is_zero(prod)) {
                rep.h_diagonalizable = false;
                note("weight " + std::to_string(w) + ", fermion " + std::to_string(f) +
                     ": h0 is not semisimple on the section space");
                continue;
            }
            std::vector<Scalar> eigs;
            for (long r : roots) eigs.push_back(Scalar(r));
            rep.h_eigenvalues[{w, f}] = std::move(eigs);
        }
    }

    // Contravariance of the three zero modes against their antiinvolution
    // images, on random elements of complementary sectors.
    std::mt19937_64 rng(seed);
    auto range_draw = [&](long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
    };
    auto random_in_piece = [&](const TriDegree& t) {
        PieceBasis pb = enumerate_basis(t);
        VElement v;
        for (const TermKey& key : pb.keys) {
            long num = range_draw(-4, 4);
            long den = range_draw(1, 3);
            v += term(key.mono, key.base, frac(num, den));
        }
        return v;
    };
    for (int trial = 0; trial < 80; ++trial) {
        int w = static_cast<int>(range_draw(0, max_weight_val));
        int f = static_cast<int>(range_draw(-w, w + 1));
        int d = static_cast<int>(range_draw(-2 * w - 3, 2 * w + 2));
        int d2 = static_cast<int>(range_draw(-2 * w - 3, 2 * w + 2));
        VElement v = random_in_piece({w, f, d});
        VElement u = random_in_piece({w, 1 - f, d2});
        for (const ModeOperator* op : {&s.e, &s.h, &s.f}) {
            ++rep.samples;
            if (pair(op->apply(v), u) != pair(v, op->apply_eta(u))) {
                rep.contravariant = false;
                note("zero-mode contravariance failed on a random pair at weight " +
                     std::to_string(w));
            }
        }
    }
    return rep;
}

}  // namespace chiralp1
