#include "chiralp1/charts.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <utility>

#include "chiralp1/pairing.hpp"

namespace chiralp1 {

namespace {

VElement correction_state() {
    // -(psi(-1) . b db), the state of the product of the two odd generators
    // multiplied by b.
    return Scalar(-1) * act(GenMode{Kind::Psi, -1}, base_elem(1, true));
}

VElement a_tilde_at(const Scalar& lambda) {
    return Scalar(-1) * act(GenMode{Kind::A, -1}, base_elem(2)) + lambda * correction_state();
}

// [x_i, y_j] v where at least one of the states is even.
VElement even_commutator(const VElement& x, int i, const VElement& y, int j, const VElement& v) {
    return mode_apply(x, i, mode_apply(y, j, v)) - mode_apply(y, j, mode_apply(x, i, v));
}

Scalar coeff_of(const VElement& v, const TermKey& key) {
    auto it = v.terms.find(key);
    return it == v.terms.end() ? Scalar(0) : it->second;
}

const std::vector<std::pair<int, int>> kSelfPairs = {{0, 1}, {1, -1}, {-2, 1}, {0, -1}};

std::vector<VElement> lambda_test_vectors() {
    std::vector<VElement> tests;
    for (int w = 0; w <= 2; ++w)
        for (int f = -2; f <= 3; ++f)
            for (int d = -2; d <= 2; ++d) {
                PieceBasis pb = enumerate_basis({w, f, d});
                for (const TermKey& key : pb.keys) tests.push_back(term(key.mono, key.base));
            }
    return tests;
}

void verify_transition(const TransformedGenerators& g, const std::vector<VElement>& tests) {
    for (const VElement& v : tests) {
        for (int i = -2; i <= 2; ++i) {
            VElement r = even_commutator(g.a_tilde, i, g.b_tilde, -i, v) - v;
            if (!r.is_zero()) throw std::runtime_error("chart transition: [a~, b~] relation failed");
        }
        for (const auto& [i, j] : kSelfPairs) {
            VElement r = even_commutator(g.a_tilde, i, g.a_tilde, j, v);
            if (!r.is_zero()) throw std::runtime_error("chart transition: [a~, a~] relation failed");
        }
    }
    // Spot check one weight beyond the fitting range.
    for (int f = -1; f <= 2; ++f)
        for (int d = -1; d <= 1; ++d) {
            PieceBasis pb = enumerate_basis({3, f, d});
            for (const TermKey& key : pb.keys) {
                VElement v = term(key.mono, key.base);
                for (int i = -1; i <= 1; ++i) {
                    VElement r = even_commutator(g.a_tilde, i, g.b_tilde, -i, v) - v;
                    if (!r.is_zero())
                        throw std::runtime_error("chart transition: weight-3 recheck failed");
                }
            }
        }
}

}  // namespace

TransformedGenerators derive_transformed_generators() {
    TransformedGenerators g;
    g.b_tilde = base_elem(-1);
    g.phi_tilde = Scalar(-1) * base_elem(-2, true);
    g.psi_tilde = Scalar(-1) * act(GenMode{Kind::Psi, -1}, base_elem(2));

    const std::vector<VElement> tests = lambda_test_vectors();
    const VElement a0 = a_tilde_at(0);
    const VElement ap = a_tilde_at(1);
    const VElement am = a_tilde_at(-1);

    // Each defining residual is at most quadratic in the unknown coefficient
    // (the correction enters every bracket at most twice), so three sample
    // values reconstruct the component polynomials  c0 + c1 l + c2 l^2
    // exactly; the coefficient must be a common root of all of them.
    struct Poly {
        Scalar c0, c1, c2;
    };
    std::vector<Poly> polys;
    const Scalar half = frac(1, 2);
    auto push_equation = [&](const VElement& r0, const VElement& rp, const VElement& rm) {
        VElement lin = half * (rp - rm);
        VElement quad = half * (rp + rm) - r0;
        std::set<TermKey> keys;
        for (const auto& [k, c] : r0.terms) keys.insert(k);
        for (const auto& [k, c] : lin.terms) keys.insert(k);
        for (const auto& [k, c] : quad.terms) keys.insert(k);
        for (const TermKey& k : keys) {
            Poly p{coeff_of(r0, k), coeff_of(lin, k), coeff_of(quad, k)};
            if (p.c0 == 0 && p.c1 == 0 && p.c2 == 0) continue;
            polys.push_back(std::move(p));
        }
    };

    for (const VElement& v : tests) {
        for (int i = -2; i <= 2; ++i) {
            push_equation(even_commutator(a0, i, g.b_tilde, -i, v) - v,
                          even_commutator(ap, i, g.b_tilde, -i, v) - v,
                          even_commutator(am, i, g.b_tilde, -i, v) - v);
        }
        for (const auto& [i, j] : kSelfPairs) {
            push_equation(even_commutator(a0, i, a0, j, v), even_commutator(ap, i, ap, j, v),
                          even_commutator(am, i, am, j, v));
        }
    }

    // Rational roots of the first nontrivial component polynomial, then
    // filtered against all the others.
    std::vector<Scalar> candidates;
    bool constrained = false;
    for (const Poly& p : polys) {
        if (p.c1 == 0 && p.c2 == 0)
            throw std::runtime_error("chart transition: no correction coefficient exists");
        constrained = true;
        if (p.c2 == 0) {
            candidates.push_back(-p.c0 / p.c1);
        } else {
            Scalar disc = p.c1 * p.c1 - 4 * p.c2 * p.c0;
            if (disc < 0) throw std::runtime_error("chart transition: no correction coefficient exists");
            mpz_class num = disc.get_num();
            mpz_class den = disc.get_den();
            if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
                mpz_perfect_square_p(den.get_mpz_t()) == 0)
                throw std::runtime_error("chart transition: no rational correction coefficient");
            mpz_class rnum, rden;
            mpz_sqrt(rnum.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rden.get_mpz_t(), den.get_mpz_t());
            Scalar root = Scalar(mpq_class(rnum, rden));
            candidates.push_back((-p.c1 + root) / (2 * p.c2));
            if (root != 0) candidates.push_back((-p.c1 - root) / (2 * p.c2));
        }
        break;
    }
    std::vector<Scalar> solutions;
    for (const Scalar& cand : candidates) {
        bool all = true;
        for (const Poly& p : polys)
            if (p.c0 + p.c1 * cand + p.c2 * cand * cand != 0) {
                all = false;
                break;
            }
        if (all) solutions.push_back(cand);
    }
    auto filter_from = [&](std::size_t first_new) {
        std::vector<Scalar> kept;
        for (const Scalar& cand : solutions) {
            bool all = true;
            for (std::size_t p = first_new; p < polys.size(); ++p)
                if (polys[p].c0 + polys[p].c1 * cand + polys[p].c2 * cand * cand != 0) {
                    all = false;
                    break;
                }
            if (all) kept.push_back(cand);
        }
        solutions = std::move(kept);
    };

    // The even system alone leaves a spurious second root; the vanishing
    // brackets against the odd pullbacks are linear in the coefficient and
    // separate it.  Walk test vectors until one root remains.
    if (solutions.size() > 1) {
        for (const VElement& v : tests) {
            std::size_t first_new = polys.size();
            for (int i = -2; i <= 2; ++i) {
                push_equation(even_commutator(a0, i, g.phi_tilde, -i, v),
                              even_commutator(ap, i, g.phi_tilde, -i, v),
                              even_commutator(am, i, g.phi_tilde, -i, v));
                push_equation(even_commutator(a0, i, g.psi_tilde, -i, v),
                              even_commutator(ap, i, g.psi_tilde, -i, v),
                              even_commutator(am, i, g.psi_tilde, -i, v));
            }
            filter_from(first_new);
            if (solutions.size() <= 1) break;
        }
    }

    // Last resort: self-bracket residuals one weight above the fitting
    // range.
    if (solutions.size() > 1) {
        for (int f = -1; f <= 2 && solutions.size() > 1; ++f)
            for (int d = -1; d <= 1 && solutions.size() > 1; ++d) {
                PieceBasis pb = enumerate_basis({3, f, d});
                for (const TermKey& key : pb.keys) {
                    VElement v = term(key.mono, key.base);
                    std::size_t first_new = polys.size();
                    for (const auto& [i, j] : kSelfPairs)
                        push_equation(even_commutator(a0, i, a0, j, v),
                                      even_commutator(ap, i, ap, j, v),
                                      even_commutator(am, i, am, j, v));
                    filter_from(first_new);
                    if (solutions.size() <= 1) break;
                }
            }
    }

    if (constrained && solutions.empty())
        throw std::runtime_error("chart transition: no correction coefficient exists");
    std::sort(solutions.begin(), solutions.end());

    g.lambda = solutions.empty() ? Scalar(0) : solutions.front();
    g.lambda_unique = constrained && solutions.size() == 1;
    g.a_tilde = a_tilde_at(g.lambda);
    verify_transition(g, tests);
    return g;
}

const TransformedGenerators& transformed_generators() {
    static std::mutex mu;
    static TransformedGenerators cached;
    static bool ready = false;
    std::scoped_lock lock(mu);
    if (!ready) {
        cached = derive_transformed_generators();
        ready = true;
    }
    return cached;
}

VElement sigma_base(const BaseMon& base) {
    if (!base.has_db) return base_elem(-base.exponent);
    return base_elem(-base.exponent - 2, true, -1);
}

namespace {

const VElement& tilde_state(Kind k) {
    const TransformedGenerators& g = transformed_generators();
    switch (k) {
        case Kind::A:
            return g.a_tilde;
        case Kind::B:
            return g.b_tilde;
        case Kind::Phi:
            return g.phi_tilde;
        default:
            return g.psi_tilde;
    }
}

// sigma is applied to every basis monomial of a sector for every cohomology
// window, so images are memoized per normal-form term.
const VElement& sigma_term(const TermKey& key) {
    static std::mutex mu;
    static std::map<TermKey, VElement> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    VElement w = sigma_base(key.base);
    for (auto f = key.mono.factors.rbegin(); f != key.mono.factors.rend(); ++f)
        w = mode_apply(tilde_state(f->kind), f->mode, w);
    return cache.emplace(key, std::move(w)).first->second;
}

}  // namespace

VElement sigma(const VElement& v) {
    VElement out;
    for (const auto& [key, c] : v.terms) out += c * sigma_term(key);
    return out;
}

SectorWindow sector_window(int weight_val, int fermion_val, int deg_lo, int deg_hi) {
    SectorWindow win;
    win.weight = weight_val;
    win.fermion = fermion_val;
    win.deg_lo = deg_lo;
    win.deg_hi = deg_hi;
    for (int d = deg_lo; d <= deg_hi; ++d) {
        PieceBasis pb = enumerate_basis({weight_val, fermion_val, d});
        for (const TermKey& key : pb.keys) {
            win.index.emplace(key, static_cast<int>(win.keys.size()));
            win.keys.push_back(key);
        }
    }
    return win;
}

SparseVector sector_coordinates(const VElement& v, const SectorWindow& win) {
    SparseVector out;
    for (const auto& [key, c] : v.terms) {
        auto it = win.index.find(key);
        if (it == win.index.end())
            throw std::invalid_argument("sector_coordinates: term outside window");
        out.set(it->second, c);
    }
    return out;
}

SubspaceBasis chart_zero_sector(const SectorWindow& win) {
    SubspaceBasis s(win.dim());
    for (int i = 0; i < win.dim(); ++i) {
        if (win.keys[i].base.exponent < 0) continue;
        SparseVector e;
        e.set(i, 1);
        s.insert(std::move(e));
    }
    return s;
}

SubspaceBasis chart_infinity_sector(const SectorWindow& win) {
    const int n = win.dim();
    // One linear constraint per negative-exponent monomial appearing in an
    // image: x is in the chart iff sigma(x) has no such term.
    std::map<TermKey, SparseVector> constraint;
    for (int i = 0; i < n; ++i) {
        for (const auto& [okey, c] : sigma_term(win.keys[i]).terms)
            if (okey.base.exponent < 0) constraint[okey].set(i, c);
    }
    std::vector<SparseVector> rows;
    rows.reserve(constraint.size());
    for (auto& [okey, row] : constraint) rows.push_back(std::move(row));
    std::vector<SparseVector> basis = kernel(rows, n);
    SubspaceBasis s(n);
    for (SparseVector& v : basis) s.insert(std::move(v));
    return s;
}

SubspaceBasis chart_infinity_piece_envelope(const TriDegree& t, int src_lo, int src_hi) {
    PieceBasis pb = enumerate_basis(t);
    SubspaceBasis s(pb.dim());
    if (pb.dim() == 0) return s;
    for (int d = src_lo; d <= src_hi; ++d) {
        if (d + t.weight < 0) continue;
        PieceBasis src = enumerate_basis({t.weight, t.fermion, d});
        for (const TermKey& key : src.keys) {
            VElement img = component(sigma(term(key.mono, key.base)), t);
            if (img.is_zero()) continue;
            s.insert(coordinates(img, pb));
        }
    }
    return s;
}

namespace {

struct SectorRun {
    int h0 = 0;
    int h1 = 0;
    SectorWindow win;
    std::vector<SparseVector> chart_sum;
    std::vector<VElement> h0_basis;
    std::vector<TermKey> h1_reps;
};

SectorRun compute_sector(int weight_val, int fermion_val, int lo, int hi) {
    SectorRun run;
    run.win = sector_window(weight_val, fermion_val, lo, hi);
    const SectorWindow& win = run.win;
    if (win.dim() == 0) return run;
    SubspaceBasis zero = chart_zero_sector(win);
    SubspaceBasis infinity = chart_infinity_sector(win);

    SubspaceBasis both = intersect(zero, infinity);
    run.h0 = both.dim();
    for (const SparseVector& row : both.rows()) {
        VElement vec;
        for (const auto& [col, c] : row.entries()) vec.add(win.keys[col], c);
        run.h0_basis.push_back(std::move(vec));
    }

    std::vector<SparseVector> generators;
    for (const SparseVector& r : zero.rows()) generators.push_back(r);
    for (const SparseVector& r : infinity.rows()) generators.push_back(r);
    SubspaceBasis sum = row_reduce(generators, win.dim());
    run.h1 = win.dim() - sum.dim();
    run.chart_sum = sum.rows();
    if (run.h1 > 0) {
        SubspaceBasis fill = sum;
        for (int k = 0; k < win.dim(); ++k) {
            SparseVector e;
            e.set(k, 1);
            if (fill.insert(std::move(e))) run.h1_reps.push_back(win.keys[k]);
        }
    }
    return run;
}

// Sector runs are pure functions of their arguments and are requested
// repeatedly by the tables, the screening check, and the orbit checks, so
// completed runs are kept for the lifetime of the process.
const SectorRun& run_sector(int weight_val, int fermion_val, int lo, int hi) {
    static std::map<std::array<int, 4>, SectorRun> cache;
    static std::mutex mutex;
    std::array<int, 4> key{weight_val, fermion_val, lo, hi};
    {
        std::lock_guard<std::mutex> hold(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    SectorRun run = compute_sector(weight_val, fermion_val, lo, hi);
    std::lock_guard<std::mutex> hold(mutex);
    return cache.emplace(key, std::move(run)).first->second;
}

CohomologyEntry entry_from_run(SectorRun primary, int win_lo, int win_hi) {
    CohomologyEntry e;
    e.weight = primary.win.weight;
    e.fermion = primary.win.fermion;
    e.window_lo = win_lo;
    e.window_hi = win_hi;
    e.h0 = primary.h0;
    e.h1 = primary.h1;
    e.frame = std::move(primary.win);
    e.chart_sum = std::move(primary.chart_sum);
    e.h0_basis = std::move(primary.h0_basis);
    e.h1_reps = std::move(primary.h1_reps);
    return e;
}

}  // namespace

CohomologyEntry cech_cohomology(int weight_val, int fermion_val, int win_lo, int win_hi) {
    const SectorRun& wide = run_sector(weight_val, fermion_val, win_lo - 4, win_hi + 4);
    CohomologyEntry e =
        entry_from_run(run_sector(weight_val, fermion_val, win_lo, win_hi), win_lo, win_hi);
    e.enlarged_lo = win_lo - 4;
    e.enlarged_hi = win_hi + 4;
    e.h0_enlarged = wide.h0;
    e.h1_enlarged = wide.h1;
    e.stabilized = e.h0 == wide.h0 && e.h1 == wide.h1;
    e.reps_stable = e.stabilized && e.h1_reps == wide.h1_reps;
    return e;
}

CohomologyEntry cech_cohomology_once(int weight_val, int fermion_val, int win_lo, int win_hi) {
    CohomologyEntry e =
        entry_from_run(run_sector(weight_val, fermion_val, win_lo, win_hi), win_lo, win_hi);
    e.enlarged_lo = win_lo;
    e.enlarged_hi = win_hi;
    e.h0_enlarged = e.h0;
    e.h1_enlarged = e.h1;
    return e;
}

CohomologyPairing cohomology_pairing(const CohomologyEntry& h0_side, const CohomologyEntry& h1_side) {
    CohomologyPairing out;
    out.weight = h0_side.weight;
    out.fermion = h0_side.fermion;

    const std::vector<VElement>& sections = h0_side.h0_basis;
    std::vector<VElement> classes;
    for (const TermKey& key : h1_side.h1_reps) classes.push_back(term(key.mono, key.base));

    out.gram.assign(sections.size(), std::vector<Scalar>(classes.size(), Scalar(0)));
    std::vector<SparseVector> rows(sections.size());
    for (std::size_t i = 0; i < sections.size(); ++i)
        for (std::size_t j = 0; j < classes.size(); ++j) {
            out.gram[i][j] = pair(sections[i], classes[j]);
            if (out.gram[i][j] != 0) rows[i].set(static_cast<int>(j), out.gram[i][j]);
        }
    out.rank = rank_of(rows, static_cast<int>(classes.size()));
    out.nondegenerate =
        sections.size() == classes.size() && out.rank == static_cast<int>(sections.size());
    return out;
}

}  // namespace chiralp1
