#include "chiralp1/pairing.hpp"

#include <random>
#include <set>

#include "chiralp1/linalg.hpp"

namespace chiralp1 {

namespace {

int term_parity(const TermKey& key) {
    int p = key.base.has_db ? 1 : 0;
    for (const auto& g : key.mono.factors)
        if (is_odd(g)) p ^= 1;
    return p;
}

LaurentForm laurent_of(const BaseMon& base) {
    LaurentForm f;
    if (base.has_db)
        f.form_part[base.exponent] = 1;
    else
        f.fun_part[base.exponent] = 1;
    return f;
}

Scalar pair_term(const TermKey& key, const VElement& w) {
    if (key.mono.factors.empty()) return residue_pair(laurent_of(key.base), weight_zero_part(w));
    GenMode x = key.mono.factors.front();
    TermKey rest = key;
    rest.mono.factors.erase(rest.mono.factors.begin());
    VElement moved = act(eta(x), w);
    Scalar val = pair_term(rest, moved);
    if (is_odd(x) && term_parity(rest)) val = -val;
    return val;
}

}  // namespace

Scalar residue_pair(const LaurentForm& nu, const LaurentForm& mu) {
    Scalar total = 0;
    for (const auto& [i, c] : nu.fun_part) {
        auto it = mu.form_part.find(-1 - i);
        if (it != mu.form_part.end()) total += c * it->second;
    }
    for (const auto& [i, c] : nu.form_part) {
        auto it = mu.fun_part.find(-1 - i);
        if (it != mu.fun_part.end()) total += c * it->second;
    }
    return total;
}

Scalar pair(const VElement& v, const VElement& w) {
    std::set<int> right_weights;
    for (const auto& [key, c] : w.terms) right_weights.insert(weight(key));
    Scalar total = 0;
    for (const auto& [key, c] : v.terms) {
        if (!right_weights.count(weight(key))) continue;
        total += c * pair_term(key, w);
    }
    return total;
}

PairingReport gram_matrix(const TriDegree& left, const TriDegree& right) {
    PairingReport rep;
    rep.left = left;
    rep.right = right;
    PieceBasis a = enumerate_basis(left);
    PieceBasis b = enumerate_basis(right);
    rep.gram.assign(a.dim(), std::vector<Scalar>(b.dim(), Scalar(0)));
    std::vector<SparseVector> rows;
    for (int i = 0; i < a.dim(); ++i) {
        VElement vi = term(a.keys[i].mono, a.keys[i].base);
        SparseVector row;
        for (int j = 0; j < b.dim(); ++j) {
            Scalar val = pair(vi, term(b.keys[j].mono, b.keys[j].base));
            rep.gram[i][j] = val;
            if (val != 0) row.set(j, val);
        }
        rows.push_back(row);
    }
    rep.rank = rank_of(rows, b.dim());
    rep.nondegenerate = a.dim() == b.dim() && rep.rank == a.dim();
    return rep;
}

ComplementScan scan_complement(const TriDegree& piece, int deg_lo, int deg_hi) {
    ComplementScan scan;
    scan.piece = piece;
    if (enumerate_basis(piece).dim() == 0) return scan;
    for (int f = -piece.weight - 1; f <= piece.weight + 2; ++f) {
        for (int d = deg_lo; d <= deg_hi; ++d) {
            TriDegree partner{piece.weight, f, d};
            if (enumerate_basis(partner).dim() == 0) continue;
            PairingReport rep = gram_matrix(piece, partner);
            if (rep.rank == 0) continue;
            scan.nonzero_partners.push_back(partner);
            if (rep.nondegenerate && !scan.full_rank_partner) scan.full_rank_partner = partner;
        }
    }
    return scan;
}

namespace {

int range_draw(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Scalar rational_draw(std::mt19937_64& rng) {
    return frac(range_draw(rng, -9, 9), range_draw(rng, 1, 3));
}

VElement random_in_piece(std::mt19937_64& rng, const TriDegree& tri) {
    VElement out;
    for (const auto& key : enumerate_basis(tri).keys)
        if (rng() % 2 == 0) out.add(key, rational_draw(rng));
    return out;
}

TriDegree complement_of(const TriDegree& t) {
    return {t.weight, 1 - t.fermion, -1 - 2 * t.weight - t.degree};
}

std::string render_case(const GenMode& x, const VElement& v, const VElement& w) {
    return "x = " + to_string(x) + ", v = " + to_string(v) + ", w = " + to_string(w);
}

}  // namespace

ContravarianceReport contravariance_check(int sample_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ContravarianceReport rep;
    const Kind kinds[] = {Kind::A, Kind::B, Kind::Phi, Kind::Psi};
    while (rep.samples < sample_count) {
        int wv = range_draw(rng, 0, 3);
        TriDegree tv{wv, range_draw(rng, -wv, wv + 1), range_draw(rng, -3, 2)};
        VElement v = random_in_piece(rng, tv);
        if (v.is_zero()) continue;
        GenMode x{kinds[range_draw(rng, 0, 3)], range_draw(rng, -2, 2)};
        int parity_v = tv.fermion & 1;
        int koszul = (is_odd(x) && parity_v) ? -1 : 1;

        VElement xv = act(x, v);
        TriDegree tw = xv.is_zero() ? complement_of(tv) : complement_of(tri_degree(xv.terms.begin()->first));
        VElement w = random_in_piece(rng, tw);

        ++rep.samples;
        Scalar lhs = pair(xv, w);
        Scalar rhs = koszul * pair(v, act(eta(x), w));
        Scalar lhs2 = pair(v, act(x, w));
        Scalar rhs2 = koszul * pair(act(eta(x), v), w);
        // supersymmetry, on a companion chosen for the untouched pair
        VElement u = random_in_piece(rng, complement_of(tv));
        int parity_u = complement_of(tv).fermion & 1;
        Scalar sym_l = pair(v, u);
        Scalar sym_r = (parity_v && parity_u) ? Scalar(-pair(u, v)) : pair(u, v);
        if (lhs != rhs || lhs2 != rhs2 || sym_l != sym_r) {
            ++rep.failures;
            if (rep.counterexample.empty()) rep.counterexample = render_case(x, v, w);
        }
    }
    return rep;
}

}  // namespace chiralp1
