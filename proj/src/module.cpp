#include "chiralp1/module.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace chiralp1 {

int weight(const TermKey& t) {
    int w = 0;
    for (const auto& g : t.mono.factors) w += weight_shift(g);
    return w;
}

int fermion(const TermKey& t) {
    int f = t.base.has_db ? 1 : 0;
    for (const auto& g : t.mono.factors) {
        if (g.kind == Kind::Phi) ++f;
        if (g.kind == Kind::Psi) --f;
    }
    return f;
}

int degree(const TermKey& t) {
    int d = t.base.exponent;
    for (const auto& g : t.mono.factors) d += degree(g);
    return d;
}

TriDegree tri_degree(const TermKey& t) { return {weight(t), fermion(t), degree(t)}; }

void VElement::add(const TermKey& key, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

VElement& VElement::operator+=(const VElement& other) {
    for (const auto& [k, c] : other.terms) add(k, c);
    return *this;
}

VElement& VElement::operator-=(const VElement& other) {
    for (const auto& [k, c] : other.terms) add(k, -c);
    return *this;
}

VElement& VElement::operator*=(const Scalar& c) {
    if (c == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [k, v] : terms) v *= c;
    return *this;
}

VElement operator+(VElement lhs, const VElement& rhs) { return lhs += rhs; }
VElement operator-(VElement lhs, const VElement& rhs) { return lhs -= rhs; }
VElement operator*(const Scalar& c, VElement v) { return v *= c; }

VElement term(const CreationMonomial& mono, const BaseMon& base, const Scalar& c) {
    VElement v;
    v.add({mono, base}, c);
    return v;
}

VElement base_elem(int exponent, bool has_db, const Scalar& c) {
    return term({}, {exponent, has_db}, c);
}

int max_weight(const VElement& v) {
    int w = 0;
    for (const auto& [k, c] : v.terms) w = std::max(w, weight(k));
    return w;
}

VElement component(const VElement& v, const TriDegree& t) {
    VElement out;
    for (const auto& [k, c] : v.terms)
        if (tri_degree(k) == t) out.add(k, c);
    return out;
}

std::map<TriDegree, VElement> components(const VElement& v) {
    std::map<TriDegree, VElement> out;
    for (const auto& [k, c] : v.terms) out[tri_degree(k)].add(k, c);
    return out;
}

VElement act(const GenMode& x, const VElement& v) {
    VElement out;
    for (const auto& [key, c] : v.terms) {
        const auto& factors = key.mono.factors;
        if (x.mode < 0) {
            auto pos = std::lower_bound(factors.begin(), factors.end(), x);
            if (is_odd(x) && pos != factors.end() && *pos == x) continue;
            int sgn = 1;
            if (is_odd(x))
                for (auto it = factors.begin(); it != pos; ++it)
                    if (is_odd(*it)) sgn = -sgn;
            TermKey nk = key;
            nk.mono.factors.insert(nk.mono.factors.begin() + (pos - factors.begin()), x);
            out.add(nk, sgn * c);
            continue;
        }
        // Commute x rightward: each factor with a nonzero bracket is
        // contracted away; the sign tracks odd transpositions.
        int sgn = 1;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            Scalar br = super_bracket(x, factors[j]);
            if (br != 0) {
                TermKey nk = key;
                nk.mono.factors.erase(nk.mono.factors.begin() + j);
                out.add(nk, sgn * br * c);
            }
            if (is_odd(x) && is_odd(factors[j])) sgn = -sgn;
        }
        if (x.mode > 0) continue;  // positive modes kill the base
        TermKey nk = key;
        Scalar mult = sgn * c;
        switch (x.kind) {
            case Kind::B:
                nk.base.exponent += 1;
                break;
            case Kind::A:
                mult *= nk.base.exponent;
                nk.base.exponent -= 1;
                break;
            case Kind::Phi:
                if (nk.base.has_db) mult = 0;
                nk.base.has_db = true;
                break;
            case Kind::Psi:
                if (!nk.base.has_db) mult = 0;
                nk.base.has_db = false;
                break;
        }
        out.add(nk, mult);
    }
    return out;
}

VElement act(const SignedGen& x, const VElement& v) {
    VElement out = act(x.gen, v);
    if (x.sign != 1) out *= x.sign;
    return out;
}

VElement l_zero(const VElement& v) {
    VElement out;
    int top = max_weight(v);
    for (int j = 1; j <= top; ++j) {
        VElement piece = act(GenMode{Kind::B, -j}, act(GenMode{Kind::A, j}, v));
        piece -= act(GenMode{Kind::A, -j}, act(GenMode{Kind::B, j}, v));
        piece += act(GenMode{Kind::Phi, -j}, act(GenMode{Kind::Psi, j}, v));
        piece += act(GenMode{Kind::Psi, -j}, act(GenMode{Kind::Phi, j}, v));
        piece *= j;
        out += piece;
    }
    return out;
}

namespace {

const Kind kKindOrder[4] = {Kind::A, Kind::B, Kind::Phi, Kind::Psi};

void gen_monomials(int weight_left, int kind_idx, int min_mode, std::vector<GenMode>& cur,
                   std::vector<CreationMonomial>& out) {
    if (kind_idx == 4) {
        if (weight_left == 0) out.push_back({cur});
        return;
    }
    gen_monomials(weight_left, kind_idx + 1, -weight_left, cur, out);
    Kind k = kKindOrder[kind_idx];
    for (int m = std::max(min_mode, -weight_left); m <= -1; ++m) {
        cur.push_back({k, m});
        gen_monomials(weight_left + m, kind_idx, is_odd(k) ? m + 1 : m, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<CreationMonomial> creation_monomials(int weight) {
    std::vector<CreationMonomial> out;
    if (weight < 0) return out;
    std::vector<GenMode> cur;
    gen_monomials(weight, 0, -weight, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

PieceBasis enumerate_basis(const TriDegree& t) {
    PieceBasis piece;
    piece.tri = t;
    if (t.weight < 0) return piece;
    int m = t.degree + t.weight;
    for (const auto& mono : creation_monomials(t.weight)) {
        int fc = 0;
        for (const auto& g : mono.factors) {
            if (g.kind == Kind::Phi) ++fc;
            if (g.kind == Kind::Psi) --fc;
        }
        int eps = t.fermion - fc;
        if (eps == 0 || eps == 1) piece.keys.push_back({mono, {m, eps == 1}});
    }
    std::sort(piece.keys.begin(), piece.keys.end());
    for (std::size_t i = 0; i < piece.keys.size(); ++i)
        piece.index[piece.keys[i]] = static_cast<int>(i);
    return piece;
}

SparseVector coordinates(const VElement& v, const PieceBasis& piece) {
    SparseVector out;
    for (const auto& [k, c] : v.terms) {
        auto it = piece.index.find(k);
        if (it == piece.index.end())
            throw std::invalid_argument("coordinates: term outside the piece " + to_string(k));
        out.set(it->second, c);
    }
    return out;
}

bool in_chart_zero(const VElement& v) {
    for (const auto& [k, c] : v.terms)
        if (k.base.exponent < 0) return false;
    return true;
}

std::map<TriDegree, SubspaceBasis> singular_subspace(int weight_val, int deg_lo, int deg_hi) {
    std::map<TriDegree, SubspaceBasis> out;
    for (int f = -weight_val; f <= weight_val + 1; ++f) {
        for (int d = deg_lo; d <= deg_hi; ++d) {
            TriDegree t{weight_val, f, d};
            PieceBasis src = enumerate_basis(t);
            int n = src.dim();
            std::vector<SparseVector> constraints;
            for (int j = 1; j <= weight_val; ++j) {
                for (Kind k : kKindOrder) {
                    GenMode x{k, j};
                    int df = k == Kind::Phi ? 1 : (k == Kind::Psi ? -1 : 0);
                    PieceBasis dst = enumerate_basis({weight_val - j, f + df, d + j});
                    std::vector<SparseVector> block(dst.dim());
                    for (int b = 0; b < n; ++b) {
                        VElement img = act(x, term(src.keys[b].mono, src.keys[b].base));
                        SparseVector co = coordinates(img, dst);
                        for (const auto& [col, val] : co.entries()) block[col].set(b, val);
                    }
                    for (const auto& row : block)
                        if (!row.is_zero()) constraints.push_back(row);
                }
            }
            SubspaceBasis sb(n);
            for (const auto& kvec : kernel(constraints, n)) sb.insert(kvec);
            out[t] = sb;
        }
    }
    return out;
}

LaurentForm weight_zero_part(const VElement& v) {
    LaurentForm f;
    for (const auto& [k, c] : v.terms) {
        if (!k.mono.factors.empty()) continue;
        if (k.base.has_db)
            f.form_part[k.base.exponent] = c;
        else
            f.fun_part[k.base.exponent] = c;
    }
    return f;
}

VElement from_laurent(const LaurentForm& f) {
    VElement v;
    for (const auto& [m, c] : f.fun_part) v.add({{}, {m, false}}, c);
    for (const auto& [m, c] : f.form_part) v.add({{}, {m, true}}, c);
    return v;
}

std::string to_string(const TermKey& t) {
    std::string s;
    for (const auto& g : t.mono.factors) {
        if (!s.empty()) s += ' ';
        s += to_string(g);
    }
    if (!s.empty()) s += " . ";
    if (t.base.exponent == 0)
        s += t.base.has_db ? "db" : "1";
    else {
        s += "b^" + std::to_string(t.base.exponent);
        if (t.base.has_db) s += " db";
    }
    return s;
}

std::string to_string(const VElement& v) {
    if (v.is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : v.terms) {
        if (!s.empty()) s += " + ";
        s += "(" + to_string(c) + ")*" + to_string(k);
    }
    return s;
}

}  // namespace chiralp1
