#include "chiralp1/fields.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <set>
#include <stdexcept>

namespace chiralp1 {

namespace {

bool supported_factor(const GenMode& g) {
    return (g.kind == Kind::A || g.kind == Kind::Psi) && g.mode == -1;
}

// Generalized binomial coefficient, defined for negative upper index.
Scalar binom(int m, int k) {
    Scalar c = 1;
    for (int i = 0; i < k; ++i) c *= frac(m - i, i + 1);
    return c;
}

// Multiplication by b^s: the zero mode is invertible and central.
VElement shift_base(const VElement& v, int s) {
    if (s == 0) return v;
    VElement out;
    for (const auto& [k, c] : v.terms) {
        TermKey nk = k;
        nk.base.exponent += s;
        out.add(nk, c);
    }
    return out;
}

int max_a_factors(const VElement& v) {
    int best = 0;
    for (const auto& [k, c] : v.terms) {
        int cnt = 0;
        for (const auto& g : k.mono.factors)
            if (g.kind == Kind::A) ++cnt;
        best = std::max(best, cnt);
    }
    return best;
}

// Mode n of the field of b^m, any integer m: binomial expansion around
// the zero mode, exact for m >= 0 and terminating for m < 0.  The order-k
// piece is mode n of (sum of nonzero b-modes)^k: ordered k-tuples of
// nonzero modes summing to n.  Positive modes must each contract a distinct
// a-factor of v and negative modes are capped by the output weight, so
// only finitely many orders contribute.  Memoized per (k, n); v is fixed.
VElement fun_mode(int m, int n, const VElement& v) {
    if (v.is_zero()) return {};
    int w = max_weight(v);
    int kmax = max_a_factors(v) + std::max(0, w - n);
    if (m >= 0) kmax = std::min(kmax, m);

    std::map<std::pair<int, int>, VElement> memo;
    auto power = [&](auto&& self, int k, int s) -> const VElement& {
        auto it = memo.find({k, s});
        if (it != memo.end()) return it->second;
        VElement val;
        if (k == 0) {
            if (s == 0) val = v;
        } else {
            for (int i = s - w; i <= w; ++i) {
                if (i == 0) continue;
                const VElement& inner = self(self, k - 1, s - i);
                if (inner.is_zero()) continue;
                val += act(GenMode{Kind::B, i}, inner);
            }
        }
        return memo.emplace(std::pair<int, int>{k, s}, std::move(val)).first->second;
    };

    VElement out;
    for (int k = 0; k <= kmax; ++k) {
        VElement d = power(power, k, n);
        if (d.is_zero()) continue;
        d = shift_base(d, m - k);
        d *= binom(m, k);
        out += d;
    }
    return out;
}

// Mode n of the field of b^m (db)^eps.  The db factor peels off as the
// phi field with its creation cut at mode 0; the b^m part is even, so no
// reordering sign appears.
VElement base_mode(int m, bool form_bit, int n, const VElement& v) {
    if (v.is_zero()) return {};
    if (!form_bit) return fun_mode(m, n, v);
    VElement out;
    int w = max_weight(v);
    for (int i = n - w; i <= 0; ++i) {
        VElement inner = fun_mode(m, n - i, v);
        if (!inner.is_zero()) out += act(GenMode{Kind::Phi, i}, inner);
    }
    for (int i = 1; i <= w; ++i) {
        VElement hit = act(GenMode{Kind::Phi, i}, v);
        if (!hit.is_zero()) out += fun_mode(m, n - i, hit);
    }
    return out;
}

int rest_parity(const std::vector<GenMode>& factors, std::size_t idx, const BaseMon& base) {
    int p = base.has_db ? 1 : 0;
    for (std::size_t j = idx; j < factors.size(); ++j)
        if (is_odd(factors[j])) p ^= 1;
    return p;
}

VElement mode_term(const std::vector<GenMode>& factors, std::size_t idx, const BaseMon& base,
                   int n, const VElement& v) {
    if (v.is_zero()) return {};
    if (idx == factors.size()) return base_mode(base.exponent, base.has_db, n, v);
    GenMode x = factors[idx];
    int sign = (is_odd(x) && rest_parity(factors, idx + 1, base)) ? -1 : 1;
    int w = max_weight(v);
    VElement out;
    for (int i = n - w; i <= -1; ++i) {
        VElement inner = mode_term(factors, idx + 1, base, n - i, v);
        if (!inner.is_zero()) out += act(GenMode{x.kind, i}, inner);
    }
    for (int i = 0; i <= w; ++i) {
        VElement hit = act(GenMode{x.kind, i}, v);
        if (hit.is_zero()) continue;
        VElement inner = mode_term(factors, idx + 1, base, n - i, hit);
        if (sign != 1) inner *= -1;
        out += inner;
    }
    return out;
}

VElement eta_mode_term(const std::vector<GenMode>& factors, std::size_t idx, const BaseMon& base,
                       int n, const VElement& v) {
    if (v.is_zero()) return {};
    if (idx == factors.size()) return base_mode(base.exponent, base.has_db, -n, v);
    GenMode x = factors[idx];
    int sign = (is_odd(x) && rest_parity(factors, idx + 1, base)) ? -1 : 1;
    int w = max_weight(v);
    VElement out;
    // Reversal swaps the application order: creation modes of x hit v
    // first through their eta images, annihilation modes hit last.
    for (int i = -w; i <= -1; ++i) {
        VElement hit = act(eta(GenMode{x.kind, i}), v);
        if (hit.is_zero()) continue;
        VElement inner = eta_mode_term(factors, idx + 1, base, n - i, hit);
        if (sign != 1) inner *= -1;
        out += inner;
    }
    for (int i = 0; i <= n + w; ++i) {
        VElement inner = eta_mode_term(factors, idx + 1, base, n - i, v);
        if (!inner.is_zero()) out += act(eta(GenMode{x.kind, i}), inner);
    }
    return out;
}

}  // namespace

bool supported_state(const VElement& u) {
    for (const auto& [k, c] : u.terms)
        for (const auto& g : k.mono.factors)
            if (!supported_factor(g)) return false;
    return true;
}

VElement mode_apply(const VElement& u, int n, const VElement& v) {
    if (!supported_state(u))
        throw std::domain_error("mode_apply: unsupported composite state " + to_string(u));
    VElement out;
    for (const auto& [key, c] : u.terms) {
        VElement part = mode_term(key.mono.factors, 0, key.base, n, v);
        part *= c;
        out += part;
    }
    return out;
}

VElement expand_laurent_field(const std::map<int, Scalar>& fun, bool form_bit, int n,
                              const VElement& v) {
    VElement out;
    for (const auto& [m, c] : fun) {
        VElement part = base_mode(m, form_bit, n, v);
        part *= c;
        out += part;
    }
    return out;
}

VElement eta_mode_apply(const VElement& u, int n, const VElement& v) {
    if (!supported_state(u))
        throw std::domain_error("eta_mode_apply: unsupported composite state " + to_string(u));
    VElement out;
    for (const auto& [key, c] : u.terms) {
        VElement part = eta_mode_term(key.mono.factors, 0, key.base, n, v);
        part *= c;
        out += part;
    }
    return out;
}

VElement q_diff(const VElement& v) {
    VElement out;
    int w = max_weight(v);
    for (int j = -w; j <= w; ++j)
        out += act(GenMode{Kind::Phi, -j}, act(GenMode{Kind::A, j}, v));
    return out;
}

VElement HomotopyOperator::apply(const VElement& v) const {
    VElement out;
    int w = max_weight(v);
    for (int j = -w; j <= w; ++j) {
        auto it = coeffs.find(j);
        if (it == coeffs.end())
            throw std::runtime_error("homotopy coefficients not solved up to the input weight");
        if (it->second == 0) continue;
        VElement part = act(GenMode{Kind::Psi, -j}, act(GenMode{Kind::B, j}, v));
        part *= it->second;
        out += part;
    }
    return out;
}

HomotopyOperator derive_homotopy(int max_weight_val) {
    HomotopyOperator op;
    for (int w = 1; w <= std::max(max_weight_val, 1); ++w) {
        std::vector<int> unknown_js;
        for (int j = -w; j <= w; ++j)
            if (!op.coeffs.count(j)) unknown_js.push_back(j);
        if (unknown_js.empty()) continue;
        std::map<int, int> col;
        for (std::size_t c = 0; c < unknown_js.size(); ++c) col[unknown_js[c]] = static_cast<int>(c);

        std::vector<SparseVector> rows;
        std::vector<Scalar> rhs;
        for (int f = -w; f <= w + 1; ++f) {
            for (int d = -2; d <= 2; ++d) {
                PieceBasis piece = enumerate_basis({w, f, d});
                for (const auto& key : piece.keys) {
                    VElement v = term(key.mono, key.base);
                    VElement qv = q_diff(v);
                    VElement target = l_zero(v);
                    std::map<TermKey, SparseVector> lin;
                    for (int j = -w; j <= w; ++j) {
                        VElement contrib =
                            q_diff(act(GenMode{Kind::Psi, -j}, act(GenMode{Kind::B, j}, v))) +
                            act(GenMode{Kind::Psi, -j}, act(GenMode{Kind::B, j}, qv));
                        if (contrib.is_zero()) continue;
                        auto solved = op.coeffs.find(j);
                        if (solved != op.coeffs.end()) {
                            contrib *= solved->second;
                            target -= contrib;
                        } else {
                            for (const auto& [k, c] : contrib.terms) lin[k].add(col[j], c);
                        }
                    }
                    std::set<TermKey> keys;
                    for (const auto& [k, row] : lin) keys.insert(k);
                    for (const auto& [k, c] : target.terms) keys.insert(k);
                    for (const auto& k : keys) {
                        auto lit = lin.find(k);
                        rows.push_back(lit == lin.end() ? SparseVector{} : lit->second);
                        auto tit = target.terms.find(k);
                        rhs.push_back(tit == target.terms.end() ? Scalar(0) : tit->second);
                    }
                }
            }
        }
        LinearSolution sol = solve_linear_system(rows, rhs, static_cast<int>(unknown_js.size()));
        if (!sol.consistent)
            throw std::runtime_error("homotopy derivation failed at weight " + std::to_string(w));
        if (!sol.unique) op.unique = false;
        for (std::size_t c = 0; c < unknown_js.size(); ++c) op.coeffs[unknown_js[c]] = sol.values[c];
    }
    return op;
}

VElement g_zero(const VElement& v) {
    static std::mutex mu;
    static HomotopyOperator cached;
    int need = std::max(max_weight(v), 1);
    std::lock_guard<std::mutex> lock(mu);
    if (!cached.coeffs.count(need)) cached = derive_homotopy(need);
    return cached.apply(v);
}

namespace {

// Stacks one vector equation sum_u x_u * images[u] = target as scalar rows.
struct EquationBatch {
    std::vector<SparseVector> rows;
    std::vector<Scalar> rhs;

    void add(const std::array<VElement, 4>& images, const VElement& target) {
        std::set<TermKey> keys;
        for (const auto& im : images)
            for (const auto& [k, c] : im.terms) keys.insert(k);
        for (const auto& [k, c] : target.terms) keys.insert(k);
        for (const auto& k : keys) {
            SparseVector row;
            for (int u = 0; u < 4; ++u) {
                auto it = images[u].terms.find(k);
                if (it != images[u].terms.end()) row.set(u, it->second);
            }
            rows.push_back(row);
            auto it = target.terms.find(k);
            rhs.push_back(it == target.terms.end() ? Scalar(0) : it->second);
        }
    }
};

// Lie derivative along g(b) d/db of a weight-zero form, for the classical
// pins: functions map to g f', forms f db to (g f' + f g') db.
VElement lie_derivative(const std::map<int, Scalar>& g, int m, bool form_bit) {
    VElement out;
    for (const auto& [e, c] : g) {
        if (m != 0) out.add({{}, {m - 1 + e, form_bit}}, c * m);
        if (form_bit) out.add({{}, {m + e - 1, true}}, c * e);
    }
    return out;
}

}  // namespace

Sl2Modes sl2_modes() {
    VElement h_a = act(GenMode{Kind::A, -1}, base_elem(1));
    VElement h_psi = act(GenMode{Kind::Psi, -1}, base_elem(0, true));
    VElement f_a = act(GenMode{Kind::A, -1}, base_elem(2));
    VElement f_psi = act(GenMode{Kind::Psi, -1}, base_elem(1, true));
    GenMode e0{Kind::A, 0};

    std::map<int, Scalar> g_h{{1, Scalar(-2)}};  // -2b
    std::map<int, Scalar> g_f{{2, Scalar(-1)}};  // -b^2

    EquationBatch eqs;
    for (int m = -3; m <= 3; ++m) {
        for (bool form_bit : {false, true}) {
            VElement v = base_elem(m, form_bit);
            eqs.add({{mode_apply(h_a, 0, v), mode_apply(h_psi, 0, v), {}, {}}},
                    lie_derivative(g_h, m, form_bit));
            eqs.add({{{}, {}, mode_apply(f_a, 0, v), mode_apply(f_psi, 0, v)}},
                    lie_derivative(g_f, m, form_bit));
        }
    }
    for (int w = 0; w <= 2; ++w) {
        for (int f = -2; f <= 3; ++f) {
            for (int d = -2; d <= 2; ++d) {
                PieceBasis piece = enumerate_basis({w, f, d});
                for (const auto& key : piece.keys) {
                    VElement v = term(key.mono, key.base);
                    VElement ev = act(e0, v);
                    // [h, e] = 2e
                    eqs.add({{mode_apply(h_a, 0, ev) - act(e0, mode_apply(h_a, 0, v)),
                              mode_apply(h_psi, 0, ev) - act(e0, mode_apply(h_psi, 0, v)),
                              {},
                              {}}},
                            2 * ev);
                    // [e, f] = h
                    eqs.add({{-1 * mode_apply(h_a, 0, v), -1 * mode_apply(h_psi, 0, v),
                              act(e0, mode_apply(f_a, 0, v)) - mode_apply(f_a, 0, ev),
                              act(e0, mode_apply(f_psi, 0, v)) - mode_apply(f_psi, 0, ev)}},
                            VElement{});
                }
            }
        }
    }

    LinearSolution sol = solve_linear_system(eqs.rows, eqs.rhs, 4);
    if (!sol.consistent) throw std::runtime_error("sl2 derivation failed");

    Sl2Modes out;
    out.alpha = sol.values[0];
    out.beta = sol.values[1];
    out.gamma = sol.values[2];
    out.delta = sol.values[3];
    out.unique = sol.unique;
    out.e = {act(GenMode{Kind::A, -1}, base_elem(0)), 0};
    out.h = {out.alpha * h_a + out.beta * h_psi, 0};
    out.f = {out.gamma * f_a + out.delta * f_psi, 0};
    return out;
}

}  // namespace chiralp1
