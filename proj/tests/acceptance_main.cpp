// Acceptance harness: one line per criterion, PASS or FAIL, exit status 1
// if anything fails.  Each criterion is checked from first principles here
// rather than through the reporting layer, so a regression in that layer
// cannot mask a regression in the mathematics.

#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chiralp1/charts.hpp"
#include "chiralp1/cohomology.hpp"
#include "chiralp1/fields.hpp"
#include "chiralp1/pairing.hpp"
#include "chiralp1/reports.hpp"

using namespace chiralp1;

namespace {

constexpr int kMaxWeight = 3;
constexpr std::uint64_t kSeed = 20260818;

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int number, const std::string& name, bool passed, const std::string& detail,
            double elapsed) {
    std::ostringstream line;
    line << (passed ? "PASS" : "FAIL") << ": criterion " << number << " - " << name;
    if (!detail.empty()) line << " [" << detail << "]";
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << elapsed << "s)";
    std::puts(line.str().c_str());
    if (!passed) ++g_failures;
}

template <typename Fn>
void criterion(int number, const std::string& name, Fn&& body) {
    auto start = std::chrono::steady_clock::now();
    bool passed = false;
    std::string detail;
    try {
        passed = body(detail);
    } catch (const std::exception& e) {
        passed = false;
        detail = std::string("exception: ") + e.what();
    }
    report(number, name, passed, detail, seconds_since(start));
}

std::vector<TermKey> keys_in(int w, int f, int d_lo, int d_hi) {
    std::vector<TermKey> keys;
    for (int d = d_lo; d <= d_hi; ++d) {
        PieceBasis pb = enumerate_basis({w, f, d});
        keys.insert(keys.end(), pb.keys.begin(), pb.keys.end());
    }
    return keys;
}

std::vector<TermKey> weight_keys(int w, int d_lo, int d_hi) {
    std::vector<TermKey> keys;
    for (int f = -w - 1; f <= w + 2; ++f) {
        auto piece = keys_in(w, f, d_lo, d_hi);
        keys.insert(keys.end(), piece.begin(), piece.end());
    }
    return keys;
}

const std::vector<Kind> kKinds = {Kind::A, Kind::B, Kind::Phi, Kind::Psi};

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

const VElement& tilde_state(const TransformedGenerators& tg, Kind k) {
    switch (k) {
        case Kind::A: return tg.a_tilde;
        case Kind::B: return tg.b_tilde;
        case Kind::Phi: return tg.phi_tilde;
        default: return tg.psi_tilde;
    }
}

}  // namespace

int main() {
    const int half = default_window(kMaxWeight);

    // 1. The weight-zero cohomology is the Hodge diamond of the line, and
    //    computing it from a warm cache takes under a second.
    criterion(1, "weight-zero cohomology reproduces the Hodge numbers quickly",
              [&](std::string& detail) {
                  auto warm_start = std::chrono::steady_clock::now();
                  transformed_generators();  // one-time derivation of the transition data
                  double warm = seconds_since(warm_start);

                  auto start = std::chrono::steady_clock::now();
                  int w0 = default_window(0);
                  bool ok = true;
                  for (int f = -1; f <= 2; ++f) {
                      CohomologyEntry e = cech_cohomology(0, f, -w0, w0);
                      ok = ok && e.h0 == (f == 0 ? 1 : 0) && e.h1 == (f == 1 ? 1 : 0);
                  }
                  double timed = seconds_since(start);
                  std::ostringstream d;
                  d.setf(std::ios::fixed);
                  d.precision(3);
                  d << "h0 = 1 at (0,0), h1 = 1 at (0,1); " << timed << "s after " << warm
                    << "s warmup";
                  detail = d.str();
                  return ok && timed < 1.0;
              });

    // Shared sector table for criteria 2 and 9.
    std::map<std::pair<int, int>, CohomologyEntry> sectors;

    // 2. Duality h0(w, f) = h1(w, 1-f) through weight 3, with square
    //    full-rank gram blocks and window-stable answers.
    criterion(2, "cohomological duality with perfect pairing through weight three",
              [&](std::string& detail) {
                  for (int w = 0; w <= kMaxWeight; ++w)
                      for (int f = -w - 1; f <= w + 2; ++f)
                          sectors.emplace(std::make_pair(w, f),
                                          cech_cohomology(w, f, -half, half));
                  int mirrored = 0, blocks = 0;
                  for (const auto& [wf, e] : sectors) {
                      const CohomologyEntry& dual = sectors.at({wf.first, 1 - wf.second});
                      if (e.h0 != dual.h1) {
                          detail = "duality fails at w=" + std::to_string(wf.first) +
                                   " f=" + std::to_string(wf.second);
                          return false;
                      }
                      ++mirrored;
                      if (!e.stabilized || !e.reps_stable) {
                          detail = "window instability at w=" + std::to_string(wf.first) +
                                   " f=" + std::to_string(wf.second);
                          return false;
                      }
                      if (e.h0 > 0) {
                          CohomologyPairing p = cohomology_pairing(e, dual);
                          if (!p.nondegenerate) {
                              detail = "degenerate gram at w=" + std::to_string(wf.first) +
                                       " f=" + std::to_string(wf.second);
                              return false;
                          }
                          ++blocks;
                      }
                  }
                  detail = std::to_string(mirrored) + " sectors mirrored, " +
                           std::to_string(blocks) + " gram blocks full rank";
                  return true;
              });

    // 3. QG0 + G0Q = L0 with Q^2 = G0^2 = 0 on every basis vector of
    //    weight <= 3 in the default window.
    criterion(3, "homotopy identity on the full truncated module", [&](std::string& detail) {
        long count = 0;
        for (int w = 0; w <= kMaxWeight; ++w) {
            for (const TermKey& key : weight_keys(w, -half, half)) {
                VElement v = term(key.mono, key.base);
                VElement qv = q_diff(v);
                VElement gv = g_zero(v);
                if (g_zero(qv) + q_diff(gv) != Scalar(w) * v) {
                    detail = "identity fails at " + to_string(key);
                    return false;
                }
                if (!q_diff(qv).is_zero() || !g_zero(gv).is_zero()) {
                    detail = "a square is nonzero at " + to_string(key);
                    return false;
                }
                ++count;
            }
        }
        detail = std::to_string(count) + " basis vectors, window [-" + std::to_string(half) +
                 ", " + std::to_string(half) + "]";
        return true;
    });

    // 4. The screening differential has two-dimensional cohomology, both
    //    classes at weight zero, matching the de Rham picture.
    criterion(4, "screening cohomology collapses to the de Rham classes",
              [&](std::string& detail) {
                  QCohomologyReport rep = q_cohomology_check(kMaxWeight, -half, half);
                  if (!rep.matches_de_rham || rep.total != 2) {
                      detail = rep.failure.empty() ? "total " + std::to_string(rep.total)
                                                   : rep.failure;
                      return false;
                  }
                  detail = "total 2: h0 at (0,0), h1 at (0,1); Q^2 = 0";
                  return true;
              });

    // 5. The pairing is contravariant and supersymmetric on seeded samples,
    //    and regular vectors are exhaustively isotropic.
    criterion(5, "contravariant pairing with isotropic regular subspace",
              [&](std::string& detail) {
                  ContravarianceReport rep = contravariance_check(240, kSeed);
                  if (!rep.ok()) {
                      detail = rep.counterexample;
                      return false;
                  }
                  long pairs = 0;
                  for (int w = 0; w <= kMaxWeight; ++w) {
                      for (int f = -w - 1; f <= w + 2; ++f) {
                          std::vector<TermKey> left = keys_in(w, f, -w, 3);
                          std::vector<TermKey> right = keys_in(w, 1 - f, -w, 3);
                          for (const TermKey& lk : left) {
                              if (lk.base.exponent < 0) continue;
                              VElement lv = term(lk.mono, lk.base);
                              for (const TermKey& rk : right) {
                                  if (rk.base.exponent < 0) continue;
                                  if (pair(lv, term(rk.mono, rk.base)) != 0) {
                                      detail = "nonzero pairing " + to_string(lk) + " / " +
                                               to_string(rk);
                                      return false;
                                  }
                                  ++pairs;
                              }
                          }
                      }
                  }
                  detail = std::to_string(rep.samples) + " seeded samples; " +
                           std::to_string(pairs) + " exhaustive regular pairs zero";
                  return true;
              });

    // 6. The module realizes the superalgebra: supercommutators act by the
    //    central values, the antiinvolution behaves, the weight operator is
    //    diagonal, and composite modes reassociate normally ordered.
    criterion(6, "superalgebra realization with normally ordered reassociation",
              [&](std::string& detail) {
                  for (Kind kx : kKinds)
                      for (Kind ky : kKinds)
                          for (int i = -3; i <= 3; ++i)
                              for (int j = -3; j <= 3; ++j) {
                                  GenMode x{kx, i}, y{ky, j};
                                  SignedGen ex = eta(x), ey = eta(y);
                                  int koszul = (is_odd(x) && is_odd(y)) ? -1 : 1;
                                  Scalar reversed = Scalar(ex.sign * ey.sign) *
                                                    super_bracket(ey.gen, ex.gen);
                                  if (reversed != Scalar(koszul) * super_bracket(x, y)) {
                                      detail = "antiinvolution fails on [" + to_string(x) +
                                               ", " + to_string(y) + "]";
                                      return false;
                                  }
                              }

                  std::vector<TermKey> keys;
                  for (int w = 0; w <= 2; ++w)
                      for (int f = -1; f <= 2; ++f) {
                          auto piece = keys_in(w, f, -1, 1);
                          keys.insert(keys.end(), piece.begin(), piece.end());
                      }
                  long commutators = 0;
                  for (Kind kx : kKinds)
                      for (Kind ky : kKinds)
                          for (int i = -2; i <= 2; ++i)
                              for (int j = -2; j <= 2; ++j) {
                                  GenMode x{kx, i}, y{ky, j};
                                  int koszul = (is_odd(x) && is_odd(y)) ? -1 : 1;
                                  Scalar c = super_bracket(x, y);
                                  for (const TermKey& key : keys) {
                                      VElement v = term(key.mono, key.base);
                                      if (act(x, act(y, v)) -
                                              Scalar(koszul) * act(y, act(x, v)) !=
                                          c * v) {
                                          detail = "supercommutator fails at " + to_string(key);
                                          return false;
                                      }
                                      ++commutators;
                                  }
                              }

                  for (int w = 0; w <= kMaxWeight; ++w)
                      for (const TermKey& key : weight_keys(w, -2, 2)) {
                          VElement v = term(key.mono, key.base);
                          if (l_zero(v) != Scalar(w) * v) {
                              detail = "weight operator fails at " + to_string(key);
                              return false;
                          }
                      }

                  long composites = 0;
                  for (Kind kx : kKinds)
                      for (Kind ky : kKinds) {
                          int wx = generator_weight(kx);
                          VElement u = act(GenMode{kx, -wx}, generator_state(ky));
                          if (u.is_zero()) continue;
                          int koszul = (is_odd(kx) && is_odd(ky)) ? -1 : 1;
                          for (int n = -2; n <= 2; ++n)
                              for (const TermKey& key : keys) {
                                  VElement v = term(key.mono, key.base);
                                  VElement rhs;
                                  for (int i = 1 - wx; i <= n + 2 * wx + weight(key) + 2; ++i) {
                                      VElement xi = act(GenMode{kx, i}, v);
                                      if (!xi.is_zero())
                                          rhs += Scalar(koszul) * act(GenMode{ky, n - i}, xi);
                                  }
                                  for (int i = -wx; i >= n - weight(key) - 2 * wx - 2; --i) {
                                      VElement yv = act(GenMode{ky, n - i}, v);
                                      if (!yv.is_zero()) rhs += act(GenMode{kx, i}, yv);
                                  }
                                  if (mode_apply(u, n, v) != rhs) {
                                      detail = "reassociation fails at " + to_string(key);
                                      return false;
                                  }
                                  ++composites;
                              }
                      }
                  detail = std::to_string(commutators) + " commutators, " +
                           std::to_string(composites) + " composite modes";
                  return true;
              });

    // 7. The chart involution squares to the identity, intertwines modes
    //    with transformed modes, and the transformed generators satisfy the
    //    defining relations with a uniquely determined correction.
    criterion(7, "chart involution and transformed generators", [&](std::string& detail) {
        const TransformedGenerators& tg = transformed_generators();
        if (!tg.lambda_unique) {
            detail = "correction coefficient not pinned (lambda = " + to_string(tg.lambda) + ")";
            return false;
        }

        long squared = 0;
        for (int w = 0; w <= 2; ++w)
            for (int f = -1; f <= 2; ++f)
                for (const TermKey& key : keys_in(w, f, -2, 1)) {
                    VElement v = term(key.mono, key.base);
                    if (sigma(sigma(v)) != v) {
                        detail = "involution square fails at " + to_string(key);
                        return false;
                    }
                    ++squared;
                }
        for (const TermKey& key : keys_in(3, 0, -1, 0)) {
            VElement v = term(key.mono, key.base);
            if (sigma(sigma(v)) != v) {
                detail = "involution square fails at " + to_string(key);
                return false;
            }
            ++squared;
        }

        std::vector<TermKey> keys = keys_in(1, 0, -1, 1);
        auto more = keys_in(1, 1, -1, 1);
        keys.insert(keys.end(), more.begin(), more.end());
        long transported = 0;
        for (Kind k : kKinds)
            for (int j = -1; j <= 1; ++j)
                for (const TermKey& key : keys) {
                    VElement v = term(key.mono, key.base);
                    if (sigma(act(GenMode{k, j}, v)) !=
                        mode_apply(tilde_state(tg, k), j, sigma(v))) {
                        detail = "intertwining fails for " + to_string(GenMode{k, j}) + " at " +
                                 to_string(key);
                        return false;
                    }
                    ++transported;
                }

        long brackets = 0;
        for (Kind kx : kKinds)
            for (Kind ky : kKinds) {
                bool both_odd = is_odd(kx) && is_odd(ky);
                for (int i = -1; i <= 1; ++i)
                    for (int j : {-i, 1 - i}) {
                        Scalar c = super_bracket({kx, i}, {ky, j});
                        for (const TermKey& key : keys) {
                            VElement v = term(key.mono, key.base);
                            VElement xy = mode_apply(tilde_state(tg, kx), i,
                                                     mode_apply(tilde_state(tg, ky), j, v));
                            VElement yx = mode_apply(tilde_state(tg, ky), j,
                                                     mode_apply(tilde_state(tg, kx), i, v));
                            if ((both_odd ? xy + yx : xy - yx) != c * v) {
                                detail = "transformed bracket fails at " + to_string(key);
                                return false;
                            }
                            ++brackets;
                        }
                    }
            }
        detail = std::to_string(squared) + " squares, " + std::to_string(transported) +
                 " transports, " + std::to_string(brackets) + " transformed brackets; lambda = " +
                 to_string(tg.lambda);
        return true;
    });

    // 8. Vectors annihilated by all positive modes: every weight-zero piece
    //    entirely, and no nonzero vector in weights one through three.
    criterion(8, "singular vectors are confined to weight zero", [&](std::string& detail) {
        int full = 0;
        for (const auto& [tri, sub] : singular_subspace(0, -half, half)) {
            if (sub.dim() != enumerate_basis(tri).dim()) {
                detail = "weight-0 piece f=" + std::to_string(tri.fermion) +
                         " d=" + std::to_string(tri.degree) + " not fully singular";
                return false;
            }
            ++full;
        }
        int empty = 0;
        for (int w = 1; w <= kMaxWeight; ++w)
            for (const auto& [tri, sub] : singular_subspace(w, -half, half)) {
                if (sub.dim() != 0) {
                    detail = "nonzero singular vector at w=" + std::to_string(w) +
                             " f=" + std::to_string(tri.fermion) +
                             " d=" + std::to_string(tri.degree);
                    return false;
                }
                ++empty;
            }
        detail = std::to_string(full) + " weight-0 pieces full, " + std::to_string(empty) +
                 " higher pieces trivial";
        return true;
    });

    // 9. The three zero modes generate the symmetry algebra: bracket
    //    relations on the module, contravariance for the pairing, and
    //    locally nilpotent raising/lowering on sections.
    criterion(9, "integrable symmetry action on the cohomology", [&](std::string& detail) {
        const Sl2Modes& m = sl2_modes();
        if (!m.unique) {
            detail = "zero-mode corrections not pinned";
            return false;
        }
        long relations = 0;
        for (int w = 0; w <= 2; ++w)
            for (int f = -1; f <= 2; ++f)
                for (const TermKey& key : keys_in(w, f, -2, 2)) {
                    VElement v = term(key.mono, key.base);
                    VElement ev = m.e.apply(v), hv = m.h.apply(v), fv = m.f.apply(v);
                    if (m.h.apply(ev) - m.e.apply(hv) != Scalar(2) * ev ||
                        m.e.apply(fv) - m.f.apply(ev) != hv ||
                        m.h.apply(fv) - m.f.apply(hv) != Scalar(-2) * fv) {
                        detail = "bracket relation fails at " + to_string(key);
                        return false;
                    }
                    ++relations;
                }
        IntegrabilityReport rep =
            integrability_check(kMaxWeight, 2 * kMaxWeight + 3, kSeed, -half, half);
        if (!rep.h0_nilpotent || !rep.contravariant) {
            detail = rep.failure;
            return false;
        }
        std::ostringstream d;
        d << relations << " bracket relations; orbit steps";
        for (const auto& [w, n] : rep.steps_needed) d << " " << w << ":" << n;
        d << "; " << rep.samples << " contravariance samples";
        detail = d.str();
        return true;
    });

    if (g_failures == 0) {
        std::puts("acceptance: all 9 criteria passed");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
