#pragma once

// Randomized property suites over the flat models: algebraic identities of
// the Clifford algebra and spin module, the de Rham complex, bracket
// compatibilities, and the per-mode Laplacian identities.  Every suite is
// deterministic in (seed, cases): each trial draws from its own generator
// seeded by seed + trial index, so results do not depend on how trials are
// distributed across worker threads.

#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "gk/brackets.hpp"
#include "gk/hodge.hpp"
#include "gk/models.hpp"

namespace gk {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string counterexample;  // first failing trial, empty when clean

    bool pass() const { return failures == 0; }
};

namespace detail {

using SuiteRng = std::mt19937;

inline Scalar suite_scalar(SuiteRng& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    return Scalar(rat(num(rng), den(rng)), rat(num(rng), den(rng)));
}

inline TrigPoly suite_trig(SuiteRng& rng, int dim, int mode_cap = 2,
                           int nterms = 3) {
    std::uniform_int_distribution<int> mode(-mode_cap, mode_cap);
    TrigPoly f(dim);
    for (int t = 0; t < nterms; ++t) {
        Key k(dim);
        for (int j = 0; j < dim; ++j) k[j] = mode(rng);
        f += TrigPoly::monomial(dim, k, suite_scalar(rng));
    }
    return f;
}

inline FormField<TrigPoly> suite_form(SuiteRng& rng, int dim, int mode_cap = 2,
                                      int nterms = 3) {
    std::uniform_int_distribution<Mask> mask(0, (Mask(1) << dim) - 1);
    FormField<TrigPoly> f(dim);
    for (int t = 0; t < nterms; ++t)
        f.add_term(mask(rng), suite_trig(rng, dim, mode_cap));
    return f;
}

inline CliffordElement<TrigPoly> suite_clifford(SuiteRng& rng, int dim,
                                                int max_len, int mode_cap = 2,
                                                int nterms = 3) {
    std::uniform_int_distribution<Mask> mask(0, (Mask(1) << dim) - 1);
    CliffordElement<TrigPoly> e(dim);
    for (int t = 0; t < nterms; ++t) {
        Word w{mask(rng), mask(rng)};
        if (w.length() > max_len) {
            --t;
            continue;
        }
        e.add_term(w, suite_trig(rng, dim, mode_cap));
    }
    return e;
}

inline CliffordElement<TrigPoly> suite_degree1(SuiteRng& rng, int dim,
                                               int mode_cap = 2) {
    CliffordElement<TrigPoly> e(dim);
    for (int a = 0; a < 2 * dim; ++a)
        e += CliffordElement<TrigPoly>::generator(
            dim, a, suite_trig(rng, dim, mode_cap, 1));
    return e;
}

// Lie bracket of vector fields v = sum v^i d_i, the classical oracle for
// the Courant bracket on vectors
inline CliffordElement<TrigPoly> suite_lie_bracket(
    const CliffordElement<TrigPoly>& v, const CliffordElement<TrigPoly>& w) {
    int m = v.dim();
    CliffordElement<TrigPoly> out(m);
    for (int j = 0; j < m; ++j) {
        TrigPoly comp = TrigPoly::zero(m);
        for (int i = 0; i < m; ++i) {
            comp += v.coeff(Word{Mask(1) << i, 0}) *
                    w.coeff(Word{Mask(1) << j, 0}).partial(i);
            comp -= w.coeff(Word{Mask(1) << i, 0}) *
                    v.coeff(Word{Mask(1) << j, 0}).partial(i);
        }
        out += CliffordElement<TrigPoly>::vec_gen(m, j, comp);
    }
    return out;
}

inline int suite_threads() {
    if (const char* env = std::getenv("GK_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

// run `cases` independent trials of `trial(rng, index)` across workers;
// results are merged in trial order
template <class Trial>
SuiteResult run_trials(const std::string& name, int cases,
                       unsigned long seed, Trial&& trial) {
    std::vector<char> ok(cases, 1);
    int nthreads = std::min(suite_threads(), std::max(cases, 1));
    std::vector<std::thread> pool;
    for (int w = 0; w < nthreads; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < cases; i += nthreads) {
                SuiteRng rng((unsigned)(seed + (unsigned long)i));
                ok[i] = trial(rng, i) ? 1 : 0;
            }
        });
    for (auto& t : pool) t.join();

    SuiteResult res;
    res.name = name;
    res.cases = cases;
    for (int i = 0; i < cases; ++i)
        if (!ok[i]) {
            ++res.failures;
            if (res.counterexample.empty()) {
                std::ostringstream os;
                os << "trial " << i << " (generator seed "
                   << seed + (unsigned long)i << ")";
                res.counterexample = os.str();
            }
        }
    return res;
}

}  // namespace detail

// E.F + F.E = 2<E,F> as an operator identity on random forms
inline SuiteResult suite_clifford_relation(int m, int cases,
                                           unsigned long seed) {
    return detail::run_trials(
        "clifford_relation", cases, seed, [m](detail::SuiteRng& rng, int) {
            auto E = detail::suite_degree1(rng, m);
            auto F = detail::suite_degree1(rng, m);
            auto x = detail::suite_form(rng, m);
            auto lhs = spin_action(clifford_mul(E, F) + clifford_mul(F, E), x);
            return lhs == x * (pairing(E, F) * Scalar(2));
        });
}

// spin(a.b, x) = spin(a, spin(b, x))
inline SuiteResult suite_spin_module(int m, int cases, unsigned long seed) {
    return detail::run_trials(
        "spin_module", cases, seed, [m](detail::SuiteRng& rng, int) {
            auto a = detail::suite_clifford(rng, m, 2);
            auto b = detail::suite_clifford(rng, m, 2);
            auto x = detail::suite_form(rng, m);
            return spin_action(clifford_mul(a, b), x) ==
                   spin_action(a, spin_action(b, x));
        });
}

// d o d = 0 on random forms
inline SuiteResult suite_d_squared(int m, int cases, unsigned long seed) {
    return detail::run_trials("d_squared", cases, seed,
                              [m](detail::SuiteRng& rng, int) {
                                  return detail::suite_form(rng, m)
                                      .d()
                                      .d()
                                      .is_zero();
                              });
}

// d(a ^ b) = da ^ b + (-1)^|a| a ^ db for homogeneous a
inline SuiteResult suite_leibniz(int m, int cases, unsigned long seed) {
    return detail::run_trials(
        "leibniz", cases, seed, [m](detail::SuiteRng& rng, int) {
            std::uniform_int_distribution<int> deg(0, m);
            int p = deg(rng);
            // a single term of degree p: the low p generators
            Mask mask = (Mask(1) << p) - 1;
            auto a = FormField<TrigPoly>::basis(m, mask,
                                                detail::suite_trig(rng, m));
            auto b = detail::suite_form(rng, m);
            Scalar sign = (p % 2 == 0) ? Scalar(1) : Scalar(-1);
            return a.wedge(b).d() ==
                   a.d().wedge(b) + a.wedge(b.d()) * sign;
        });
}

// the Courant bracket restricted to vector fields is the Lie bracket,
// and the self-bracket vanishes
inline SuiteResult suite_courant_vector_fields(int m, int cases,
                                               unsigned long seed) {
    return detail::run_trials(
        "courant_vector_fields", cases, seed, [m](detail::SuiteRng& rng, int) {
            CliffordElement<TrigPoly> v(m), w(m);
            for (int j = 0; j < m; ++j) {
                v += CliffordElement<TrigPoly>::vec_gen(
                    m, j, detail::suite_trig(rng, m, 1, 1));
                w += CliffordElement<TrigPoly>::vec_gen(
                    m, j, detail::suite_trig(rng, m, 1, 1));
            }
            return courant_bracket(v, w) == detail::suite_lie_bracket(v, w) &&
                   courant_bracket(v, v).is_zero();
        });
}

// sections of the annihilator of an integrable pure spinor stay inside it
// under the Courant bracket
inline SuiteResult suite_annihilator_closed(int m, int cases,
                                            unsigned long seed) {
    auto phi = holomorphic_volume<TrigPoly>(m);
    auto data = annihilator(phi);
    return detail::run_trials(
        "annihilator_closed", cases, seed,
        [m, &phi, &data](detail::SuiteRng& rng, int) {
            CliffordElement<TrigPoly> E1(m), E2(m);
            for (const auto& e : data.annihilator_basis) {
                E1 += promote<TrigPoly>(e, m) * detail::suite_trig(rng, m, 1, 1);
                E2 += promote<TrigPoly>(e, m) * detail::suite_trig(rng, m, 1, 1);
            }
            return spin_action(courant_bracket(E1, E2), phi).is_zero();
        });
}

// per-mode Hodge identities of the flat model: d splits into four corners
// and Delta_d = 2 Delta_{dbar_psi} = 4 Delta_corner, exactly.
//
// The mode-k derivative is D_k = sum_j i k_j F_j with mode-independent
// generator matrices F_j, and the (dp,dq) corner of F_j is mode-independent
// as well, so every corner and every Laplacian is a bilinear expression in
// the integers k_j.  Precomputing those building blocks once makes the full
// sweep over modes a matter of scaled matrix sums.
inline SuiteResult suite_laplacian(int m, int mode_cap) {
    auto mod = flat_kahler_model(m);
    auto gk = gk_one_spinor(mod.J0, mod.psi);
    int dim = 1 << m;
    auto levels = u_levels(m);

    // projectors onto U^{p,q}
    std::map<std::pair<int, int>, Mat<Scalar>> P;
    for (int p : levels)
        for (int q : levels) P.emplace(std::make_pair(p, q), uvv_projector(gk, p, q));

    const std::array<std::pair<int, int>, 4> corners = {
        {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}};

    // families[f][j]: f = 0 is the full F_j, f = 1..4 its corners,
    // f = 5 the dbar_psi combination (corners (1,1) + (-1,1))
    std::vector<std::vector<Mat<Scalar>>> fam(
        6, std::vector<Mat<Scalar>>(m, Mat<Scalar>(dim, dim)));
    for (int j = 0; j < m; ++j) {
        Mat<Scalar> F = generator_spin_matrix(m, m + j);
        fam[0][j] = F;
        for (int f = 0; f < 4; ++f) {
            auto [dp, dq] = corners[f];
            Mat<Scalar> C(dim, dim);
            for (int p : levels)
                for (int q : levels) {
                    if (p + dp < levels.front() || p + dp > levels.back() ||
                        q + dq < levels.front() || q + dq > levels.back())
                        continue;
                    C = C + P.at({p + dp, q + dq}) * (F * P.at({p, q}));
                }
            fam[1 + f][j] = C;
        }
        fam[5][j] = fam[1][j] + fam[4][j];
    }

    // pairwise Laplacian blocks: for X = sum_j i k_j X_j,
    // lap(X) = sum_{j<=l} k_j k_l B[j][l] with the blocks below
    auto blocks = [&](const std::vector<Mat<Scalar>>& X) {
        std::vector<std::vector<Mat<Scalar>>> B(
            m, std::vector<Mat<Scalar>>(m, Mat<Scalar>(dim, dim)));
        for (int j = 0; j < m; ++j)
            for (int l = j; l < m; ++l) {
                auto Xjh = X[j].conj_transpose();
                auto Xlh = X[l].conj_transpose();
                Mat<Scalar> b = X[j] * Xlh + Xlh * X[j];
                if (l != j) b = b + X[l] * Xjh + Xjh * X[l];
                B[j][l] = std::move(b);
            }
        return B;
    };
    std::vector<std::vector<std::vector<Mat<Scalar>>>> lapb;
    for (const auto& X : fam) lapb.push_back(blocks(X));

    auto lap_at = [&](int f, const Key& k) {
        Mat<Scalar> L(dim, dim);
        for (int j = 0; j < m; ++j)
            for (int l = j; l < m; ++l) {
                long w = (long)k[j] * k[l];
                if (w != 0) L = L + lapb[f][j][l] * Scalar(w);
            }
        return L;
    };
    auto mat_at = [&](int f, const Key& k) {
        Mat<Scalar> X(dim, dim);
        for (int j = 0; j < m; ++j)
            if (k[j] != 0) X = X + fam[f][j] * (Scalar::i() * Scalar(k[j]));
        return X;
    };

    SuiteResult res;
    res.name = "laplacian";
    Key k(m, -mode_cap);
    bool done = false;
    while (!done) {
        ++res.cases;
        Mat<Scalar> D = mat_at(0, k);
        bool ok = mat_at(1, k) + mat_at(2, k) + mat_at(3, k) + mat_at(4, k) == D;
        Mat<Scalar> L = lap_at(0, k);
        ok = ok && L == lap_at(5, k) * Scalar(2);
        for (int f = 1; f <= 4; ++f) ok = ok && L == lap_at(f, k) * Scalar(4);
        if (!ok) {
            ++res.failures;
            if (res.counterexample.empty()) {
                std::ostringstream os;
                os << "mode (";
                for (int j = 0; j < m; ++j) os << (j ? "," : "") << k[j];
                os << ")";
                res.counterexample = os.str();
            }
        }
        // advance the mode counter
        done = true;
        for (int j = 0; j < m; ++j) {
            if (k[j] < mode_cap) {
                ++k[j];
                done = false;
                break;
            }
            k[j] = -mode_cap;
        }
    }
    return res;
}

inline std::vector<SuiteResult> run_identity_suites(int m, int mode_cap,
                                                    unsigned long seed,
                                                    int cases) {
    return {suite_clifford_relation(m, cases, seed),
            suite_spin_module(m, cases, seed + 1000003),
            suite_d_squared(m, cases, seed + 2000003),
            suite_leibniz(m, cases, seed + 3000017),
            suite_courant_vector_fields(m, cases, seed + 4000037),
            suite_annihilator_closed(m, cases, seed + 5000011),
            suite_laplacian(m, std::min(mode_cap, 1))};
}

}  // namespace gk
