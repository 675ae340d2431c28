#pragma once

// Convergence certificates for the deformation series via the majorant
// M(t) = sum_{nu>=1} (1/16c)(ct)^nu/nu^2: exact coefficientwise
// inequalities M^2 << (1/c)M and (e^M - 1) << ((e^lambda - 1)/lambda) M,
// and surrogate l1-norm tracking ||a_k|| <= K1 M_k, ||b_k|| <= K2 M_k,
// ||z_k|| <= M_k of a solver run.  The norm is the plain coefficient sum
// |re| + |im| over all words and Fourier modes, an exactly computable
// stand-in for the Hoelder norms of the analytic argument.

#include "gk/stability.hpp"

namespace gk {

// coefficients M_0..M_N with M_nu = c^{nu-1}/(16 nu^2)
inline std::vector<Rational> majorant_coeffs(const Rational& c, int N) {
    std::vector<Rational> M(N + 1, Rational(0));
    Rational p(1);  // c^{nu-1}
    for (int nu = 1; nu <= N; ++nu) {
        M[nu] = p / Rational(16 * nu * nu);
        p *= c;
    }
    return M;
}

namespace detail {

inline std::vector<Rational> cauchy_product(const std::vector<Rational>& x,
                                            const std::vector<Rational>& y) {
    int N = (int)x.size() - 1;
    std::vector<Rational> out(N + 1, Rational(0));
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) out[i + j] += x[i] * y[j];
    return out;
}

// coefficients of e^x - 1 for a series with x_0 = 0, truncated at order N
inline std::vector<Rational> exp_minus_one(const std::vector<Rational>& x) {
    int N = (int)x.size() - 1;
    std::vector<Rational> out(N + 1, Rational(0));
    std::vector<Rational> pw = x;
    Rational fact(1);
    for (int l = 1; l <= N; ++l) {
        fact *= l;
        for (int nu = 0; nu <= N; ++nu) out[nu] += pw[nu] / fact;
        if (l < N) pw = cauchy_product(pw, x);
    }
    return out;
}

}  // namespace detail

// a rational upper bound for e^lambda: a truncated Taylor sum plus the
// geometric tail bound lambda^{J+1}/(J+1)! * (J+2)/(J+2-lambda)
inline Rational exp_upper_bound(const Rational& lambda, int J = 24) {
    if (lambda <= 0) throw ValidationError("exp_upper_bound needs lambda > 0");
    while (Rational(J + 2) <= lambda) ++J;  // tail bound needs lambda < J+2
    Rational sum(1), term(1);
    for (int j = 1; j <= J; ++j) {
        term = term * lambda / Rational(j);
        sum += term;
    }
    Rational tail = term * lambda / Rational(J + 1) * Rational(J + 2) /
                    (Rational(J + 2) - lambda);
    return sum + tail;
}

// coefficient l1 norm: sum of |re| + |im| over all words and modes
inline Rational l1_norm(const CliffordElement<TrigPoly>& e) {
    Rational s(0);
    for (const auto& [w, f] : e.words())
        for (const auto& [k, v] : f.terms()) s += abs(v.re) + abs(v.im);
    return s;
}

struct MajorantCertificate {
    Rational c, lambda, K1, K2;
    int order = 0;
    bool square_bound = false;  // (M^2)_nu <= (1/c) M_nu for nu <= N
    bool exp_bound = false;     // (e^M - 1)_nu <= ((e^l - 1)/l) M_nu
    Rational e_lambda_ub;       // the rational upper bound used for e^lambda
    bool a_ok = false, b_ok = false, z_ok = false;
    Rational K1_min, K2_min;    // minimal feasible constants for this run
    bool contraction = false;   // K1 + K2 < 1 for the supplied constants

    bool pass() const {
        return square_bound && exp_bound && a_ok && b_ok && z_ok;
    }
};

inline MajorantCertificate majorant_certificate(const Rational& c,
                                                const Rational& lambda,
                                                const Rational& K1,
                                                const Rational& K2, int N,
                                                const DeformationReport& rep) {
    if (c <= 0 || lambda <= 0)
        throw ValidationError("majorant parameters must be positive");
    MajorantCertificate cert;
    cert.c = c;
    cert.lambda = lambda;
    cert.K1 = K1;
    cert.K2 = K2;
    cert.order = N;

    auto M = majorant_coeffs(c, N);
    auto M2 = detail::cauchy_product(M, M);
    cert.square_bound = true;
    for (int nu = 0; nu <= N; ++nu)
        if (M2[nu] > M[nu] / c) cert.square_bound = false;

    cert.e_lambda_ub = exp_upper_bound(lambda);
    Rational factor = (cert.e_lambda_ub - 1) / lambda;
    auto E = detail::exp_minus_one(M);
    cert.exp_bound = true;
    for (int nu = 1; nu <= N; ++nu)
        if (E[nu] > factor * M[nu]) cert.exp_bound = false;

    // the series store a_k/k! directly, matching ||a_k||/k! <= K1 M_k
    int ord = std::min(N, rep.order);
    auto minimal = [&](const CliffordSeries<TrigPoly>& s) {
        Rational K(0);
        for (int k = 1; k <= ord; ++k) {
            Rational r = l1_norm(s[k]) / M[k];
            if (r > K) K = r;
        }
        return K;
    };
    cert.K1_min = minimal(rep.a);
    cert.K2_min = minimal(rep.b);
    cert.a_ok = cert.K1_min <= K1;
    cert.b_ok = cert.K2_min <= K2;
    cert.z_ok = true;
    for (int k = 1; k <= ord; ++k)
        if (l1_norm(rep.z[k]) > M[k]) cert.z_ok = false;
    cert.contraction = K1 + K2 < 1;
    return cert;
}

}  // namespace gk
