#pragma once

// Truncated formal power series in the deformation parameter t: exponentials
// of Clifford elements, their spin action on spinors, the Campbell-Hausdorff
// logarithm solved order-by-order, and the lift of a deformation series
// eps(t) in Lambda^2 Lbar to a real Clifford series a(t) moving the
// canonical line: e^{-eps(t)} e^{a(t)} phi stays a multiple of phi.

#include <vector>

#include "gk/brackets.hpp"

namespace gk {

// coefficients stored plainly: series = sum c_k t^k
template <class T>
struct TruncSeries {
    std::vector<T> coeffs;

    TruncSeries() = default;
    TruncSeries(int order, const T& zero) : coeffs(order + 1, zero) {}

    int order() const { return (int)coeffs.size() - 1; }
    const T& operator[](int k) const { return coeffs[k]; }
    T& operator[](int k) { return coeffs[k]; }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }
    bool operator==(const TruncSeries& o) const { return coeffs == o.coeffs; }
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    TruncSeries operator+(const TruncSeries& o) const {
        TruncSeries out = *this;
        for (int k = 0; k <= order() && k <= o.order(); ++k)
            out.coeffs[k] += o.coeffs[k];
        return out;
    }
    TruncSeries operator-() const {
        TruncSeries out = *this;
        for (auto& c : out.coeffs) c = -c;
        return out;
    }
    TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }
    TruncSeries operator*(const Scalar& s) const {
        TruncSeries out = *this;
        for (auto& c : out.coeffs) c = c * s;
        return out;
    }
};

template <class R>
using CliffordSeries = TruncSeries<CliffordElement<R>>;
template <class R>
using FormSeries = TruncSeries<FormField<R>>;

// truncated convolution product in the Clifford algebra
template <class R>
CliffordSeries<R> series_mul(const CliffordSeries<R>& a,
                             const CliffordSeries<R>& b) {
    int N = std::min(a.order(), b.order());
    int m = a[0].dim();
    CliffordSeries<R> c(N, CliffordElement<R>(m));
    for (int k = 0; k <= N; ++k)
        for (int i = 0; i <= k; ++i)
            c[k] += clifford_mul(a[i], b[k - i]);
    return c;
}

template <class R>
CliffordSeries<R> series_one(int m, int N) {
    CliffordSeries<R> s(N, CliffordElement<R>(m));
    s[0] = CliffordElement<R>::one(m);
    return s;
}

template <class R>
CliffordSeries<R> exp_series(const CliffordSeries<R>& a, int N) {
    if (!a[0].is_zero())
        throw NonzeroConstantTerm("exp_series requires vanishing constant term");
    int m = a[0].dim();
    CliffordSeries<R> in(N, CliffordElement<R>(m));
    for (int k = 1; k <= std::min(N, a.order()); ++k) in[k] = a[k];
    CliffordSeries<R> out = series_one<R>(m, N);
    CliffordSeries<R> pw = out;
    Rational fact(1);
    for (int j = 1; j <= N; ++j) {
        pw = series_mul(pw, in);
        if (pw.is_zero()) break;
        fact *= j;
        out = out + pw * Scalar(Rational(1) / fact);
    }
    return out;
}

// e^{a(t)} psi, termwise spin action
template <class R>
FormSeries<R> exp_action(const CliffordSeries<R>& a, const FormField<R>& psi,
                         int N) {
    CliffordSeries<R> E = exp_series(a, N);
    FormSeries<R> out(N, FormField<R>(psi.dim()));
    for (int k = 0; k <= N; ++k) out[k] = spin_action(E[k], psi);
    return out;
}

// z(t) with e^z = e^a e^b mod t^{N+1}, solved order-by-order: the coefficient
// z_k enters e^z linearly at order k, so z_k = (e^a e^b)_k - (e^z|z_k=0)_k
template <class R>
CliffordSeries<R> cbh_log(const CliffordSeries<R>& a, const CliffordSeries<R>& b,
                          int N) {
    int m = a[0].dim();
    CliffordSeries<R> target = series_mul(exp_series(a, N), exp_series(b, N));
    CliffordSeries<R> z(N, CliffordElement<R>(m));
    for (int k = 1; k <= N; ++k) {
        CliffordSeries<R> E = exp_series(z, N);
        z[k] = target[k] - E[k];
    }
    return z;
}

// Lift of eps(t) in Lambda^2 Lbar to a real series a(t) in
// Lambda^2 Lbar + Lambda^2 L with (e^{-eps(t)} e^{a(t)})_[k] phi a multiple
// of phi at every order k <= N; order 1 gives a_1 = eps_1 + conj(eps_1).
template <class R>
CliffordSeries<R> prop26_lift(const CliffordSeries<R>& eps, const GCStructure& J,
                              const FormField<R>& phi, int N) {
    int m = phi.dim();
    if (!eps[0].is_zero())
        throw NonzeroConstantTerm("deformation series needs zero constant term");
    auto frame = lbar_frame(phi);
    auto pairs = frame.wedge_basis(2);
    auto phi_dense = constant_dense(phi);
    int n = 1 << m;
    Mat<Scalar> A(n, (int)pairs.size());
    for (size_t c = 0; c < pairs.size(); ++c) {
        auto col = spin_matrix(pairs[c]).apply(phi_dense);
        for (int i = 0; i < n; ++i) A(i, (int)c) = col[i];
    }
    Mat<Scalar> line(n, 1);
    for (int i = 0; i < n; ++i) line(i, 0) = phi_dense[i];

    CliffordSeries<R> neg_eps(N, CliffordElement<R>(m));
    for (int k = 1; k <= std::min(N, eps.order()); ++k) neg_eps[k] = -eps[k];
    CliffordSeries<R> a(N, CliffordElement<R>(m));
    int bottom = -m / 2;

    for (int k = 1; k <= N; ++k) {
        auto E = series_mul(exp_series(neg_eps, N), exp_series(a, N));
        FormField<R> r = spin_action(E[k], phi);
        auto dec = u_decompose(r, J);
        FormField<R> comp(m);
        for (const auto& [lv, f] : dec) {
            if (f.is_zero()) continue;
            if (lv == bottom + 2)
                comp = f;
            else if (lv != bottom)
                throw LiftFailure("residual leaves the two lowest levels");
        }
        std::vector<R> b(n, R::zero(m));
        for (const auto& [mask, c] : comp.parts()) b[mask] = -c;
        auto sol = solve_module(A, b, R::zero(m));
        if (!sol) throw LiftFailure("level -n+2 residual is not Lambda^2 Lbar phi");
        auto h = combine(pairs, *sol, m);
        a[k] = h + h.conj();
    }

    // defining congruence at every order: residual is a ring multiple of phi
    auto E = series_mul(exp_series(neg_eps, N), exp_series(a, N));
    for (int k = 1; k <= N; ++k) {
        FormField<R> r = spin_action(E[k], phi);
        std::vector<R> b(n, R::zero(m));
        for (const auto& [mask, c] : r.parts()) b[mask] = c;
        if (!solve_module(line, b, R::zero(m)))
            throw LiftFailure("residual is not a multiple of the canonical spinor");
    }
    return a;
}

}  // namespace gk
