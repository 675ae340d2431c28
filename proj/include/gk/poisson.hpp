#pragma once

// Chart-level holomorphic Poisson bivectors: the classical Schouten
// residual, the deformed spinor e^{t beta} ^ Omega, and the type
// stratification type(x) = n - 2 rank(beta_x) on point grids.  The chart
// uses real coordinates x_0..x_{2n-1} with z_j = x_{2j} + i x_{2j+1}.

#include "gk/brackets.hpp"
#include "gk/models.hpp"
#include "gk/numeric.hpp"
#include "gk/series.hpp"

namespace gk {

namespace detail {

// d/dz_j and d/dzbar_j on chart coefficients
inline AffinePoly dz_partial(const AffinePoly& f, int j) {
    return (f.partial(2 * j) + f.partial(2 * j + 1) * (-Scalar::i())) *
           Scalar(rat(1, 2));
}
inline AffinePoly dzbar_partial(const AffinePoly& f, int j) {
    return (f.partial(2 * j) + f.partial(2 * j + 1) * Scalar::i()) *
           Scalar(rat(1, 2));
}

}  // namespace detail

struct PoissonBivector {
    int n = 0;    // complex dimension
    int dim = 0;  // real chart dimension 2n
    std::vector<std::vector<AffinePoly>> comp;  // beta^{jk}, antisymmetric

    const AffinePoly& operator()(int j, int k) const { return comp[j][k]; }
};

inline PoissonBivector poisson_bivector(
    int n, const std::vector<std::vector<AffinePoly>>& comp) {
    PoissonBivector b;
    b.n = n;
    b.dim = 2 * n;
    if ((int)comp.size() != n)
        throw ValidationError("bivector needs n rows of components");
    for (const auto& row : comp)
        if ((int)row.size() != n)
            throw ValidationError("bivector needs n columns of components");
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (comp[j][k].dim() != b.dim)
                throw ValidationError("component has the wrong chart dimension");
            if (comp[j][k] != -comp[k][j])
                throw ValidationError("bivector components are not antisymmetric");
            for (int l = 0; l < n; ++l)
                if (!detail::dzbar_partial(comp[j][k], l).is_zero())
                    throw ValidationError("bivector components are not holomorphic");
        }
    b.comp = comp;
    return b;
}

// the Clifford-algebra picture of beta = sum_{j<k} beta^{jk} dz_j ^ dz_k;
// the factors are ordered so that the spin action contracts a holomorphic
// volume with a plus sign: e^{beta} ^ (dz_1^dz_2) = beta^{12} + dz_1^dz_2
inline CliffordElement<AffinePoly> to_clifford(const PoissonBivector& b) {
    int m = b.dim;
    auto dz = [&](int j) {
        return (CliffordElement<AffinePoly>::vec_gen(m, 2 * j,
                                                     AffinePoly::one(m)) -
                CliffordElement<AffinePoly>::vec_gen(
                    m, 2 * j + 1, AffinePoly::constant(m, Scalar::i()))) *
               Scalar(rat(1, 2));
    };
    CliffordElement<AffinePoly> out(m);
    for (int j = 0; j < b.n; ++j)
        for (int k = j + 1; k < b.n; ++k)
            out += clifford_mul(dz(k), dz(j)) * b(j, k);
    return out;
}

// the classical Schouten residual of [beta, beta]: for each j < k < l the
// cyclic sum over (j,k,l) of sum_m beta^{jm} d/dz_m beta^{kl}; beta is
// Poisson iff every component vanishes
struct SchoutenResidual {
    int n = 0;
    std::map<std::array<int, 3>, AffinePoly> comp;  // keys j < k < l

    bool is_zero() const {
        for (const auto& [idx, c] : comp)
            if (!c.is_zero()) return false;
        return true;
    }
};

inline SchoutenResidual poisson_check(const PoissonBivector& b) {
    SchoutenResidual res;
    res.n = b.n;
    for (int j = 0; j < b.n; ++j)
        for (int k = j + 1; k < b.n; ++k)
            for (int l = k + 1; l < b.n; ++l) {
                AffinePoly r(b.dim);
                const std::array<std::array<int, 3>, 3> cyc = {
                    {{j, k, l}, {k, l, j}, {l, j, k}}};
                for (const auto& [p, q, s] : cyc)
                    for (int m = 0; m < b.n; ++m)
                        r += b(p, m) * detail::dz_partial(b(q, s), m);
                res.comp.emplace(std::array<int, 3>{j, k, l}, std::move(r));
            }
    return res;
}

// e^{t beta} ^ Omega as a truncated (in fact terminating) series
inline FormSeries<AffinePoly> poisson_spinor(const PoissonBivector& b,
                                             const FormField<AffinePoly>& omega,
                                             int N) {
    CliffordSeries<AffinePoly> a(N, CliffordElement<AffinePoly>(b.dim));
    a[1] = to_clifford(b);
    return exp_action(a, omega, N);
}

// bivector rank at an exact rational chart point: half the (always even)
// rank of the antisymmetric component matrix
inline int rank_at(const PoissonBivector& b, const std::vector<Rational>& x) {
    Mat<Scalar> M(b.n, b.n);
    for (int j = 0; j < b.n; ++j)
        for (int k = 0; k < b.n; ++k) M(j, k) = b(j, k).eval_rational(x);
    return rank(M) / 2;
}

// numerical bivector rank at a float chart point with an explicit threshold
inline int rank_at_f(const PoissonBivector& b, const std::vector<double>& x,
                     double threshold = 1e-9) {
    Eigen::MatrixXcd M(b.n, b.n);
    for (int j = 0; j < b.n; ++j)
        for (int k = 0; k < b.n; ++k) M(j, k) = b(j, k).eval_point(x);
    return numeric_rank(M, threshold) / 2;
}

// type(J_beta)_x = n - 2 rank(beta_x) over a grid of chart points
inline std::vector<int> type_stratify(
    const PoissonBivector& b, const std::vector<std::vector<Rational>>& grid) {
    std::vector<int> types;
    for (const auto& x : grid) types.push_back(b.n - 2 * rank_at(b, x));
    return types;
}

inline std::vector<int> type_stratify_f(
    const PoissonBivector& b, const std::vector<std::vector<double>>& grid,
    double threshold = 1e-9) {
    std::vector<int> types;
    for (const auto& x : grid)
        types.push_back(b.n - 2 * rank_at_f(b, x, threshold));
    return types;
}

}  // namespace gk
