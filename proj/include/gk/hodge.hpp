#pragma once

// Per-Fourier-mode Hodge theory for the complex (K^., d) on the flat torus:
// a generalized Kaehler pair with one pure spinor (J, psi) yields constant
// bigrade projectors, K^1 = U^{0,-n+2} and K^2 = U^{+-1,-n+1} + U^{+-1,-n+3};
// d preserves Fourier modes, so exact minimal-norm solves per mode replace
// the Green operator.

#include <map>

#include "gk/models.hpp"
#include "gk/series.hpp"

namespace gk {

// independent columns of M (pivot columns after row reduction)
inline Mat<Scalar> column_space_basis(const Mat<Scalar>& M) {
    Mat<Scalar> copy = M;
    auto pivots = rref(copy);
    auto all = M.columns();
    std::vector<std::vector<Scalar>> cols;
    for (int c : pivots) cols.push_back(all[c]);
    return Mat<Scalar>::from_columns(cols);
}

struct GKOneSpinor {
    int dim = 0;                       // m = real dimension
    GCStructure J;                     // constant structure with spinor phi
    GCStructure Jpsi;                  // induced by psi
    FormField<TrigPoly> psi;           // d-closed non-degenerate pure spinor
    std::vector<Scalar> phi_dense;     // canonical spinor of J
    std::vector<Scalar> psi_dense;
    Mat<Scalar> A0, A1;                // spin matrices of sigma(J), sigma(Jpsi)
    Mat<Scalar> B1, B2;                // column bases of K^1 and K^2
};

inline Mat<Scalar> uvv_projector(const GKOneSpinor& gk, int p, int q) {
    auto levels = u_levels(gk.dim);
    return eigen_projector(gk.A0, p, levels) * eigen_projector(gk.A1, q, levels);
}

inline GKOneSpinor gk_one_spinor(const GCStructure& J,
                                 const FormField<TrigPoly>& psi) {
    GKOneSpinor gk;
    gk.dim = psi.dim();
    int n = gk.dim / 2;
    gk.J = J;
    gk.psi = psi;
    if (!psi.d().is_zero()) throw ValidationError("spinor is not closed");
    gk.Jpsi = induced_structure(psi);
    auto rep = gk_check(J, gk.Jpsi);
    if (!rep.pass())
        throw ValidationError("pair is not generalized Kaehler");
    if (J.canonical_spinor.empty())
        throw ValidationError("structure carries no canonical spinor");
    gk.phi_dense = J.canonical_spinor;
    gk.psi_dense = constant_dense(psi);
    gk.A0 = spin_matrix(so_to_spin(J));
    gk.A1 = spin_matrix(so_to_spin(gk.Jpsi));
    gk.B1 = column_space_basis(uvv_projector(gk, 0, -n + 2));
    std::vector<std::vector<Scalar>> cols;
    for (auto [p, q] : {std::pair{1, -n + 1}, {-1, -n + 1}, {1, -n + 3},
                        {-1, -n + 3}}) {
        for (auto& c : column_space_basis(uvv_projector(gk, p, q)).columns())
            cols.push_back(std::move(c));
    }
    gk.B2 = Mat<Scalar>::from_columns(cols);
    return gk;
}

// the full d matrix on mask space at Fourier mode k:
// d(e^{ikx} dx^A) = e^{ikx} sum_j (i k_j) dx^j ^ dx^A
inline Mat<Scalar> mode_d_matrix(int m, const Key& k) {
    Mat<Scalar> D(1 << m, 1 << m);
    for (int j = 0; j < m; ++j) {
        if (k[j] == 0) continue;
        D = D + generator_spin_matrix(m, m + j) * (Scalar::i() * Scalar(k[j]));
    }
    return D;
}

// corner of d at mode k mapping U^{p,q} -> U^{p+dp,q+dq} summed over (p,q)
inline Mat<Scalar> d_corner(const GKOneSpinor& gk, const Key& k, int dp,
                            int dq) {
    auto levels = u_levels(gk.dim);
    Mat<Scalar> D = mode_d_matrix(gk.dim, k);
    Mat<Scalar> out(1 << gk.dim, 1 << gk.dim);
    for (int p : levels)
        for (int q : levels) {
            bool ok = true;
            for (int s : {p + dp, q + dq})
                if (s < levels.front() || s > levels.back()) ok = false;
            if (!ok) continue;
            out = out + uvv_projector(gk, p + dp, q + dq) * D *
                            uvv_projector(gk, p, q);
        }
    return out;
}

struct ModeBlock {
    Key key;
    Mat<Scalar> D1;      // d: K^1 -> K^2 in the bases B1, B2
    Mat<Scalar> G1, G2;  // Gram matrices of the bases
};

struct ModeHodge {
    const GKOneSpinor* gk = nullptr;
    int mode_cap = 0;
    std::map<Key, ModeBlock> blocks;

    ModeBlock& block(const Key& k) {
        auto it = blocks.find(k);
        if (it != blocks.end()) return it->second;
        for (int kj : k)
            if (std::abs(kj) > mode_cap)
                throw ValidationError("mode exceeds the retained cap");
        ModeBlock b;
        b.key = k;
        Mat<Scalar> D = mode_d_matrix(gk->dim, k);
        // images of the K^1 basis expressed in the K^2 basis
        auto img = (D * gk->B1).columns();
        Mat<Scalar> X(gk->B2.cols(), gk->B1.cols());
        for (size_t c = 0; c < img.size(); ++c) {
            auto sol = solve(gk->B2, img[c]);
            if (!sol) throw ValidationError("d does not map K^1 into K^2");
            for (int r = 0; r < X.rows(); ++r) X(r, (int)c) = (*sol)[r];
        }
        b.D1 = X;
        b.G1 = gk->B1.conj_transpose() * gk->B1;
        b.G2 = gk->B2.conj_transpose() * gk->B2;
        return blocks.emplace(k, std::move(b)).first->second;
    }
};

inline ModeHodge k_complex(const GKOneSpinor& gk, int mode_cap) {
    ModeHodge h;
    h.gk = &gk;
    h.mode_cap = mode_cap;
    return h;
}

// splits a trig-poly form into per-mode dense coefficient vectors
inline std::map<Key, std::vector<Scalar>> mode_dense(
    const FormField<TrigPoly>& f) {
    std::map<Key, std::vector<Scalar>> out;
    int n = 1 << f.dim();
    for (const auto& [mask, c] : f.parts())
        for (const auto& [k, s] : c.terms()) {
            auto [it, fresh] = out.try_emplace(k, std::vector<Scalar>(n, Scalar(0)));
            it->second[mask] = s;
        }
    return out;
}

inline FormField<TrigPoly> from_mode_dense(
    int m, const std::map<Key, std::vector<Scalar>>& modes) {
    FormField<TrigPoly> f(m);
    for (const auto& [k, v] : modes)
        for (Mask mask = 0; mask < (Mask(1) << m); ++mask)
            if (!v[mask].is_zero())
                f.add_term(mask, TrigPoly::monomial(m, k, v[mask]));
    return f;
}

// membership coordinates in a column basis, nullopt when outside the span
inline std::optional<std::vector<Scalar>> basis_coords(
    const Mat<Scalar>& B, const std::vector<Scalar>& v) {
    return solve(B, v);
}

// minimal-norm beta in K^1 with d(beta) = gamma, solved mode by mode;
// NotExact when gamma leaves the image of d on some mode (the computational
// shadow of a non-vanishing obstruction class), NotInK2 when gamma is not
// even a K^2 section.
inline FormField<TrigPoly> hodge_solve(const FormField<TrigPoly>& gamma,
                                       ModeHodge& hodge) {
    const GKOneSpinor& gk = *hodge.gk;
    int m = gk.dim;
    std::map<Key, std::vector<Scalar>> out;
    for (const auto& [k, v] : mode_dense(gamma)) {
        auto coords = basis_coords(gk.B2, v);
        if (!coords) throw NotInK2("right-hand side is not a K^2 section");
        ModeBlock& blk = hodge.block(k);
        auto x = solve_min_norm(blk.D1, *coords, blk.G1);
        if (!x)
            throw NotExact("mode obstruction: right-hand side is not d-exact");
        std::vector<Scalar> beta = gk.B1.apply(*x);
        out.emplace(k, std::move(beta));
    }
    return from_mode_dense(m, out);
}

// harmonic representatives of H^1(K^.): per-mode kernel of d on K^1
inline std::map<Key, std::vector<FormField<TrigPoly>>> harmonic_H1(
    ModeHodge& hodge, const std::vector<Key>& modes) {
    const GKOneSpinor& gk = *hodge.gk;
    std::map<Key, std::vector<FormField<TrigPoly>>> out;
    for (const auto& k : modes) {
        ModeBlock& blk = hodge.block(k);
        std::vector<FormField<TrigPoly>> reps;
        for (const auto& x : kernel_basis(blk.D1)) {
            auto v = gk.B1.apply(x);
            std::map<Key, std::vector<Scalar>> one{{k, v}};
            reps.push_back(from_mode_dense(gk.dim, one));
        }
        if (!reps.empty()) out.emplace(k, std::move(reps));
    }
    return out;
}

// all modes with |k|_inf <= cap
inline std::vector<Key> modes_up_to(int m, int cap) {
    std::vector<Key> keys;
    Key k(m, -cap);
    while (true) {
        keys.push_back(k);
        int j = 0;
        while (j < m && k[j] == cap) k[j++] = -cap;
        if (j == m) break;
        ++k[j];
    }
    return keys;
}

// largest |k|_inf over the Fourier support of a Clifford series
inline int support_radius(const CliffordSeries<TrigPoly>& a) {
    int r = 0;
    for (const auto& c : a.coeffs)
        for (const auto& [w, f] : c.words()) r = std::max(r, f.support_radius());
    return r;
}

}  // namespace gk
