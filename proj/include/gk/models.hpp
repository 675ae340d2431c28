#pragma once

// Standard flat models: the constant complex structure pairing coordinates
// (x_1, x_2), (x_3, x_4), ... into z_j = x_{2j-1} + i x_{2j}, the standard
// symplectic structure from w = dx^1^dx^2 + dx^3^dx^4 + ..., and their
// canonical pure spinors dz_1^..^dz_n and e^{iw}.

#include "gk/gc_structure.hpp"

namespace gk {

// lift of the standard complex structure: J d_{2j} = d_{2j+1},
// J dx^{2j} = dx^{2j+1} (0-based coordinate pairs)
inline GCStructure complex_structure(int m) {
    if (m % 2 != 0) throw ValidationError("complex structure needs even dim");
    GCStructure J;
    J.dim = m;
    J.matrix = Mat<Scalar>(2 * m, 2 * m);
    for (int j = 0; j < m; j += 2) {
        J.matrix(j + 1, j) = Scalar(1);
        J.matrix(j, j + 1) = Scalar(-1);
        J.matrix(m + j + 1, m + j) = Scalar(1);
        J.matrix(m + j, m + j + 1) = Scalar(-1);
    }
    return J;
}

// dz_1 ^ ... ^ dz_n with dz_j = dx^{2j} + i dx^{2j+1} (0-based)
template <class R>
FormField<R> holomorphic_volume(int m) {
    FormField<R> vol = FormField<R>::scalar(m, R::one(m));
    for (int j = 0; j < m; j += 2) {
        FormField<R> dz = FormField<R>::basis(m, Mask(1) << j, R::one(m)) +
                          FormField<R>::basis(m, Mask(1) << (j + 1),
                                              R::constant(m, Scalar::i()));
        vol = vol.wedge(dz);
    }
    return vol;
}

template <class R>
FormField<R> standard_symplectic_form(int m) {
    FormField<R> w(m);
    for (int j = 0; j < m; j += 2)
        w.add_term((Mask(0b11) << j), R::one(m));
    return w;
}

// e^{iw} = prod_j (1 + i dx^{2j} ^ dx^{2j+1}): finite since w^k vanishes
template <class R>
FormField<R> symplectic_spinor(int m) {
    FormField<R> s = FormField<R>::scalar(m, R::one(m));
    for (int j = 0; j < m; j += 2) {
        FormField<R> f = FormField<R>::scalar(m, R::one(m));
        f.add_term(Mask(0b11) << j, R::constant(m, Scalar::i()));
        s = s.wedge(f);
    }
    return s;
}

inline GCStructure symplectic_structure(int m) {
    GCStructure J = induced_structure(symplectic_spinor<TrigPoly>(m));
    return J;
}

// e^{-iw}: the pure spinor whose induced structure completes the complex
// lift to a generalized Kaehler pair with positive-definite G under the
// conventions J_phi = -i on L_phi and G = <-J0 J1 ., .>
template <class R>
FormField<R> kahler_spinor(int m) {
    return symplectic_spinor<R>(m).conj();
}

struct FlatKahlerModel {
    GCStructure J0;               // complex lift, spinor phi
    GCStructure J1;               // induced from psi = e^{-iw}
    FormField<TrigPoly> phi;      // dz_1 ^ ... ^ dz_n
    FormField<TrigPoly> psi;      // e^{-iw}
};

inline FlatKahlerModel flat_kahler_model(int m) {
    FlatKahlerModel mod{complex_structure(m),
                        GCStructure{},
                        holomorphic_volume<TrigPoly>(m),
                        kahler_spinor<TrigPoly>(m)};
    mod.J0.canonical_spinor = constant_dense(mod.phi);
    mod.J1 = induced_structure(mod.psi);
    return mod;
}

inline GCStructure complex_structure_with_spinor(int m) {
    GCStructure J = complex_structure(m);
    J.canonical_spinor = constant_dense(holomorphic_volume<TrigPoly>(m));
    return J;
}

}  // namespace gk
