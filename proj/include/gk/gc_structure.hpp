#pragma once

// Generalized complex structures on the flat model: constant 2m x 2m
// matrices J on T + T* with J^2 = -id, skew-adjoint for the split pairing,
// together with pure spinors, the lift so(T+T*) -> CL^[2], and the
// eigenspace gradings U^k and U^{p,q} of the form bundle.

#include <map>
#include <utility>
#include <vector>

#include "gk/clifford.hpp"
#include "gk/numeric.hpp"

namespace gk {

// bilinear split pairing matrix on the basis (d_1..d_m, dx^1..dx^m):
// <v + theta, w + eta> = theta(w)/2 + eta(v)/2
inline Mat<Scalar> pairing_matrix(int m) {
    Mat<Scalar> p(2 * m, 2 * m);
    Scalar half{Rational(1, 2)};
    for (int i = 0; i < m; ++i) {
        p(i, m + i) = half;
        p(m + i, i) = half;
    }
    return p;
}

// degree-1 element from its coordinate vector in the basis (d_i, dx^j)
inline CliffordElement<Scalar> degree1_from_vector(int m,
                                                   const std::vector<Scalar>& v) {
    CliffordElement<Scalar> e(m);
    for (int a = 0; a < 2 * m; ++a)
        e += CliffordElement<Scalar>::generator(m, a, v[a]);
    return e;
}

inline std::vector<Scalar> degree1_to_vector(const CliffordElement<Scalar>& e) {
    if (!e.is_degree(1)) throw DegreeError("expected a degree-1 element");
    int m = e.dim();
    std::vector<Scalar> v(2 * m, Scalar(0));
    for (const auto& [w, c] : e.words()) {
        if (w.vec) v[std::countr_zero(w.vec)] = c;
        else v[m + std::countr_zero(w.form)] = c;
    }
    return v;
}

// 2^m x 2^m matrix of the spin action of generator a on the dx-mask basis
inline Mat<Scalar> generator_spin_matrix(int m, int a) {
    int n = 1 << m;
    Mat<Scalar> s(n, n);
    for (Mask col = 0; col < (Mask)n; ++col) {
        if (a < m) {  // interior product with d_a
            Mask bit = Mask(1) << a;
            if (col & bit)
                s((int)(col & ~bit), (int)col) = Scalar(reorder_sign(col, a));
        } else {  // exterior product with dx^{a-m}
            int j = a - m;
            Mask bit = Mask(1) << j;
            if (!(col & bit))
                s((int)(col | bit), (int)col) = Scalar(reorder_sign(col, j));
        }
    }
    return s;
}

// spin action of a constant-coefficient Clifford element as a dense matrix
inline Mat<Scalar> spin_matrix(const CliffordElement<Scalar>& e) {
    int m = e.dim();
    int n = 1 << m;
    std::vector<Mat<Scalar>> gen;
    gen.reserve(2 * m);
    for (int a = 0; a < 2 * m; ++a) gen.push_back(generator_spin_matrix(m, a));
    Mat<Scalar> out(n, n);
    for (const auto& [w, c] : e.words()) {
        Mat<Scalar> mw = Mat<Scalar>::identity(n);
        for (int j = 0; j < m; ++j)
            if (w.vec & (Mask(1) << j)) mw = mw * gen[j];
        for (int j = 0; j < m; ++j)
            if (w.form & (Mask(1) << j)) mw = mw * gen[m + j];
        out = out + mw * c;
    }
    return out;
}

struct GCStructure {
    int dim = 0;            // m, the real dimension of the model
    Mat<Scalar> matrix;     // action on the ordered basis (d_1..d_m, dx^1..dx^m)
    // canonical spinor as a constant coefficient vector over dx-masks
    // (empty when not specified)
    std::vector<Scalar> canonical_spinor;

    int n() const { return dim / 2; }

    // column a of the matrix = J e_a in coordinates
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        return matrix.apply(v);
    }
};

struct ValidationReport {
    bool square = false;
    bool j_squared = false;     // J^2 = -id
    bool orthogonal = false;    // J^T P J = P
    bool ranks = false;         // eigenspaces of rank m, isotropic, spanning
    bool pass() const { return square && j_squared && orthogonal && ranks; }
};

inline ValidationReport validate(const GCStructure& J) {
    ValidationReport rep;
    int m = J.dim;
    const Mat<Scalar>& A = J.matrix;
    rep.square = (A.rows() == 2 * m && A.cols() == 2 * m && m % 2 == 0);
    if (!rep.square) return rep;
    rep.j_squared = (A * A == -Mat<Scalar>::identity(2 * m));
    Mat<Scalar> P = pairing_matrix(m);
    rep.orthogonal = (A.transpose() * P * A == P);
    if (!rep.j_squared || !rep.orthogonal) return rep;

    // L = ker(J - i), Lbar = ker(J + i): rank m each, isotropic, spanning
    Mat<Scalar> I = Mat<Scalar>::identity(2 * m);
    auto L = kernel_basis(A - I * Scalar::i());
    auto Lb = kernel_basis(A + I * Scalar::i());
    bool ok = ((int)L.size() == m && (int)Lb.size() == m);
    if (ok) {
        for (size_t i = 0; i < L.size() && ok; ++i)
            for (size_t j = 0; j < L.size() && ok; ++j) {
                Scalar ip(0);
                for (int r = 0; r < 2 * m; ++r)
                    for (int c = 0; c < 2 * m; ++c)
                        ip += L[i][r] * P(r, c) * L[j][c];
                ok = ip.is_zero();
            }
        auto both = L;
        both.insert(both.end(), Lb.begin(), Lb.end());
        ok = ok && rank(Mat<Scalar>::from_columns(both)) == 2 * m;
    }
    rep.ranks = ok;
    return rep;
}

struct PureSpinorData {
    std::vector<Scalar> spinor;  // dense over dx-masks, 2^m entries
    std::vector<CliffordElement<Scalar>> annihilator_basis;  // rank m
};

// The constant-coefficient value of a form field: constant coefficients
// taken as-is, otherwise the evaluation at x = 0.
template <class R>
std::vector<Scalar> dense_at_zero(const FormField<R>& f) {
    std::vector<Scalar> v(size_t(1) << f.dim(), Scalar(0));
    for (const auto& [mask, c] : f.parts()) v[mask] = c.eval_zero();
    return v;
}

// L_phi = { degree-1 E : E . phi = 0 }; pure when rank = m
inline PureSpinorData annihilator_of_dense(int m, const std::vector<Scalar>& phi) {
    int n = 1 << m;
    Mat<Scalar> sys(n, 2 * m);
    for (int a = 0; a < 2 * m; ++a) {
        auto col = generator_spin_matrix(m, a).apply(phi);
        for (int i = 0; i < n; ++i) sys(i, a) = col[i];
    }
    auto ker = kernel_basis(sys);
    if ((int)ker.size() != m)
        throw NotPure("annihilator rank " + std::to_string(ker.size()) +
                      ", expected " + std::to_string(m));
    // non-degeneracy: L and conj(L) intersect trivially
    std::vector<std::vector<Scalar>> both = ker;
    for (const auto& v : ker) {
        std::vector<Scalar> c(v.size());
        for (size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
        both.push_back(std::move(c));
    }
    if (rank(Mat<Scalar>::from_columns(both)) != 2 * m)
        throw NotNondegenerate("annihilator meets its conjugate");
    PureSpinorData out;
    out.spinor = phi;
    for (const auto& v : ker) out.annihilator_basis.push_back(degree1_from_vector(m, v));
    return out;
}

template <class R>
PureSpinorData annihilator(const FormField<R>& phi) {
    return annihilator_of_dense(phi.dim(), dense_at_zero(phi));
}

// J_phi = -i on L_phi, +i on conj(L_phi); real by non-degeneracy
template <class R>
GCStructure induced_structure(const FormField<R>& phi) {
    int m = phi.dim();
    PureSpinorData data = annihilator(phi);
    std::vector<std::vector<Scalar>> cols;
    for (const auto& e : data.annihilator_basis) cols.push_back(degree1_to_vector(e));
    size_t half = cols.size();
    for (size_t i = 0; i < half; ++i) {
        std::vector<Scalar> c(cols[i].size());
        for (size_t j = 0; j < c.size(); ++j) c[j] = cols[i][j].conj();
        cols.push_back(std::move(c));
    }
    Mat<Scalar> B = Mat<Scalar>::from_columns(cols);
    Mat<Scalar> D(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        D(i, i) = -Scalar::i();
        D(m + i, m + i) = Scalar::i();
    }
    GCStructure J;
    J.dim = m;
    J.matrix = B * D * inverse(B);
    for (int i = 0; i < 2 * m; ++i)
        for (int j = 0; j < 2 * m; ++j)
            if (!(J.matrix(i, j).conj() == J.matrix(i, j)))
                throw NotNondegenerate("induced structure is not real");
    J.canonical_spinor = data.spinor;
    return J;
}

// sigma(J) in CL^[2] with [sigma(J), E] = J E for degree-1 E and zero
// scalar part; the commutator condition determines it up to scalars only.
inline CliffordElement<Scalar> so_to_spin(const GCStructure& J) {
    int m = J.dim;
    std::vector<Word> basis2;
    for (Mask v = 0; v < (Mask(1) << m); ++v)
        for (Mask f = 0; f < (Mask(1) << m); ++f)
            if (std::popcount(v) + std::popcount(f) == 2)
                basis2.push_back(Word{v, f});
    int ncols = (int)basis2.size();
    // rows: for each generator a, the 2m coordinates of [w, e_a]
    Mat<Scalar> sys(2 * m * 2 * m, ncols);
    std::vector<Scalar> rhs(2 * m * 2 * m, Scalar(0));
    for (int a = 0; a < 2 * m; ++a) {
        Word ea = a < m ? Word{Mask(1) << a, 0} : Word{0, Mask(1) << (a - m)};
        for (int c = 0; c < ncols; ++c) {
            std::map<Word, int> comm;
            for (const auto& [w, s] : word_mul(basis2[c], ea)) comm[w] += s;
            for (const auto& [w, s] : word_mul(ea, basis2[c])) comm[w] -= s;
            for (const auto& [w, s] : comm) {
                if (s == 0) continue;
                if (w.length() != 1)
                    throw Error("commutator left the degree-1 space");
                int b = w.vec ? std::countr_zero(w.vec)
                              : m + std::countr_zero(w.form);
                sys(a * 2 * m + b, c) = Scalar(s);
            }
        }
        for (int b = 0; b < 2 * m; ++b) rhs[a * 2 * m + b] = J.matrix(b, a);
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw Unsolvable("no CL^[2] lift; input is not skew-adjoint");
    CliffordElement<Scalar> sigma(m);
    for (int c = 0; c < ncols; ++c) sigma.add_term(basis2[c], (*sol)[c]);
    return sigma;
}

// Lagrange eigenprojector onto the k*i eigenspace of A, eigenvalues
// {j*i : j in levels}
inline Mat<Scalar> eigen_projector(const Mat<Scalar>& A, int k,
                                   const std::vector<int>& levels) {
    int n = A.rows();
    Mat<Scalar> p = Mat<Scalar>::identity(n);
    for (int j : levels) {
        if (j == k) continue;
        Scalar denom = Scalar::i() * Scalar(Rational(k - j));
        p = p * ((A - Mat<Scalar>::identity(n) * (Scalar::i() * Scalar(Rational(j)))) *
                 denom.inverse());
    }
    return p;
}

inline std::vector<int> u_levels(int m) {
    std::vector<int> ls;
    for (int k = -m / 2; k <= m / 2; ++k) ls.push_back(k);
    return ls;
}

// applies a Scalar matrix on the dx-mask basis to a form field, R-linearly
template <class R>
FormField<R> apply_mask_matrix(const Mat<Scalar>& P, const FormField<R>& a) {
    FormField<R> out(a.dim());
    for (const auto& [col, c] : a.parts())
        for (int row = 0; row < P.rows(); ++row) {
            const Scalar& v = P(row, (int)col);
            if (v.is_zero()) continue;
            out.add_term((Mask)row, c * v);
        }
    return out;
}

template <class R>
using GradedForm = std::map<int, FormField<R>>;

template <class R>
GradedForm<R> u_decompose(const FormField<R>& a, const GCStructure& J) {
    Mat<Scalar> A = spin_matrix(so_to_spin(J));
    GradedForm<R> out;
    for (int k : u_levels(J.dim)) {
        FormField<R> part = apply_mask_matrix(eigen_projector(A, k, u_levels(J.dim)), a);
        if (!part.is_zero()) out.emplace(k, std::move(part));
    }
    return out;
}

inline bool commute(const GCStructure& J0, const GCStructure& J1) {
    return J0.matrix * J1.matrix == J1.matrix * J0.matrix;
}

template <class R>
using BigradedForm = std::map<std::pair<int, int>, FormField<R>>;

template <class R>
BigradedForm<R> bigrade(const FormField<R>& a, const GCStructure& J0,
                        const GCStructure& J1) {
    if (!commute(J0, J1)) throw NonCommuting("structures do not commute");
    Mat<Scalar> A0 = spin_matrix(so_to_spin(J0));
    Mat<Scalar> A1 = spin_matrix(so_to_spin(J1));
    auto levels = u_levels(J0.dim);
    BigradedForm<R> out;
    for (int p : levels) {
        FormField<R> ap = apply_mask_matrix(eigen_projector(A0, p, levels), a);
        if (ap.is_zero()) continue;
        for (int q : levels) {
            FormField<R> apq = apply_mask_matrix(eigen_projector(A1, q, levels), ap);
            if (!apq.is_zero()) out.emplace(std::make_pair(p, q), std::move(apq));
        }
    }
    return out;
}

// the four corner components of d(a) around bidegree (p, q):
// keys (+1,+1), (+1,-1), (-1,+1), (-1,-1) as offsets from (p, q)
template <class R>
BigradedForm<R> d_split(const FormField<R>& a, int p, int q,
                        const GCStructure& J0, const GCStructure& J1) {
    BigradedForm<R> da = bigrade(a.d(), J0, J1);
    BigradedForm<R> out;
    FormField<R> check(a.dim());
    for (int dp : {-1, 1})
        for (int dq : {-1, 1}) {
            auto it = da.find({p + dp, q + dq});
            FormField<R> part =
                it == da.end() ? FormField<R>::zero(a.dim()) : it->second;
            check += part;
            out.emplace(std::make_pair(dp, dq), std::move(part));
        }
    if (check != a.d())
        throw DegreeError("d did not land in the four adjacent bidegrees");
    return out;
}

// minimal nonzero form degree of phi at an exact rational point
template <class R>
int type_at(const FormField<R>& phi, const std::vector<Rational>& x) {
    int best = -1;
    for (const auto& [mask, c] : phi.parts()) {
        if (c.eval_rational(x).is_zero()) continue;
        int p = std::popcount(mask);
        if (best < 0 || p < best) best = p;
    }
    if (best < 0) throw NotPure("spinor vanishes at the evaluation point");
    return best;
}

// float fallback for points where the coefficients are not rational
template <class R>
int type_at_f(const FormField<R>& phi, const std::vector<double>& x,
              double tol) {
    int best = -1;
    for (const auto& [mask, c] : phi.parts()) {
        if (std::abs(c.eval_point(x)) <= tol) continue;
        int p = std::popcount(mask);
        if (best < 0 || p < best) best = p;
    }
    if (best < 0) throw NotPure("spinor vanishes at the evaluation point");
    return best;
}

struct GKReport {
    bool commute = false;
    bool symmetric = false;   // G(E,F) = G(F,E) w.r.t. the pairing, exact
    bool positive = false;    // min eigenvalue > tolerance at every sample
    double min_eigenvalue = 0;
    double tolerance = 0;
    bool pass() const { return commute && symmetric && positive; }
};

// generalized Kaehler check: commuting pair with positive G = <-J0 J1 . , . >
inline GKReport gk_check(const GCStructure& J0, const GCStructure& J1,
                         int samples = 1, double tolerance = 1e-9) {
    GKReport rep;
    rep.tolerance = tolerance;
    rep.commute = commute(J0, J1);
    Mat<Scalar> P = pairing_matrix(J0.dim);
    Mat<Scalar> Ghat = -(J0.matrix * J1.matrix);
    Mat<Scalar> G = P * Ghat;  // bilinear form G(E,F) = <Ghat E, F>
    rep.symmetric = (G == G.transpose());
    // structures are constant, so every sample point sees the same matrix
    (void)samples;
    rep.min_eigenvalue = min_symmetric_eigenvalue(G);
    rep.positive = rep.min_eigenvalue > tolerance;
    return rep;
}

}  // namespace gk
