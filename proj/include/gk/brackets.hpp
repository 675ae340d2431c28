#pragma once

// Derived, Courant and Schouten brackets via operator calculus on forms:
// finite compositions of d and spin actions, with exact extraction of the
// tensors (Clifford elements) they represent, the Lie algebroid
// differential of Lbar, and Maurer-Cartan / integrability checks.

#include <functional>
#include <optional>
#include <set>
#include <string>

#include "gk/gc_structure.hpp"

namespace gk {

template <class R>
using FormOp = std::function<FormField<R>(const FormField<R>&)>;

template <class R>
FormOp<R> op_d() {
    return [](const FormField<R>& a) { return a.d(); };
}

template <class R>
FormOp<R> op_spin(CliffordElement<R> e) {
    return [e = std::move(e)](const FormField<R>& a) { return spin_action(e, a); };
}

template <class R>
FormOp<R> op_anticomm(FormOp<R> x, FormOp<R> y) {
    return [x, y](const FormField<R>& a) { return x(y(a)) + y(x(a)); };
}

template <class R>
FormOp<R> op_comm(FormOp<R> x, FormOp<R> y) {
    return [x, y](const FormField<R>& a) { return x(y(a)) - y(x(a)); };
}

// monomial probe functions used for f-linearity (tensoriality) checks
inline TrigPoly ring_probe(const TrigPoly*, int dim, int j) {
    Key k(dim, 0);
    k[j] = 1;
    return TrigPoly::monomial(dim, k);
}
inline AffinePoly ring_probe(const AffinePoly*, int dim, int j) {
    Key k(dim, 0);
    k[j] = 1;
    return AffinePoly::monomial(dim, k);
}

// Extracts the degree-1 Clifford element i_v + theta^ represented by a
// tensorial operator; NotTensorial when the operator is not of that shape.
template <class R>
CliffordElement<R> extract_degree1(const FormOp<R>& op, int dim) {
    CliffordElement<R> e(dim);
    FormField<R> one = FormField<R>::scalar(dim, R::one(dim));
    FormField<R> theta = op(one);
    for (const auto& [mask, c] : theta.parts()) {
        if (std::popcount(mask) != 1)
            throw NotTensorial("operator image of 1 is not a one-form");
        e.add_term(Word{0, mask}, c);
    }
    for (int j = 0; j < dim; ++j) {
        FormField<R> img = op(FormField<R>::basis(dim, Mask(1) << j, R::one(dim)));
        R vj = img.degree_part(0).coeff(0);
        e.add_term(Word{Mask(1) << j, 0}, vj);
    }
    // exactness on the full basis and f-linearity against coordinate probes
    for (Mask mask = 0; mask < (Mask(1) << dim); ++mask) {
        FormField<R> alpha = FormField<R>::basis(dim, mask, R::one(dim));
        if (op(alpha) != spin_action(e, alpha))
            throw NotTensorial("operator is not the action of a degree-1 element");
    }
    for (int j = 0; j < dim; ++j) {
        R g = ring_probe((const R*)nullptr, dim, j);
        for (Mask mask : {Mask(0), (Mask(1) << dim) - 1}) {
            FormField<R> alpha = FormField<R>::basis(dim, mask, g);
            if (op(alpha) != op(FormField<R>::basis(dim, mask, R::one(dim))) * g)
                throw NotTensorial("operator fails f-linearity");
        }
    }
    return e;
}

// derived bracket [E, F]_d = [{d, E}, F] as an operator
template <class R>
FormOp<R> derived_bracket_op(const CliffordElement<R>& E,
                             const CliffordElement<R>& F) {
    if (!E.is_degree(1) || !F.is_degree(1))
        throw DegreeError("derived bracket requires degree-1 elements");
    return op_comm(op_anticomm(op_d<R>(), op_spin(E)), op_spin(F));
}

template <class R>
CliffordElement<R> derived_bracket(const CliffordElement<R>& E,
                                   const CliffordElement<R>& F) {
    return extract_degree1(derived_bracket_op(E, F), E.dim());
}

// Courant bracket (skew part of the derived bracket, Dorfman-style without
// the d<E,F> correction)
template <class R>
CliffordElement<R> courant_bracket(const CliffordElement<R>& E,
                                   const CliffordElement<R>& F) {
    FormOp<R> ef = derived_bracket_op(E, F);
    FormOp<R> fe = derived_bracket_op(F, E);
    FormOp<R> op = [ef, fe](const FormField<R>& a) {
        return (ef(a) - fe(a)) * Scalar(Rational(1, 2));
    };
    return extract_degree1(op, E.dim());
}

// Degree-1 element E with d phi + E phi = 0 (finite-support mode ansatz);
// NotIntegrable when the linear system is inconsistent.
template <class R>
CliffordElement<R> integrability_witness(const FormField<R>& phi) {
    int m = phi.dim();
    FormField<R> rhs = -phi.d();
    if (rhs.is_zero()) return CliffordElement<R>(m);

    // images of the generators on phi
    std::vector<FormField<R>> gen_phi;
    for (int a = 0; a < 2 * m; ++a) {
        CliffordElement<R> e = CliffordElement<R>::generator(m, a, R::one(m));
        gen_phi.push_back(spin_action(e, phi));
    }
    // candidate coefficient keys: differences of rhs keys and image keys
    std::set<Key> keys;
    keys.insert(Key(m, 0));
    for (const auto& [mask_r, cr] : rhs.parts())
        for (const auto& [kr, sr] : cr.terms())
            for (const auto& gp : gen_phi)
                for (const auto& [mask_p, cp] : gp.parts())
                    for (const auto& [kp, sp] : cp.terms()) {
                        Key k(m);
                        for (int j = 0; j < m; ++j) k[j] = kr[j] - kp[j];
                        keys.insert(k);
                    }
    std::vector<Key> keyv;
    for (const auto& k : keys) {
        bool valid = true;
        // affine exponents must stay non-negative; trig modes are free
        R probe(m);
        try {
            probe = R::monomial(m, k);
        } catch (const Error&) {
            valid = false;
        }
        if (valid) keyv.push_back(k);
    }

    // unknowns: u[a][k]; equations indexed by (mask, key) of the products
    std::map<std::pair<Mask, Key>, int> rows;
    auto row_of = [&](Mask mask, const Key& k) {
        auto [it, fresh] = rows.try_emplace({mask, k}, (int)rows.size());
        return it->second;
    };
    struct Entry {
        int row, col;
        Scalar v;
    };
    std::vector<Entry> entries;
    int ncols = 2 * m * (int)keyv.size();
    for (int a = 0; a < 2 * m; ++a)
        for (size_t ki = 0; ki < keyv.size(); ++ki) {
            int col = a * (int)keyv.size() + (int)ki;
            R mono = R::monomial(m, keyv[ki]);
            for (const auto& [mask, c] : gen_phi[a].parts()) {
                R prod = mono * c;
                for (const auto& [k2, s] : prod.terms())
                    entries.push_back({row_of(mask, k2), col, s});
            }
        }
    for (const auto& [mask, c] : rhs.parts())
        for (const auto& [k, s] : c.terms()) row_of(mask, k);
    Mat<Scalar> A((int)rows.size(), ncols);
    for (const auto& en : entries) A(en.row, en.col) += en.v;
    std::vector<Scalar> b(rows.size(), Scalar(0));
    for (const auto& [mask, c] : rhs.parts())
        for (const auto& [k, s] : c.terms()) b[rows.at({mask, k})] = s;
    auto sol = solve(A, b);
    if (!sol) throw NotIntegrable("d phi is not E phi for any degree-1 E");
    CliffordElement<R> E(m);
    for (int a = 0; a < 2 * m; ++a)
        for (size_t ki = 0; ki < keyv.size(); ++ki) {
            const Scalar& u = (*sol)[a * keyv.size() + ki];
            if (u.is_zero()) continue;
            E += CliffordElement<R>::generator(m, a,
                                               R::monomial(m, keyv[ki], u));
        }
    return E;
}

// The conjugate annihilator line: basis of Lbar of the structure induced by
// phi, as constant Clifford elements, plus its wedge monomials.
struct LBarFrame {
    int dim;
    std::vector<CliffordElement<Scalar>> gens;  // basis of Lbar

    // products gens[i1]..gens[ip] for i1 < .. < ip
    std::vector<CliffordElement<Scalar>> wedge_basis(int p) const {
        std::vector<CliffordElement<Scalar>> out;
        std::vector<int> idx(p);
        std::function<void(int, int, CliffordElement<Scalar>)> rec =
            [&](int pos, int start, CliffordElement<Scalar> acc) {
                if (pos == p) {
                    out.push_back(acc);
                    return;
                }
                for (int i = start; i < (int)gens.size(); ++i)
                    rec(pos + 1, i + 1, clifford_mul(acc, gens[i]));
            };
        rec(0, 0, CliffordElement<Scalar>::one(dim));
        return out;
    }
};

template <class R>
LBarFrame lbar_frame(const FormField<R>& phi) {
    auto data = annihilator(phi);
    LBarFrame f{phi.dim(), {}};
    for (const auto& e : data.annihilator_basis) f.gens.push_back(e.conj());
    return f;
}

// Expresses a Clifford element in a list of constant candidate elements
// with ring coefficients; nullopt if it is not in their span.
template <class R>
std::optional<std::vector<R>> in_span(
    const CliffordElement<R>& x,
    const std::vector<CliffordElement<Scalar>>& candidates) {
    int m = x.dim();
    std::map<Word, int> rows;
    auto row_of = [&](const Word& w) {
        auto [it, fresh] = rows.try_emplace(w, (int)rows.size());
        return it->second;
    };
    for (const auto& c : candidates)
        for (const auto& [w, s] : c.words()) row_of(w);
    for (const auto& [w, s] : x.words()) row_of(w);
    Mat<Scalar> A((int)rows.size(), (int)candidates.size());
    for (size_t c = 0; c < candidates.size(); ++c)
        for (const auto& [w, s] : candidates[c].words()) A(rows.at(w), (int)c) = s;
    std::vector<R> b(rows.size(), R::zero(m));
    for (const auto& [w, s] : x.words()) b[rows.at(w)] = s;
    return solve_module(A, b, R::zero(m));
}

// Extracts a tensorial operator as an element of the span of constant
// candidates with ring coefficients, by matching on all basis forms.
template <class R>
std::vector<R> extract_in_span(const FormOp<R>& op, int dim,
                               const std::vector<CliffordElement<Scalar>>& cands,
                               const char* what) {
    int n = 1 << dim;
    Mat<Scalar> A(n * n, (int)cands.size());
    for (size_t c = 0; c < cands.size(); ++c) {
        Mat<Scalar> M = spin_matrix(cands[c]);
        for (int in = 0; in < n; ++in)
            for (int out = 0; out < n; ++out)
                A(in * n + out, (int)c) = M(out, in);
    }
    std::vector<R> b(n * n, R::zero(dim));
    for (int in = 0; in < n; ++in) {
        FormField<R> img = op(FormField<R>::basis(dim, (Mask)in, R::one(dim)));
        for (const auto& [mask, c] : img.parts()) b[in * n + mask] = c;
    }
    auto sol = solve_module(A, b, R::zero(dim));
    if (!sol) throw NotTensorial(std::string("operator is not in the span: ") + what);
    return *sol;
}

template <class R>
CliffordElement<R> combine(const std::vector<CliffordElement<Scalar>>& cands,
                           const std::vector<R>& coeffs, int dim) {
    CliffordElement<R> x(dim);
    for (size_t c = 0; c < cands.size(); ++c)
        for (const auto& [w, s] : cands[c].words()) x.add_term(w, coeffs[c] * s);
    return x;
}

// Schouten bracket of two Lambda^2 Lbar elements, computed on two
// independent paths and compared (PathMismatch on disagreement):
//  (a) the operator [[d, e1], e2] extracted in the Lambda^3 Lbar span;
//  (b) the derived-bracket expansion over wedge monomials.
template <class R>
CliffordElement<R> schouten(const CliffordElement<R>& e1,
                            const CliffordElement<R>& e2,
                            const LBarFrame& frame) {
    int m = frame.dim;
    auto pairs = frame.wedge_basis(2);
    auto triples = frame.wedge_basis(3);

    // path (a): operator extraction
    FormOp<R> n_op =
        op_comm(op_comm(op_d<R>(), op_spin(e1)), op_spin(e2));
    auto coeffs_a = extract_in_span(n_op, m, triples, "Lambda^3 Lbar");
    CliffordElement<R> path_a = combine(triples, coeffs_a, m);

    // path (b): decompose into wedge monomials g E_i E_j and expand
    auto d1 = in_span(e1, pairs);
    auto d2 = in_span(e2, pairs);
    if (!d1 || !d2) throw DegreeError("input is not in Lambda^2 Lbar");
    std::vector<std::pair<int, int>> pair_idx;
    for (int i = 0; i < (int)frame.gens.size(); ++i)
        for (int j = i + 1; j < (int)frame.gens.size(); ++j)
            pair_idx.push_back({i, j});
    CliffordElement<R> path_b(m);
    for (size_t p = 0; p < pairs.size(); ++p) {
        if ((*d1)[p].is_zero()) continue;
        // fold the ring coefficient into the first factor
        CliffordElement<R> A1 =
            promote<R>(frame.gens[pair_idx[p].first], m) * (*d1)[p];
        CliffordElement<R> A2 = promote<R>(frame.gens[pair_idx[p].second], m);
        for (size_t q = 0; q < pairs.size(); ++q) {
            if ((*d2)[q].is_zero()) continue;
            CliffordElement<R> B1 =
                promote<R>(frame.gens[pair_idx[q].first], m) * (*d2)[q];
            CliffordElement<R> B2 = promote<R>(frame.gens[pair_idx[q].second], m);
            // [E1 E2, F1 F2]_S = sum (-1)^{i+j} E_hat [E_i,F_j]_d F_hat
            auto term = [&](const CliffordElement<R>& Ei,
                            const CliffordElement<R>& Eo,
                            const CliffordElement<R>& Fj,
                            const CliffordElement<R>& Fo, int sign) {
                auto br = derived_bracket(Ei, Fj);
                auto t = clifford_mul(Eo, clifford_mul(br, Fo));
                path_b += sign > 0 ? t : -t;
            };
            term(A1, A2, B1, B2, +1);
            term(A1, A2, B2, B1, -1);
            term(A2, A1, B1, B2, -1);
            term(A2, A1, B2, B1, +1);
        }
    }
    if (path_a != path_b)
        throw PathMismatch("Schouten bracket paths disagree");
    return path_a;
}

// d_L epsilon from pi_{U^{-n+3}}([d, eps] phi) = (d_L eps) phi for the
// constant canonical spinor phi of J.
template <class R>
CliffordElement<R> lie_algebroid_d(const CliffordElement<R>& eps,
                                   const FormField<R>& phi, const GCStructure& J,
                                   const LBarFrame& frame) {
    int m = frame.dim;
    // integrability precondition: d phi + E phi = 0 solvable
    (void)integrability_witness(phi);
    FormField<R> bracket = spin_action(eps, phi).d() - spin_action(eps, phi.d());
    auto dec = u_decompose(bracket, J);
    FormField<R> comp(m);
    if (auto it = dec.find(-m / 2 + 3); it != dec.end()) comp = it->second;
    // solve (sum x_c triple_c) phi = comp for ring coefficients x_c
    auto triples = frame.wedge_basis(3);
    auto phi_dense = constant_dense(phi);
    int n = 1 << m;
    Mat<Scalar> A(n, (int)triples.size());
    for (size_t c = 0; c < triples.size(); ++c) {
        auto col = spin_matrix(triples[c]).apply(phi_dense);
        for (int i = 0; i < n; ++i) A(i, (int)c) = col[i];
    }
    std::vector<R> b(n, R::zero(m));
    for (const auto& [mask, c] : comp.parts()) b[mask] = c;
    auto sol = solve_module(A, b, R::zero(m));
    if (!sol)
        throw NotIntegrable("U^{-n+3} component is not a Lambda^3 Lbar action");
    return combine(triples, *sol, m);
}

// finite exponential of a spin-nilpotent element applied to a form
template <class R>
FormField<R> spin_exp(const CliffordElement<R>& e, const FormField<R>& alpha) {
    FormField<R> sum = alpha;
    FormField<R> term = alpha;
    Rational kfact(1);
    for (int k = 1; k <= 2 * alpha.dim() + 2; ++k) {
        term = spin_action(e, term);
        if (term.is_zero()) return sum;
        kfact *= k;
        sum += term * Scalar(Rational(1) / kfact);
    }
    throw Error("spin action is not nilpotent");
}

// Maurer-Cartan residual d_L eps + (1/2)[eps, eps]_L, cross-checked against
// pi_{U^{-n+3}}(e^{-eps} d e^{eps} phi).
template <class R>
CliffordElement<R> maurer_cartan_residual(const CliffordElement<R>& eps,
                                          const FormField<R>& phi,
                                          const GCStructure& J,
                                          const LBarFrame& frame) {
    int m = frame.dim;
    CliffordElement<R> res =
        lie_algebroid_d(eps, phi, J, frame) +
        schouten(eps, eps, frame) * Scalar(Rational(1, 2));
    FormField<R> lhs = spin_exp(-eps, spin_exp(eps, phi).d());
    auto dec = u_decompose(lhs, J);
    FormField<R> comp(m);
    if (auto it = dec.find(-m / 2 + 3); it != dec.end()) comp = it->second;
    if (comp != spin_action(res, phi))
        throw PathMismatch("Maurer-Cartan residual cross-check failed");
    return res;
}

}  // namespace gk
