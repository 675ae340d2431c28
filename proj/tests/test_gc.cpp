#include "doctest.h"
#include "gk/models.hpp"
#include "test_util.hpp"

using namespace gk;
using testutil::Rng;

namespace {
using CE = CliffordElement<TrigPoly>;
using FF = FormField<TrigPoly>;

CE lift(const CliffordElement<Scalar>& e) { return promote<TrigPoly>(e, e.dim()); }

// wedge-like Clifford product of a list of degree-1 elements
CE product(const std::vector<CE>& es, int dim) {
    CE p = CE::one(dim);
    for (const auto& e : es) p = clifford_mul(p, e);
    return p;
}

FF sum_components(const GradedForm<TrigPoly>& g, int dim) {
    FF s(dim);
    for (const auto& [k, f] : g) s += f;
    return s;
}
}  // namespace

TEST_CASE("validate: standard structures pass, identity fails") {
    CHECK(validate(complex_structure(2)).pass());
    CHECK(validate(complex_structure(4)).pass());
    CHECK(validate(symplectic_structure(2)).pass());
    CHECK(validate(symplectic_structure(4)).pass());
    GCStructure bad;
    bad.dim = 2;
    bad.matrix = Mat<Scalar>::identity(4);
    auto rep = validate(bad);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.j_squared);
}

TEST_CASE("annihilator of the holomorphic volume form") {
    int m = 4;
    auto phi = holomorphic_volume<TrigPoly>(m);
    auto data = annihilator(phi);
    CHECK((int)data.annihilator_basis.size() == m);
    // d_{zbar j} = (d_{2j} + i d_{2j+1})/2 and dz_j = dx^{2j} + i dx^{2j+1}
    for (int j = 0; j < m; j += 2) {
        auto dzbar = CE::vec_gen(m, j, TrigPoly::one(m)) +
                     CE::vec_gen(m, j + 1, TrigPoly::constant(m, Scalar::i()));
        auto dz = CE::form_gen(m, j, TrigPoly::one(m)) +
                  CE::form_gen(m, j + 1, TrigPoly::constant(m, Scalar::i()));
        CHECK(spin_action(dzbar, phi).is_zero());
        CHECK(spin_action(dz, phi).is_zero());
    }
    for (const auto& e : data.annihilator_basis)
        CHECK(spin_action(lift(e), phi).is_zero());
    // isotropy of the annihilator
    for (const auto& e : data.annihilator_basis)
        for (const auto& f : data.annihilator_basis)
            CHECK(pairing(lift(e), lift(f)).is_zero());
}

TEST_CASE("annihilator of the symplectic spinor on the 2-torus") {
    int m = 2;
    auto phi = symplectic_spinor<TrigPoly>(m);  // 1 + i dx^1 ^ dx^2
    // d_x - i dy and d_y + i dx annihilate e^{iw}
    auto e1 = CE::vec_gen(m, 0, TrigPoly::one(m)) -
              CE::form_gen(m, 1, TrigPoly::constant(m, Scalar::i()));
    auto e2 = CE::vec_gen(m, 1, TrigPoly::one(m)) +
              CE::form_gen(m, 0, TrigPoly::constant(m, Scalar::i()));
    CHECK(spin_action(e1, phi).is_zero());
    CHECK(spin_action(e2, phi).is_zero());
    auto data = annihilator(phi);
    CHECK((int)data.annihilator_basis.size() == m);
    for (const auto& e : data.annihilator_basis)
        CHECK(spin_action(lift(e), phi).is_zero());
}

TEST_CASE("degenerate spinor is rejected") {
    auto phi = FF::basis(2, 0b01, TrigPoly::one(2));  // dx^1
    CHECK_THROWS_AS(annihilator(phi), NotNondegenerate);
}

TEST_CASE("induced structure of the symplectic spinor") {
    auto J = induced_structure(symplectic_spinor<TrigPoly>(2));
    CHECK(validate(J).pass());
    // J(d_x) = -dy and J(dy) = d_x on the basis (d1, d2, dx1, dx2)
    CHECK(J.matrix(3, 0) == Scalar(-1));
    CHECK(J.matrix(0, 3) == Scalar(1));
    CHECK(J.matrix == symplectic_structure(2).matrix);
}

TEST_CASE("induced structure of the holomorphic volume is the complex lift") {
    auto phi = holomorphic_volume<TrigPoly>(4);
    auto J = induced_structure(phi);
    CHECK(J.matrix == complex_structure(4).matrix);
    // scale invariance
    CHECK(induced_structure(phi * Scalar(2)).matrix == J.matrix);
}

TEST_CASE("so_to_spin: zero, symplectic commutators, canonical eigenvalue") {
    GCStructure zero;
    zero.dim = 2;
    zero.matrix = Mat<Scalar>(4, 4);
    CHECK(so_to_spin(zero).is_zero());

    auto S = symplectic_structure(2);
    auto sigma = so_to_spin(S);
    // [sigma, E] = J E for every generator
    for (int a = 0; a < 4; ++a) {
        auto ea = CliffordElement<Scalar>::generator(2, a, Scalar(1));
        auto je = degree1_from_vector(2, S.matrix.col(a).columns()[0]);
        CHECK(commutator(sigma, ea) == je);
    }
    // [sigma(J_w), d_x] = -dy
    auto dx1 = CliffordElement<Scalar>::vec_gen(2, 0, Scalar(1));
    CHECK(commutator(sigma, dx1) ==
          CliffordElement<Scalar>::form_gen(2, 1, Scalar(-1)));

    // canonical spinors are -n*i eigenvectors of the spin action of sigma(J)
    for (int m : {2, 4}) {
        Scalar ev = Scalar::i() * Scalar(Rational(-m / 2));
        auto phi_c = holomorphic_volume<TrigPoly>(m);
        CHECK(spin_action(lift(so_to_spin(complex_structure(m))), phi_c) ==
              phi_c * ev);
        auto phi_s = symplectic_spinor<TrigPoly>(m);
        CHECK(spin_action(lift(so_to_spin(symplectic_structure(m))), phi_s) ==
              phi_s * ev);
    }
    CHECK_THROWS_AS(
        [] {
            GCStructure notskew;
            notskew.dim = 2;
            notskew.matrix = Mat<Scalar>(4, 4);
            notskew.matrix(0, 0) = Scalar(1);  // not skew for the pairing
            return so_to_spin(notskew);
        }(),
        Unsolvable);
}

TEST_CASE("u_decompose: eigenvectors, resolution of identity, canonical line") {
    Rng rng(101);
    for (int m : {2, 4}) {
        auto J = complex_structure(m);
        auto sigma = lift(so_to_spin(J));
        auto phi = holomorphic_volume<TrigPoly>(m);
        // canonical spinor sits in the single component -n
        auto g = u_decompose(phi, J);
        REQUIRE(g.size() == 1);
        CHECK(g.begin()->first == -m / 2);
        CHECK(g.begin()->second == phi);
        // random forms decompose into exact eigenvectors summing back
        for (int trial = 0; trial < 5; ++trial) {
            auto a = testutil::random_trig_form(rng, m);
            auto dec = u_decompose(a, J);
            CHECK(sum_components(dec, m) == a);
            for (const auto& [k, comp] : dec)
                CHECK(spin_action(sigma, comp) ==
                      comp * (Scalar::i() * Scalar(Rational(k))));
        }
    }
}

TEST_CASE("acting with q-fold products of conjugate annihilators raises the level by q") {
    Rng rng(102);
    int m = 4;
    auto J = complex_structure(m);
    auto phi = holomorphic_volume<TrigPoly>(m);
    auto data = annihilator(phi);
    std::vector<CE> lbar;
    for (const auto& e : data.annihilator_basis) lbar.push_back(lift(e.conj()));
    for (int q = 0; q <= m; ++q) {
        for (int trial = 0; trial < 4; ++trial) {
            // random element of Lambda^q Lbar: product of q random combinations
            std::vector<CE> factors;
            for (int t = 0; t < q; ++t) {
                CE f(m);
                for (const auto& e : lbar) f += e * testutil::random_scalar(rng);
                factors.push_back(f);
            }
            auto a = spin_action(product(factors, m), phi);
            if (a.is_zero()) continue;
            auto dec = u_decompose(a, J);
            REQUIRE(dec.size() == 1);
            CHECK(dec.begin()->first == -m / 2 + q);
        }
    }
}

TEST_CASE("bigrading of the flat Kaehler model on the 4-torus") {
    int m = 4;
    auto J0 = complex_structure(m);
    auto J1 = symplectic_structure(m);
    REQUIRE(commute(J0, J1));

    // U^{-2} of J0 is Lambda^{2,0}: the holomorphic volume form
    auto phi = holomorphic_volume<TrigPoly>(m);
    auto u = u_decompose(phi, J0);
    REQUIRE(u.size() == 1);
    CHECK(u.begin()->first == -2);

    // dz1 ^ dzbar2 lies in Lambda^{1,1} inside U^0
    auto dz1 = FF::basis(m, 0b0001, TrigPoly::one(m)) +
               FF::basis(m, 0b0010, TrigPoly::constant(m, Scalar::i()));
    auto dzbar2 = FF::basis(m, 0b0100, TrigPoly::one(m)) -
                  FF::basis(m, 0b1000, TrigPoly::constant(m, Scalar::i()));
    auto u11 = u_decompose(dz1.wedge(dzbar2), J0);
    REQUIRE(u11.size() == 1);
    CHECK(u11.begin()->first == 0);

    // bigrade refines both gradings and sums back
    Rng rng(103);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = testutil::random_trig_form(rng, m);
        auto bg = bigrade(a, J0, J1);
        FF s(m);
        for (const auto& [pq, f] : bg) s += f;
        CHECK(s == a);
    }

    // the symplectic spinor has bidegree (0, -n)
    auto psi = symplectic_spinor<TrigPoly>(m);
    auto bgpsi = bigrade(psi, J0, J1);
    REQUIRE(bgpsi.size() == 1);
    CHECK(bgpsi.begin()->first == std::make_pair(0, -2));
}

TEST_CASE("non-commuting structures are rejected by bigrade") {
    // symplectic structure of w' = dx1^dx2 + dx1^dx3 + dx3^dx4 is not
    // invariant under the standard complex lift, so the pair cannot commute
    int m = 4;
    FF w(m);
    w.add_term(0b0011, TrigPoly::constant(m, Scalar::i()));
    w.add_term(0b0101, TrigPoly::constant(m, Scalar::i()));
    w.add_term(0b1100, TrigPoly::constant(m, Scalar::i()));
    auto ep = FF::scalar(m, TrigPoly::one(m)) + w +
              w.wedge(w) * Scalar(Rational(1, 2));
    auto J1 = induced_structure(ep);
    REQUIRE(validate(J1).pass());
    auto J0 = complex_structure(m);
    REQUIRE_FALSE(commute(J0, J1));
    CHECK_THROWS_AS(bigrade(holomorphic_volume<TrigPoly>(m), J0, J1),
                    NonCommuting);
}

TEST_CASE("d_split: constants die, components sum to d") {
    int m = 4;
    auto J0 = complex_structure(m);
    auto J1 = symplectic_structure(m);
    auto psi = symplectic_spinor<TrigPoly>(m);
    auto corners = d_split(psi, 0, -2, J0, J1);
    for (const auto& [off, f] : corners) CHECK(f.is_zero());

    // a mode-1 form in U^{0,-n}: f psi with f = e^{ix1}
    auto f = TrigPoly::monomial(m, {1, 0, 0, 0});
    auto a = psi * f;
    auto c2 = d_split(a, 0, -2, J0, J1);
    FF s(m);
    for (const auto& [off, g] : c2) s += g;
    CHECK(s == a.d());
    REQUIRE(c2.size() == 4);
}

TEST_CASE("type of spinors at points") {
    // affine chart on m = 4: phi = f + dz1 ^ dz2 with f = x1
    int m = 4;
    auto phi = holomorphic_volume<AffinePoly>(m) +
               FormField<AffinePoly>::scalar(m, AffinePoly::monomial(m, {1, 0, 0, 0}));
    CHECK(type_at(phi, {Rational(1), Rational(0), Rational(0), Rational(0)}) == 0);
    CHECK(type_at(phi, {Rational(0), Rational(0), Rational(0), Rational(0)}) == 2);
    CHECK(type_at_f(phi, {0.5, 0.1, 0.2, 0.3}, 1e-9) == 0);

    CHECK(type_at(symplectic_spinor<TrigPoly>(2), {Rational(0), Rational(0)}) == 0);
}

TEST_CASE("generalized Kaehler pair checks") {
    int m = 4;
    auto mod = flat_kahler_model(m);
    CHECK(gk_check(mod.J0, mod.J1).pass());
    // pairing a structure with itself gives Ghat = id, so G is the split
    // pairing: symmetric but indefinite
    auto Js = symplectic_structure(m);
    auto same = gk_check(Js, Js);
    CHECK(same.commute);
    CHECK(same.symmetric);
    CHECK_FALSE(same.pass());
    CHECK(same.min_eigenvalue == doctest::Approx(-0.5));
    // reversed orientation makes G negative-definite
    auto rep = gk_check(mod.J0, symplectic_structure(m));
    CHECK(rep.commute);
    CHECK(rep.min_eigenvalue < -rep.tolerance);
    CHECK_FALSE(rep.pass());
}

TEST_CASE("real combinations of mixed products act within two adjacent levels") {
    // E in L_J, F in L_J: real combos of E conj(F) move psi inside
    // U^{0,-n} + U^{0,-n+2}
    Rng rng(104);
    int m = 4;
    auto J0 = complex_structure(m);
    auto J1 = symplectic_structure(m);
    auto phi = holomorphic_volume<TrigPoly>(m);
    auto psi = symplectic_spinor<TrigPoly>(m);
    auto data = annihilator(phi);
    for (int trial = 0; trial < 8; ++trial) {
        CE E(m), F(m);
        for (const auto& e : data.annihilator_basis) {
            E += lift(e) * testutil::random_scalar(rng);
            F += lift(e) * testutil::random_scalar(rng);
        }
        auto EFbar = clifford_mul(E, F.conj());
        for (const auto& b :
             {EFbar + EFbar.conj(), (EFbar - EFbar.conj()) * Scalar::i()}) {
            CHECK(b.is_real());
            auto bg = bigrade(spin_action(b, psi), J0, J1);
            for (const auto& [pq, comp] : bg) {
                CHECK(pq.first == 0);
                CHECK((pq.second == -2 || pq.second == 0));
            }
        }
    }
}

TEST_CASE("odd elements moving the canonical line at most one filtration step act without the extreme corners") {
    // b in CL^3 with b . phi in CL^1 . phi, b real  =>  spin(b, psi) has no
    // U^{+-3, -n+3} component
    int m = 4;
    int n2 = 1 << m;
    auto J0 = complex_structure(m);
    auto J1 = symplectic_structure(m);
    auto phi_dense = constant_dense(holomorphic_volume<TrigPoly>(m));
    auto psi = symplectic_spinor<TrigPoly>(m);

    std::vector<Word> odd_words;
    for (Mask v = 0; v < (Mask(1) << m); ++v)
        for (Mask f = 0; f < (Mask(1) << m); ++f) {
            int len = std::popcount(v) + std::popcount(f);
            if (len == 1 || len == 3) odd_words.push_back(Word{v, f});
        }
    // unknowns: coefficients of b on odd words, plus the CL^1 multipliers
    int nb = (int)odd_words.size();
    Mat<Scalar> sys(n2, nb + 2 * m);
    for (int c = 0; c < nb; ++c) {
        CliffordElement<Scalar> w(m);
        w.add_term(odd_words[c], Scalar(1));
        auto col = spin_matrix(w).apply(phi_dense);
        for (int i = 0; i < n2; ++i) sys(i, c) = col[i];
    }
    for (int a = 0; a < 2 * m; ++a) {
        auto col = generator_spin_matrix(m, a).apply(phi_dense);
        for (int i = 0; i < n2; ++i) sys(i, nb + a) = -col[i];
    }
    auto ker = kernel_basis(sys);
    REQUIRE(!ker.empty());
    Rng rng(105);
    for (int trial = 0; trial < 6; ++trial) {
        CliffordElement<Scalar> b(m);
        for (const auto& v : ker) {
            auto c = testutil::random_scalar(rng);
            for (int j = 0; j < nb; ++j) b.add_term(odd_words[j], v[j] * c);
        }
        auto breal = b + b.conj();
        auto bg = bigrade(spin_action(promote<TrigPoly>(breal, m), psi), J0, J1);
        CHECK(bg.find({3, 1}) == bg.end());
        CHECK(bg.find({-3, 1}) == bg.end());
    }
}
