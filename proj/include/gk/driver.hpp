#pragma once

// Command runners shared by the command-line tool and the test suite.
// Every runner consumes a Scene and returns an ordered JSON report whose
// bytes are a pure function of the scene and options, so repeated runs are
// byte-identical.

#include "gk/majorant.hpp"
#include "gk/poisson.hpp"
#include "gk/scene.hpp"
#include "gk/stability.hpp"
#include "gk/suites.hpp"

namespace gk {

inline Json report_header(const char* command, const Scene& sc) {
    Json rep;
    rep["version"] = "1.0.0";
    rep["command"] = command;
    rep["scene_hash"] = sc.hash;
    rep["seed"] = sc.seed;
    rep["tolerances"] = Json{{"float", sc.tol_float}, {"rank", sc.tol_rank}};
    rep["checks"] = Json::array();
    return rep;
}

// every check records how it was decided: "exact" means rational arithmetic,
// "float" means a toleranced numerical test, "property" means randomized
// trials
inline void add_check(Json& rep, const std::string& name, bool pass,
                      const std::string& kind, Json details = Json::object()) {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    c["kind"] = kind;
    if (!details.empty()) c["details"] = std::move(details);
    rep["checks"].push_back(std::move(c));
}

inline void finalize_report(Json& rep) {
    bool all = true;
    for (const auto& c : rep["checks"]) all = all && c.at("pass").get<bool>();
    rep["pass"] = all;
}

// ---------- identities ----------

inline Json run_identities(const Scene& sc, int cases = 50) {
    Json rep = report_header("identities", sc);
    for (const auto& r :
         run_identity_suites(sc.m, sc.mode_cap, sc.seed, cases)) {
        Json d;
        d["cases"] = r.cases;
        d["failures"] = r.failures;
        if (!r.counterexample.empty()) d["counterexample"] = r.counterexample;
        add_check(rep, r.name, r.pass(), "property", std::move(d));
    }
    finalize_report(rep);
    return rep;
}

// ---------- deform ----------

// build the real deformation series a(t) described by the scene
inline CliffordSeries<TrigPoly> scene_deformation(const Scene& sc,
                                                  const GCStructure& J0,
                                                  const FormField<TrigPoly>& phi) {
    int m = sc.m, N = sc.order;
    CliffordSeries<TrigPoly> a(N, CliffordElement<TrigPoly>(m));
    if (sc.deformation == "bfield") {
        // a closed B-field acts by wedging: a_1 = B as a Clifford 2-form
        for (const auto& [mask, c] : sc.bfield.parts())
            a[1] += CliffordElement<TrigPoly>::word_elem(m, Word{0, mask}, c);
    } else if (sc.deformation == "epsilon_series") {
        CliffordSeries<TrigPoly> eps(N, CliffordElement<TrigPoly>(m));
        for (size_t k = 0; k < sc.epsilon.size() && (int)k < N; ++k)
            eps[(int)k + 1] = sc.epsilon[k];
        a = prop26_lift(eps, J0, phi, N);
    } else if (sc.deformation != "none") {
        throw ValidationError("deformation kind is not defined on the torus");
    }
    return a;
}

inline Json run_deform(const Scene& sc) {
    if (!sc.torus)
        throw ValidationError("deform requires a torus scene");
    auto mod = flat_kahler_model(sc.m);
    auto gkd = gk_one_spinor(mod.J0, sc.spinor);
    auto a = scene_deformation(sc, mod.J0, mod.phi);

    FormField<TrigPoly> s(sc.m);
    if (!sc.s_coeffs.empty()) {
        auto shifts = compatible_shifts(gkd);
        if (sc.s_coeffs.size() > shifts.size())
            throw ValidationError("more shift coordinates than harmonic shifts");
        for (size_t i = 0; i < sc.s_coeffs.size(); ++i)
            s += shifts[i] * Scalar(sc.s_coeffs[i]);
    }

    auto run = solve_stability(gkd, a, s, sc.order, sc.mode_cap);
    auto fam = verify_family(run, gkd);

    Json rep = report_header("deform", sc);
    rep["order"] = sc.order;
    rep["mode_cap"] = sc.mode_cap;
    add_check(rep, "family_closed", run.closed, "exact");
    add_check(rep, "first_spinor_fixed", run.phi_fixed, "exact");
    add_check(rep, "annihilator_transport", fam.annihilator_transport, "exact");
    add_check(rep, "pointwise_pair", fam.float_checks, "float",
              Json{{"worst_commutator", fam.worst_commutator},
                   {"min_eigenvalue", fam.min_eigenvalue},
                   {"tolerance", fam.tolerance}});

    auto cert = majorant_certificate(sc.maj_c, sc.maj_lambda, sc.maj_K1,
                                     sc.maj_K2, sc.order, run);
    add_check(rep, "majorant_certificate", cert.pass(), "exact",
              Json{{"c", dump_rational(cert.c)},
                   {"lambda", dump_rational(cert.lambda)},
                   {"K1", dump_rational(cert.K1)},
                   {"K2", dump_rational(cert.K2)},
                   {"K1_min", dump_rational(cert.K1_min)},
                   {"K2_min", dump_rational(cert.K2_min)},
                   {"contraction", cert.contraction}});

    Json classes = Json::array();
    for (const auto& c : run.de_rham) classes.push_back(dump_form(c));
    rep["de_rham_class"] = std::move(classes);
    finalize_report(rep);
    return rep;
}

// ---------- typemap ----------

inline Json run_typemap(const Scene& sc) {
    if (sc.torus || sc.beta.empty())
        throw ValidationError("typemap requires a chart scene with a bivector");
    auto b = poisson_bivector(sc.n, sc.beta);
    Json rep = report_header("typemap", sc);
    add_check(rep, "poisson", poisson_check(b).is_zero(), "exact");

    auto types = type_stratify(b, sc.grid);
    std::vector<std::vector<double>> fgrid;
    for (const auto& x : sc.grid) {
        std::vector<double> p;
        for (const auto& c : x) p.push_back(c.get_d());
        fgrid.push_back(std::move(p));
    }
    auto ftypes = type_stratify_f(b, fgrid, sc.tol_rank);
    add_check(rep, "float_agreement", types == ftypes, "float");

    // independent spinor-side types at the same points
    auto omega = holomorphic_volume<AffinePoly>(sc.m);
    auto spinor = poisson_spinor(b, omega, sc.n);
    FormField<AffinePoly> at_one(sc.m);
    for (int k = 0; k <= sc.n; ++k) at_one += spinor[k];
    bool spinor_agree = true;
    for (size_t i = 0; i < sc.grid.size(); ++i)
        spinor_agree = spinor_agree && type_at(at_one, sc.grid[i]) == types[i];
    add_check(rep, "spinor_type_agreement", spinor_agree, "exact");

    Json tm = Json::array();
    for (size_t i = 0; i < sc.grid.size(); ++i) {
        Json pt = Json::array();
        for (const auto& c : sc.grid[i]) pt.push_back(dump_rational(c));
        tm.push_back(Json{{"point", pt}, {"type", types[i]}});
    }
    rep["types"] = std::move(tm);
    finalize_report(rep);
    return rep;
}

// ---------- cbh ----------

inline Json run_cbh(const Scene& sc, int trials = 10) {
    int m = sc.m, N = sc.order;
    Json rep = report_header("cbh", sc);

    // symbolic spot checks on one seeded pair
    detail::SuiteRng rng((unsigned)sc.seed);
    auto random_series = [&](int len) {
        CliffordSeries<TrigPoly> s(N, CliffordElement<TrigPoly>(m));
        for (int k = 1; k <= N; ++k)
            s[k] = detail::suite_clifford(rng, m, len, 1, 2);
        return s;
    };
    auto a = random_series(2);
    auto b = random_series(2);
    auto z = cbh_log(a, b, N);

    bool order1 = N < 1 || z[1] == a[1] + b[1];
    add_check(rep, "order1_sum", order1, "exact");
    if (N >= 2) {
        auto z2 = a[2] + b[2] +
                  commutator(a[1], b[1]) * Scalar(rat(1, 2));
        add_check(rep, "order2_half_commutator", z[2] == z2, "exact");
    }
    if (N >= 3) {
        auto c1 = commutator(a[1], b[1]);
        auto z3 = a[3] + b[3] +
                  (commutator(a[1], b[2]) + commutator(a[2], b[1])) *
                      Scalar(rat(1, 2)) +
                  (commutator(a[1], c1) - commutator(b[1], c1)) *
                      Scalar(rat(1, 12));
        add_check(rep, "order3_jacobi_terms", z[3] == z3, "exact");
    }

    // re-exponentiation e^z = e^a e^b on fresh random pairs, all orders
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        auto at = random_series(2);
        auto bt = random_series(2);
        auto zt = cbh_log(at, bt, N);
        if (exp_series(zt, N) !=
            series_mul(exp_series(at, N), exp_series(bt, N)))
            ++failures;
    }
    add_check(rep, "re_exponentiation", failures == 0, "property",
              Json{{"cases", trials}, {"failures", failures}});

    Json table = Json::array();
    for (int k = 1; k <= N; ++k) table.push_back(dump_clifford(z[k]));
    rep["log_series"] = std::move(table);
    finalize_report(rep);
    return rep;
}

// ---------- majorant ----------

inline Json run_majorant(const Scene& sc) {
    if (!sc.torus)
        throw ValidationError("majorant requires a torus scene");
    auto mod = flat_kahler_model(sc.m);
    auto gkd = gk_one_spinor(mod.J0, sc.spinor);
    auto a = scene_deformation(sc, mod.J0, mod.phi);
    auto run = solve_stability(gkd, a, FormField<TrigPoly>(sc.m), sc.order,
                               sc.mode_cap);
    auto cert = majorant_certificate(sc.maj_c, sc.maj_lambda, sc.maj_K1,
                                     sc.maj_K2, sc.order, run);

    Json rep = report_header("majorant", sc);
    add_check(rep, "square_bound", cert.square_bound, "exact",
              Json{{"c", dump_rational(cert.c)}});
    add_check(rep, "exp_bound", cert.exp_bound, "exact",
              Json{{"lambda", dump_rational(cert.lambda)},
                   {"e_lambda_upper", dump_rational(cert.e_lambda_ub)}});
    add_check(rep, "series_dominated", cert.a_ok && cert.b_ok && cert.z_ok,
              "exact",
              Json{{"K1", dump_rational(cert.K1)},
                   {"K2", dump_rational(cert.K2)},
                   {"K1_min", dump_rational(cert.K1_min)},
                   {"K2_min", dump_rational(cert.K2_min)}});
    add_check(rep, "contraction", cert.contraction, "exact");
    finalize_report(rep);
    return rep;
}

}  // namespace gk
