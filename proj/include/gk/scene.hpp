#pragma once

// Scene files: JSON descriptions of a model, a spinor, and a deformation,
// with every number carried exactly (rationals as "p/q" strings, Gaussian
// rationals as {"re","im"} pairs).  Parsing failures raise ParseError;
// well-formed scenes that violate a mathematical precondition raise
// ValidationError.

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "gk/models.hpp"
#include "gk/series.hpp"

namespace gk {

using Json = nlohmann::ordered_json;

// ---------- exact number literals ----------

inline Rational parse_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError("expected a rational \"p/q\" literal");
    std::string s = j.get<std::string>();
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return rat(std::stol(s), 1);
        return rat(std::stol(s.substr(0, slash)),
                   std::stol(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ParseError("malformed rational literal: " + s);
    }
}

inline Json dump_rational(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Scalar parse_scalar(const Json& j) {
    if (j.is_object()) {
        Scalar s;
        if (j.contains("re")) s.re = parse_rational(j.at("re"));
        if (j.contains("im")) s.im = parse_rational(j.at("im"));
        return s;
    }
    return Scalar(parse_rational(j));
}

inline Json dump_scalar(const Scalar& s) {
    return Json{{"re", dump_rational(s.re)}, {"im", dump_rational(s.im)}};
}

// ---------- coefficient and form literals ----------

inline Key parse_key(const Json& j, int m, const char* what) {
    if (!j.is_array() || (int)j.size() != m)
        throw ParseError(std::string(what) + " needs exactly " +
                         std::to_string(m) + " integer entries");
    Key k(m);
    for (int i = 0; i < m; ++i) k[i] = j[i].get<int>();
    return k;
}

// [{"k":[...], "c": scalar}, ...]
inline TrigPoly parse_trig(const Json& j, int m) {
    if (!j.is_array()) throw ParseError("coefficient literal must be a list");
    TrigPoly f(m);
    for (const auto& t : j)
        f += TrigPoly::monomial(m, parse_key(t.at("k"), m, "Fourier mode"),
                                parse_scalar(t.at("c")));
    return f;
}

inline Json dump_trig(const TrigPoly& f) {
    Json out = Json::array();
    for (const auto& [k, c] : f.terms()) {
        Json kj = Json::array();
        for (int e : k) kj.push_back(e);
        out.push_back(Json{{"k", kj}, {"c", dump_scalar(c)}});
    }
    return out;
}

// [{"e":[...], "c": scalar}, ...] with non-negative exponents
inline AffinePoly parse_affine(const Json& j, int m) {
    if (!j.is_array()) throw ParseError("coefficient literal must be a list");
    AffinePoly f(m);
    for (const auto& t : j) {
        Key k = parse_key(t.at("e"), m, "exponent vector");
        for (int e : k)
            if (e < 0) throw ParseError("polynomial exponents must be >= 0");
        f += AffinePoly::monomial(m, k, parse_scalar(t.at("c")));
    }
    return f;
}

inline Json dump_affine(const AffinePoly& f) {
    Json out = Json::array();
    for (const auto& [k, c] : f.terms()) {
        Json kj = Json::array();
        for (int e : k) kj.push_back(e);
        out.push_back(Json{{"e", kj}, {"c", dump_scalar(c)}});
    }
    return out;
}

// [{"word": mask, "c": trig}, ...]
inline FormField<TrigPoly> parse_form(const Json& j, int m) {
    if (!j.is_array()) throw ParseError("form literal must be a list");
    FormField<TrigPoly> f(m);
    for (const auto& t : j) {
        Mask mask = t.at("word").get<Mask>();
        if (mask >= (Mask(1) << m))
            throw ParseError("form word exceeds the model dimension");
        f.add_term(mask, parse_trig(t.at("c"), m));
    }
    return f;
}

inline Json dump_form(const FormField<TrigPoly>& f) {
    Json out = Json::array();
    for (const auto& [mask, c] : f.parts())
        out.push_back(Json{{"word", mask}, {"c", dump_trig(c)}});
    return out;
}

// [{"vec": mask, "form": mask, "c": trig}, ...]
inline CliffordElement<TrigPoly> parse_clifford(const Json& j, int m) {
    if (!j.is_array()) throw ParseError("Clifford literal must be a list");
    CliffordElement<TrigPoly> e(m);
    for (const auto& t : j) {
        Word w{t.value("vec", Mask(0)), t.value("form", Mask(0))};
        if (w.vec >= (Mask(1) << m) || w.form >= (Mask(1) << m))
            throw ParseError("Clifford word exceeds the model dimension");
        e.add_term(w, parse_trig(t.at("c"), m));
    }
    return e;
}

inline Json dump_clifford(const CliffordElement<TrigPoly>& e) {
    Json out = Json::array();
    for (const auto& [w, c] : e.words())
        out.push_back(
            Json{{"vec", w.vec}, {"form", w.form}, {"c", dump_trig(c)}});
    return out;
}

// ---------- the scene ----------

struct Scene {
    bool torus = true;
    int m = 0;         // real dimension (torus)
    int n = 0;         // complex dimension (chart)
    int mode_cap = 0;
    std::string structure = "complex";
    FormField<TrigPoly> spinor;  // psi on the torus
    std::string deformation = "none";
    FormField<TrigPoly> bfield;                       // constant 2-form
    std::vector<CliffordElement<TrigPoly>> epsilon;   // orders 1..len
    std::vector<std::vector<AffinePoly>> beta;        // chart bivector
    int order = 1;
    std::vector<Rational> s_coeffs;  // coordinates in the harmonic-shift basis
    double tol_float = 1e-6;
    double tol_rank = 1e-9;
    unsigned long seed = 1;
    // majorant parameters (c, lambda) and norm constants (K1, K2)
    Rational maj_c = rat(1, 1), maj_lambda = rat(1, 1);
    Rational maj_K1 = rat(1, 2), maj_K2 = rat(1, 4);
    std::vector<std::vector<Rational>> grid;  // chart points for typemap
    std::string hash;  // fnv1a-64 of the scene file bytes
};

inline std::string fnv1a_hex(const std::string& bytes) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline Scene parse_scene_json(const Json& j, const std::string& raw_bytes) {
    Scene sc;
    sc.hash = fnv1a_hex(raw_bytes);
    try {
        const auto& model = j.at("model");
        std::string kind = model.at("kind").get<std::string>();
        if (kind == "torus") {
            sc.torus = true;
            sc.m = model.at("m").get<int>();
            sc.mode_cap = model.value("mode_cap", 2);
        } else if (kind == "chart") {
            sc.torus = false;
            sc.n = model.at("n").get<int>();
            sc.m = 2 * sc.n;
        } else {
            throw ParseError("model.kind must be \"torus\" or \"chart\"");
        }

        sc.order = j.value("order", 1);
        sc.seed = j.value("seed", 1ul);
        if (j.contains("tolerances")) {
            sc.tol_float = j.at("tolerances").value("float", 1e-6);
            sc.tol_rank = j.at("tolerances").value("rank", 1e-9);
        }

        if (j.contains("structure"))
            sc.structure = j.at("structure").at("kind").get<std::string>();

        if (sc.torus) {
            if (sc.structure == "complex") {
                sc.spinor = j.contains("spinor")
                                ? parse_form(j.at("spinor"), sc.m)
                                : kahler_spinor<TrigPoly>(sc.m);
            } else if (sc.structure == "symplectic") {
                FormField<TrigPoly> omega =
                    j.contains("structure") && j.at("structure").contains("omega")
                        ? parse_form(j.at("structure").at("omega"), sc.m)
                        : standard_symplectic_form<TrigPoly>(sc.m);
                if (!omega.d().is_zero())
                    throw ValidationError("symplectic form is not closed");
                // psi = e^{-i omega}, a finite sum
                FormField<TrigPoly> psi = FormField<TrigPoly>::scalar(
                    sc.m, TrigPoly::one(sc.m));
                FormField<TrigPoly> pw = psi;
                Rational fact(1);
                for (int k = 1; 2 * k <= sc.m; ++k) {
                    pw = pw.wedge(omega * (-Scalar::i()));
                    fact *= k;
                    psi += pw * Scalar(1 / fact);
                }
                sc.spinor = psi;
            } else {
                throw ParseError("unsupported structure.kind: " + sc.structure);
            }
        }

        if (j.contains("deformation")) {
            const auto& d = j.at("deformation");
            sc.deformation = d.at("kind").get<std::string>();
            if (sc.deformation == "bfield") {
                sc.bfield = parse_form(d.at("form"), sc.m);
                for (const auto& [mask, c] : sc.bfield.parts())
                    if (std::popcount(mask) != 2)
                        throw ValidationError("B-field must be a 2-form");
                if (!sc.bfield.d().is_zero())
                    throw ValidationError("B-field must be closed");
            } else if (sc.deformation == "epsilon_series") {
                for (const auto& term : d.at("terms"))
                    sc.epsilon.push_back(parse_clifford(term, sc.m));
            } else if (sc.deformation == "beta") {
                const auto& rows = d.at("components");
                int n = sc.torus ? sc.m / 2 : sc.n;
                if ((int)rows.size() != n)
                    throw ParseError("beta needs n rows");
                for (const auto& row : rows) {
                    std::vector<AffinePoly> r;
                    for (const auto& cell : row)
                        r.push_back(parse_affine(cell, 2 * n));
                    sc.beta.push_back(std::move(r));
                }
            } else if (sc.deformation != "none") {
                throw ParseError("unsupported deformation.kind: " +
                                 sc.deformation);
            }
        }

        if (j.contains("s"))
            for (const auto& c : j.at("s"))
                sc.s_coeffs.push_back(parse_rational(c));

        if (j.contains("majorant")) {
            const auto& mj = j.at("majorant");
            if (mj.contains("c")) sc.maj_c = parse_rational(mj.at("c"));
            if (mj.contains("lambda"))
                sc.maj_lambda = parse_rational(mj.at("lambda"));
            if (mj.contains("K1")) sc.maj_K1 = parse_rational(mj.at("K1"));
            if (mj.contains("K2")) sc.maj_K2 = parse_rational(mj.at("K2"));
        }

        if (j.contains("grid"))
            for (const auto& pt : j.at("grid")) {
                std::vector<Rational> x;
                for (const auto& c : pt) x.push_back(parse_rational(c));
                if ((int)x.size() != sc.m)
                    throw ParseError("grid point has the wrong dimension");
                sc.grid.push_back(std::move(x));
            }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("scene JSON: ") + e.what());
    }
    return sc;
}

inline Scene parse_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scene file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    Json j;
    try {
        j = Json::parse(bytes);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("scene JSON: ") + e.what());
    }
    return parse_scene_json(j, bytes);
}

}  // namespace gk
