#pragma once

// Exact Gaussian-rational scalars: a + b*i with a, b arbitrary-precision
// rationals (GMP). This is the ground field of the whole kernel.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "gk/errors.hpp"

namespace gk {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p/q" or "p".
inline Rational rat_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

struct Scalar {
    Rational re;
    Rational im;

    Scalar() : re(0), im(0) {}
    Scalar(long n) : re(n), im(0) {}  // NOLINT(runtime/explicit)
    Scalar(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    // ring-concept shims so Scalar can serve as a (constant) coefficient
    // ring for forms and Clifford elements
    static Scalar zero(int) { return Scalar(0); }
    static Scalar one(int) { return Scalar(1); }
    static Scalar constant(int, const Scalar& c) { return c; }
    bool is_constant() const { return true; }
    const Scalar& constant_value() const { return *this; }
    Scalar eval_zero() const { return *this; }
    Scalar partial(int) const { return Scalar(0); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    // |re| + |im|, the coefficientwise norm surrogate used by the
    // majorant certificates.
    Rational l1() const { return abs(re) + abs(im); }

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

    Scalar inverse() const {
        Rational n = re * re + im * im;
        if (n == 0) throw Error("division by zero Scalar");
        return Scalar(re / n, -im / n);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        return a * b.inverse();
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    double re_d() const { return re.get_d(); }
    double im_d() const { return im.get_d(); }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        if (s.im == 0) return os << s.re.get_str();
        if (s.re == 0) return os << s.im.get_str() << "i";
        return os << "(" << s.re.get_str() << (s.im > 0 ? "+" : "")
                  << s.im.get_str() << "i)";
    }
};

inline Scalar conj(const Scalar& s) { return s.conj(); }

}  // namespace gk
