#pragma once

// Clifford algebra of T + T* with the split pairing <v+theta, w+eta> =
// (theta(w) + eta(v))/2, realized on normal-ordered basis words.
//
// A word is a pair of masks (vec, form): the strictly increasing product
// d_{i1}..d_{ik} dx^{j1}..dx^{jl} in the generator order
// d_1 < .. < d_m < dx^1 < .. < dx^m. Multiplication straightens products
// on the fly via the relations
//   d_i d_j + d_j d_i = 0,  dx^i dx^j + dx^j dx^i = 0,
//   d_i dx^j + dx^j d_i = delta_ij.

#include <cstdint>
#include <map>
#include <vector>

#include "gk/form.hpp"

namespace gk {

struct Word {
    Mask vec = 0;   // subset of {d_1..d_m}
    Mask form = 0;  // subset of {dx^1..dx^m}

    int length() const { return std::popcount(vec) + std::popcount(form); }

    friend bool operator<(const Word& a, const Word& b) {
        if (a.vec != b.vec) return a.vec < b.vec;
        return a.form < b.form;
    }
    friend bool operator==(const Word& a, const Word& b) {
        return a.vec == b.vec && a.form == b.form;
    }
};

namespace detail {

// Left-multiplies the generator d_j into canonical word w: at most one term.
inline void mul_vec_gen(int j, const Word& w, int sign,
                        std::vector<std::pair<Word, int>>& out) {
    Mask bit = Mask(1) << j;
    if (w.vec & bit) return;  // d_j d_j = 0
    int s = reorder_sign(w.vec, j);
    out.push_back({Word{w.vec | bit, w.form}, sign * s});
}

// Left-multiplies the generator dx^j into canonical word w: the
// anticommuting pass-through plus, when d_j is present, the contraction.
inline void mul_form_gen(int j, const Word& w, int sign,
                         std::vector<std::pair<Word, int>>& out) {
    Mask bit = Mask(1) << j;
    if (w.vec & bit) {
        // dx^j enters from the left, crossing the d's below j before the
        // contraction with d_j
        int s = reorder_sign(w.vec, j);
        out.push_back({Word{w.vec & ~bit, w.form}, sign * s});
    }
    if (!(w.form & bit)) {
        int s = (std::popcount(w.vec) & 1) ? -1 : 1;
        s *= reorder_sign(w.form, j);
        out.push_back({Word{w.vec, w.form | bit}, sign * s});
    }
}

}  // namespace detail

// Product of two canonical words as a signed sum of canonical words.
inline std::vector<std::pair<Word, int>> word_mul(const Word& a, const Word& b) {
    std::vector<std::pair<Word, int>> cur = {{b, 1}};
    // generators of a applied right to left: form part first, then vec part
    for (int j = 31; j >= 0; --j) {
        if (!(a.form & (Mask(1) << j))) continue;
        std::vector<std::pair<Word, int>> next;
        for (const auto& [w, s] : cur) detail::mul_form_gen(j, w, s, next);
        cur = std::move(next);
    }
    for (int j = 31; j >= 0; --j) {
        if (!(a.vec & (Mask(1) << j))) continue;
        std::vector<std::pair<Word, int>> next;
        for (const auto& [w, s] : cur) detail::mul_vec_gen(j, w, s, next);
        cur = std::move(next);
    }
    return cur;
}

template <class R>
class CliffordElement {
  public:
    using Words = std::map<Word, R>;

    CliffordElement() : dim_(0) {}
    explicit CliffordElement(int dim) : dim_(dim) {}

    static CliffordElement zero(int dim) { return CliffordElement(dim); }
    static CliffordElement scalar(int dim, const R& c) {
        CliffordElement e(dim);
        e.add_term(Word{}, c);
        return e;
    }
    static CliffordElement one(int dim) {
        return scalar(dim, R::one(dim));
    }
    static CliffordElement vec_gen(int dim, int j, const R& c) {
        CliffordElement e(dim);
        e.add_term(Word{Mask(1) << j, 0}, c);
        return e;
    }
    static CliffordElement form_gen(int dim, int j, const R& c) {
        CliffordElement e(dim);
        e.add_term(Word{0, Mask(1) << j}, c);
        return e;
    }
    static CliffordElement word_elem(int dim, Word w, const R& c) {
        CliffordElement e(dim);
        e.add_term(w, c);
        return e;
    }
    // generator index a in [0, 2m): first the d_i then the dx^j
    static CliffordElement generator(int dim, int a, const R& c) {
        return a < dim ? vec_gen(dim, a, c) : form_gen(dim, a - dim, c);
    }

    int dim() const { return dim_; }
    const Words& words() const { return words_; }
    bool is_zero() const { return words_.empty(); }

    R coeff(const Word& w) const {
        auto it = words_.find(w);
        return it == words_.end() ? R::zero(dim_) : it->second;
    }

    void add_term(const Word& w, const R& c) {
        if (c.is_zero()) return;
        auto it = words_.find(w);
        if (it == words_.end()) {
            words_.emplace(w, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) words_.erase(it);
        }
    }

    void check_compat(const CliffordElement& o) const {
        if (dim_ != o.dim_) throw MixedRing("clifford dimension mismatch");
    }

    CliffordElement& operator+=(const CliffordElement& o) {
        check_compat(o);
        for (const auto& [w, c] : o.words_) add_term(w, c);
        return *this;
    }
    CliffordElement& operator-=(const CliffordElement& o) {
        check_compat(o);
        for (const auto& [w, c] : o.words_) add_term(w, -c);
        return *this;
    }
    friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) {
        return a += b;
    }
    friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) {
        return a -= b;
    }
    CliffordElement operator-() const {
        CliffordElement r(dim_);
        for (const auto& [w, c] : words_) r.words_[w] = -c;
        return r;
    }
    CliffordElement operator*(const Scalar& c) const {
        CliffordElement r(dim_);
        for (const auto& [w, v] : words_) r.add_term(w, v * c);
        return r;
    }
    CliffordElement operator*(const R& c) const
        requires(!std::is_same_v<R, Scalar>)
    {
        CliffordElement r(dim_);
        for (const auto& [w, v] : words_) r.add_term(w, v * c);
        return r;
    }

    friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
        return a.dim_ == b.dim_ && a.words_ == b.words_;
    }
    friend bool operator!=(const CliffordElement& a, const CliffordElement& b) {
        return !(a == b);
    }

    // filtration degree: max word length present (-1 for zero)
    int filtration_degree() const {
        int d = -1;
        for (const auto& [w, c] : words_) d = std::max(d, w.length());
        return d;
    }
    bool is_degree(int p) const {
        for (const auto& [w, c] : words_)
            if (w.length() != p) return false;
        return !words_.empty() || p == 0;
    }

    std::map<int, CliffordElement> grade_parts() const {
        std::map<int, CliffordElement> out;
        for (const auto& [w, c] : words_) {
            auto [it, fresh] = out.try_emplace(w.length(), dim_);
            it->second.add_term(w, c);
        }
        return out;
    }
    CliffordElement grade_part(int p) const {
        CliffordElement r(dim_);
        for (const auto& [w, c] : words_)
            if (w.length() == p) r.words_[w] = c;
        return r;
    }

    CliffordElement conj() const {
        CliffordElement r(dim_);
        for (const auto& [w, c] : words_) r.words_[w] = c.conj();
        return r;
    }
    bool is_real() const { return conj() == *this; }

    Rational l1() const {
        Rational n(0);
        for (const auto& [w, c] : words_) n += c.l1();
        return n;
    }

  private:
    int dim_;
    Words words_;
};

template <class R>
CliffordElement<R> clifford_mul(const CliffordElement<R>& a,
                                const CliffordElement<R>& b) {
    a.check_compat(b);
    CliffordElement<R> r(a.dim());
    for (const auto& [wa, ca] : a.words())
        for (const auto& [wb, cb] : b.words()) {
            R prod = ca * cb;
            if (prod.is_zero()) continue;
            for (const auto& [w, s] : word_mul(wa, wb))
                r.add_term(w, s > 0 ? prod : -prod);
        }
    return r;
}

template <class R>
CliffordElement<R> commutator(const CliffordElement<R>& a,
                              const CliffordElement<R>& b) {
    return clifford_mul(a, b) - clifford_mul(b, a);
}

template <class R>
CliffordElement<R> real_part(const CliffordElement<R>& a) {
    return (a + a.conj()) * Scalar(Rational(1, 2));
}

// <v+theta, w+eta> = theta(w)/2 + eta(v)/2 for degree-1 arguments.
template <class R>
R pairing(const CliffordElement<R>& a, const CliffordElement<R>& b) {
    a.check_compat(b);
    if (!a.is_degree(1) || !b.is_degree(1))
        throw DegreeError("pairing requires degree-1 elements");
    R s = R::zero(a.dim());
    for (const auto& [wa, ca] : a.words())
        for (const auto& [wb, cb] : b.words()) {
            if (wa.vec && wb.form && wa.vec == wb.form) s += ca * cb;
            if (wa.form && wb.vec && wa.form == wb.vec) s += ca * cb;
        }
    return s * Scalar(Rational(1, 2));
}

// spin representation: generators act by (v+theta).alpha = i_v alpha +
// theta ^ alpha, words act multiplicatively (leftmost generator last).
template <class R>
FormField<R> spin_word(int /*dim*/, const Word& w, FormField<R> alpha) {
    for (int j = 31; j >= 0; --j)
        if (w.form & (Mask(1) << j)) alpha = alpha.exterior(j);
    // vec part sits left of the form part, so it acts after, rightmost first
    for (int j = 31; j >= 0; --j)
        if (w.vec & (Mask(1) << j)) alpha = alpha.interior(j);
    return alpha;
}

template <class R>
FormField<R> spin_action(const CliffordElement<R>& a, const FormField<R>& alpha) {
    if (a.dim() != alpha.dim()) throw MixedRing("spin: dimension mismatch");
    FormField<R> out(alpha.dim());
    for (const auto& [w, c] : a.words()) {
        FormField<R> part = spin_word(a.dim(), w, alpha);
        out += part * c;
    }
    return out;
}

template <class To, class From>
CliffordElement<To> promote(const CliffordElement<From>& a, int dim) {
    CliffordElement<To> r(dim);
    for (const auto& [w, c] : a.words())
        r.add_term(w, To::constant(dim, c.constant_value()));
    return r;
}

// Clifford element with Scalar coefficients from a constant-coefficient one.
template <class R>
CliffordElement<R> from_scalar_words(int dim,
                                     const std::map<Word, Scalar>& words) {
    CliffordElement<R> r(dim);
    for (const auto& [w, c] : words) r.add_term(w, R::constant(dim, c));
    return r;
}

}  // namespace gk
