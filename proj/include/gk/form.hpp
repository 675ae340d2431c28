#pragma once

// Differential forms on the flat model: elements of Lambda^* T^* (x) C with
// coefficients in a flat-model ring. A form is a sparse map from a basis
// subset mask of {dx^1..dx^m} to a ring element.

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "gk/coeff_ring.hpp"
#include "gk/errors.hpp"
#include "gk/linalg.hpp"

namespace gk {

using Mask = uint32_t;

// sign of moving generator j past the generators of mask below it:
// (-1)^{#{s in mask : s < j}}   (j, s are 0-based indices)
inline int reorder_sign(Mask mask, int j) {
    Mask below = mask & ((Mask(1) << j) - 1);
    return (std::popcount(below) & 1) ? -1 : 1;
}

template <class R>
class FormField {
  public:
    using Parts = std::map<Mask, R>;

    FormField() : dim_(0) {}
    explicit FormField(int dim) : dim_(dim) {}

    static FormField zero(int dim) { return FormField(dim); }
    static FormField scalar(int dim, const R& c) {
        FormField f(dim);
        f.add_term(0, c);
        return f;
    }
    // dx^{i1} ^ ... ^ dx^{ik} for 0-based strictly increasing indices in mask
    static FormField basis(int dim, Mask mask, const R& c) {
        FormField f(dim);
        f.add_term(mask, c);
        return f;
    }

    int dim() const { return dim_; }
    const Parts& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }

    R coeff(Mask mask) const {
        auto it = parts_.find(mask);
        return it == parts_.end() ? R::zero(dim_) : it->second;
    }

    void add_term(Mask mask, const R& c) {
        if (c.is_zero()) return;
        auto it = parts_.find(mask);
        if (it == parts_.end()) {
            parts_.emplace(mask, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    void check_compat(const FormField& o) const {
        if (dim_ != o.dim_) throw MixedRing("form dimension mismatch");
    }

    FormField& operator+=(const FormField& o) {
        check_compat(o);
        for (const auto& [m, c] : o.parts_) add_term(m, c);
        return *this;
    }
    FormField& operator-=(const FormField& o) {
        check_compat(o);
        for (const auto& [m, c] : o.parts_) add_term(m, -c);
        return *this;
    }
    friend FormField operator+(FormField a, const FormField& b) { return a += b; }
    friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
    FormField operator-() const {
        FormField r(dim_);
        for (const auto& [m, c] : parts_) r.parts_[m] = -c;
        return r;
    }
    FormField operator*(const Scalar& c) const {
        FormField r(dim_);
        for (const auto& [m, v] : parts_) r.add_term(m, v * c);
        return r;
    }
    FormField operator*(const R& c) const
        requires(!std::is_same_v<R, Scalar>)
    {
        FormField r(dim_);
        for (const auto& [m, v] : parts_) r.add_term(m, v * c);
        return r;
    }

    friend bool operator==(const FormField& a, const FormField& b) {
        return a.dim_ == b.dim_ && a.parts_ == b.parts_;
    }
    friend bool operator!=(const FormField& a, const FormField& b) {
        return !(a == b);
    }

    FormField wedge(const FormField& o) const {
        check_compat(o);
        FormField r(dim_);
        for (const auto& [ma, ca] : parts_)
            for (const auto& [mb, cb] : o.parts_) {
                if (ma & mb) continue;
                // sign of interleaving: move each generator of mb past the
                // generators of ma that are greater than it
                int sign = 1;
                Mask bb = mb;
                while (bb) {
                    int j = std::countr_zero(bb);
                    bb &= bb - 1;
                    Mask above = ma & ~((Mask(2) << j) - 1);
                    if (std::popcount(above) & 1) sign = -sign;
                }
                r.add_term(ma | mb, sign > 0 ? ca * cb : -(ca * cb));
            }
        return r;
    }

    // interior product with the coordinate vector field d/dx_j (0-based)
    FormField interior(int j) const {
        FormField r(dim_);
        Mask bit = Mask(1) << j;
        for (const auto& [m, c] : parts_) {
            if (!(m & bit)) continue;
            int sign = reorder_sign(m, j);
            r.add_term(m & ~bit, sign > 0 ? c : -c);
        }
        return r;
    }

    // exterior product dx^j ^ (this)
    FormField exterior(int j) const {
        FormField r(dim_);
        Mask bit = Mask(1) << j;
        for (const auto& [m, c] : parts_) {
            if (m & bit) continue;
            int sign = reorder_sign(m, j);
            r.add_term(m | bit, sign > 0 ? c : -c);
        }
        return r;
    }

    FormField degree_part(int p) const {
        FormField r(dim_);
        for (const auto& [m, c] : parts_)
            if (std::popcount(m) == p) r.parts_[m] = c;
        return r;
    }
    int min_degree() const {
        int d = -1;
        for (const auto& [m, c] : parts_) {
            int p = std::popcount(m);
            if (d < 0 || p < d) d = p;
        }
        return d;  // -1 for the zero form
    }
    int max_degree() const {
        int d = -1;
        for (const auto& [m, c] : parts_) d = std::max(d, (int)std::popcount(m));
        return d;
    }

    FormField conj() const {
        FormField r(dim_);
        for (const auto& [m, c] : parts_) r.parts_[m] = c.conj();
        return r;
    }

    bool is_constant() const {
        for (const auto& [m, c] : parts_)
            if (!c.is_constant()) return false;
        return true;
    }

    // exterior derivative; Leibniz over the coefficient ring, d o d = 0
    FormField d() const {
        FormField r(dim_);
        for (const auto& [m, c] : parts_)
            for (int j = 0; j < dim_; ++j) {
                R dc = c.partial(j);
                if (dc.is_zero()) continue;
                Mask bit = Mask(1) << j;
                if (m & bit) continue;
                int sign = reorder_sign(m, j);
                r.add_term(m | bit, sign > 0 ? dc : -dc);
            }
        return r;
    }

    // the form as a 2^m coefficient vector (dense, for per-mode linear algebra)
    std::vector<R> dense() const {
        std::vector<R> v(size_t(1) << dim_, R::zero(dim_));
        for (const auto& [m, c] : parts_) v[m] = c;
        return v;
    }
    static FormField from_dense(int dim, const std::vector<R>& v) {
        FormField f(dim);
        for (Mask m = 0; m < v.size(); ++m) f.add_term(m, v[m]);
        return f;
    }

    Rational l1() const {
        Rational n(0);
        for (const auto& [m, c] : parts_) n += c.l1();
        return n;
    }

  private:
    int dim_;
    Parts parts_;
};

// Constant-coefficient extraction: the Scalar coefficient vector of a form
// whose ring entries are all constants.
template <class R>
std::vector<Scalar> constant_dense(const FormField<R>& f) {
    std::vector<Scalar> v(size_t(1) << f.dim(), Scalar(0));
    for (const auto& [m, c] : f.parts()) v[m] = c.constant_value();
    return v;
}

template <class R>
FormField<R> form_from_scalar_dense(int dim, const std::vector<Scalar>& v) {
    FormField<R> f(dim);
    for (Mask m = 0; m < v.size(); ++m)
        if (!(v[m] == Scalar(0))) f.add_term(m, R::constant(dim, v[m]));
    return f;
}

}  // namespace gk
