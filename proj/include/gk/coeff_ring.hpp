#pragma once

// The two flat-model coefficient rings behind one sparse-map template:
//
//   TrigPoly   - finite Fourier sums  sum_k c_k e^{i<k,x>}  on a torus,
//                keys are mode vectors in Z^m;
//   AffinePoly - polynomials in real chart coordinates x_1..x_m,
//                keys are multi-exponents in N^m.
//
// Both are commutative rings over Gaussian rationals with exact arithmetic,
// conjugation, partial derivatives and evaluation.

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "gk/errors.hpp"
#include "gk/scalar.hpp"

namespace gk {

using Key = std::vector<int>;

struct TrigModel {
    static constexpr const char* name = "trig";
    static Key conj_key(const Key& k) {
        Key r(k.size());
        for (size_t j = 0; j < k.size(); ++j) r[j] = -k[j];
        return r;
    }
    static bool valid_key(const Key&) { return true; }
    // d/dx_j of c e^{i<k,x>} stays on the same key, scaled by i k_j.
    static std::pair<Key, Scalar> partial(int j, const Key& k, const Scalar& c) {
        return {k, c * Scalar(Rational(0), Rational(k[j]))};
    }
    static std::complex<double> basis_at(const Key& k,
                                         const std::vector<double>& x) {
        double phase = 0;
        for (size_t j = 0; j < k.size(); ++j) phase += k[j] * x[j];
        return std::complex<double>(std::cos(phase), std::sin(phase));
    }
    static bool exact_at(const Key& k, const std::vector<Rational>& x) {
        // e^{i<k,x>} is rational only when the phase vanishes.
        Rational phase(0);
        for (size_t j = 0; j < k.size(); ++j) phase += Rational(k[j]) * x[j];
        return phase == 0;
    }
    static Scalar basis_exact(const Key&, const std::vector<Rational>&) {
        return Scalar(1);  // only called when exact_at holds
    }
};

struct AffineModel {
    static constexpr const char* name = "affine";
    static Key conj_key(const Key& k) { return k; }
    static bool valid_key(const Key& k) {
        for (int e : k)
            if (e < 0) return false;
        return true;
    }
    static std::pair<Key, Scalar> partial(int j, const Key& k, const Scalar& c) {
        if (k[j] == 0) return {k, Scalar(0)};
        Key r = k;
        r[j] -= 1;
        return {r, c * Scalar(Rational(k[j]))};
    }
    static std::complex<double> basis_at(const Key& k,
                                         const std::vector<double>& x) {
        double v = 1;
        for (size_t j = 0; j < k.size(); ++j)
            for (int e = 0; e < k[j]; ++e) v *= x[j];
        return v;
    }
    static bool exact_at(const Key&, const std::vector<Rational>&) {
        return true;
    }
    static Scalar basis_exact(const Key& k, const std::vector<Rational>& x) {
        Rational v(1);
        for (size_t j = 0; j < k.size(); ++j)
            for (int e = 0; e < k[j]; ++e) v *= x[j];
        return Scalar(v);
    }
};

template <class Model>
class SparseRing {
  public:
    using Terms = std::map<Key, Scalar>;

    SparseRing() : dim_(0) {}
    explicit SparseRing(int dim) : dim_(dim) {}
    SparseRing(int dim, const Scalar& c) : dim_(dim) {
        if (!c.is_zero()) terms_[Key(dim, 0)] = c;
    }

    static SparseRing zero(int dim) { return SparseRing(dim); }
    static SparseRing one(int dim) { return SparseRing(dim, Scalar(1)); }
    static SparseRing constant(int dim, const Scalar& c) {
        return SparseRing(dim, c);
    }
    static SparseRing monomial(int dim, Key k, const Scalar& c = Scalar(1)) {
        SparseRing r(dim);
        if (!Model::valid_key(k)) throw Error("invalid ring key");
        if ((int)k.size() != dim) throw MixedRing("key size != ring dim");
        if (!c.is_zero()) r.terms_[std::move(k)] = c;
        return r;
    }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        return terms_.size() == 1 && terms_.begin()->first == Key(dim_, 0);
    }
    Scalar constant_value() const {
        if (terms_.empty()) return Scalar(0);
        auto it = terms_.find(Key(dim_, 0));
        if (it == terms_.end() || terms_.size() != 1)
            throw Error("ring element is not constant");
        return it->second;
    }

    Scalar coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void check_compat(const SparseRing& o) const {
        if (dim_ != o.dim_) throw MixedRing("coefficient ring dim mismatch");
    }

    SparseRing& operator+=(const SparseRing& o) {
        check_compat(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    SparseRing& operator-=(const SparseRing& o) {
        check_compat(o);
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend SparseRing operator+(SparseRing a, const SparseRing& b) {
        return a += b;
    }
    friend SparseRing operator-(SparseRing a, const SparseRing& b) {
        return a -= b;
    }
    SparseRing operator-() const {
        SparseRing r(dim_);
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }

    friend SparseRing operator*(const SparseRing& a, const SparseRing& b) {
        a.check_compat(b);
        SparseRing r(a.dim_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Key k(a.dim_);
                for (int j = 0; j < a.dim_; ++j) k[j] = ka[j] + kb[j];
                r.add_term(k, ca * cb);
            }
        return r;
    }
    SparseRing& operator*=(const SparseRing& o) { return *this = *this * o; }

    SparseRing operator*(const Scalar& c) const {
        SparseRing r(dim_);
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms_) r.terms_[k] = v * c;
        return r;
    }

    friend bool operator==(const SparseRing& a, const SparseRing& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SparseRing& a, const SparseRing& b) {
        return !(a == b);
    }

    SparseRing conj() const {
        SparseRing r(dim_);
        for (const auto& [k, c] : terms_) r.add_term(Model::conj_key(k), c.conj());
        return r;
    }

    bool real_valued() const { return conj() == *this; }

    SparseRing partial(int j) const {
        SparseRing r(dim_);
        for (const auto& [k, c] : terms_) {
            auto [k2, c2] = Model::partial(j, k, c);
            r.add_term(k2, c2);
        }
        return r;
    }

    Scalar eval_zero() const {
        Scalar s(0);
        for (const auto& [k, c] : terms_) {
            if constexpr (std::is_same_v<Model, TrigModel>) {
                s += c;  // e^{i<k,0>} = 1
            } else {
                if (k == Key(dim_, 0)) s += c;
            }
        }
        return s;
    }

    std::complex<double> eval_point(const std::vector<double>& x) const {
        std::complex<double> s(0, 0);
        for (const auto& [k, c] : terms_)
            s += std::complex<double>(c.re_d(), c.im_d()) * Model::basis_at(k, x);
        return s;
    }

    // Exact evaluation at a rational point; throws EvaluationError where the
    // basis functions are not rational there.
    Scalar eval_rational(const std::vector<Rational>& x) const {
        Scalar s(0);
        for (const auto& [k, c] : terms_) {
            if (!Model::exact_at(k, x))
                throw EvaluationError("non-exact evaluation point");
            s += c * Model::basis_exact(k, x);
        }
        return s;
    }

    // Coefficientwise l1 norm surrogate.
    Rational l1() const {
        Rational n(0);
        for (const auto& [k, c] : terms_) n += c.l1();
        return n;
    }

    // max |key|_inf over the support
    int support_radius() const {
        int r = 0;
        for (const auto& [k, c] : terms_)
            for (int e : k) r = std::max(r, e < 0 ? -e : e);
        return r;
    }

  private:
    void add_term(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int dim_;
    Terms terms_;
};

using TrigPoly = SparseRing<TrigModel>;
using AffinePoly = SparseRing<AffineModel>;

}  // namespace gk
