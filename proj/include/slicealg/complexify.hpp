#pragma once

#include <memory>

#include "slicealg/algebra.hpp"

namespace slicealg {

// A_C = A + iota A materialized as an algebra of dimension 2d with basis
// e_0..e_{d-1}, iota e_0..iota e_{d-1} (names prefixed with "I").
class ComplexifiedSpec {
public:
    ComplexifiedSpec(AlgebraPtr base, AlgebraPtr derived) : base_(std::move(base)), derived_(std::move(derived)) {}

    const AlgebraPtr& base() const { return base_; }
    const AlgebraPtr& derived() const { return derived_; }
    int base_dim() const { return base_->dim(); }

    template <class S>
    Element<S> make(const Element<S>& re, const Element<S>& im) const {
        check_base(re);
        check_base(im);
        const int d = base_dim();
        std::vector<S> c(2 * d);
        for (int i = 0; i < d; ++i) {
            c[i] = re[i];
            c[d + i] = im[i];
        }
        return Element<S>(derived_, std::move(c));
    }
    template <class S>
    Element<S> embed(const Element<S>& x) const {
        return make(x, Element<S>::zero(base_));
    }
    template <class S>
    Element<S> part_re(const Element<S>& z) const {
        check_derived(z);
        return Element<S>(base_, std::vector<S>(z.coeffs().begin(), z.coeffs().begin() + base_dim()));
    }
    template <class S>
    Element<S> part_im(const Element<S>& z) const {
        check_derived(z);
        return Element<S>(base_, std::vector<S>(z.coeffs().begin() + base_dim(), z.coeffs().end()));
    }
    template <class S>
    Element<S> iota() const {
        return Element<S>::basis(derived_, base_dim());
    }
    // (x + iota y)^c = x^c + iota y^c
    template <class S>
    Element<S> c_involution(const Element<S>& z) const {
        check_derived(z);
        return conj(z);
    }
    // x + iota y -> x - iota y
    template <class S>
    Element<S> complex_conj(const Element<S>& z) const {
        check_derived(z);
        Element<S> out = z;
        for (int i = base_dim(); i < 2 * base_dim(); ++i) out[i] = -out[i];
        return out;
    }

private:
    template <class S>
    void check_base(const Element<S>& x) const {
        if (x.algebra_ptr() != base_) throw AlgebraMismatch("element is not in the base algebra " + base_->name());
    }
    template <class S>
    void check_derived(const Element<S>& z) const {
        if (z.algebra_ptr() != derived_) throw AlgebraMismatch("element is not in " + derived_->name());
    }

    AlgebraPtr base_, derived_;
};

using ComplexifiedPtr = std::shared_ptr<const ComplexifiedSpec>;

// Cached per base algebra. Throws DomainError if the base is not alternative.
ComplexifiedPtr complexify(const AlgebraPtr& base);

}  // namespace slicealg
