#pragma once

#include <optional>

#include "slicealg/slice.hpp"

namespace slicealg {

// f^{-.} . g = N(f)^{-.} . (f^c . g), kept symbolic and evaluated pointwise.
template <class S>
struct Quotient {
    SliceFunction<S> numerator_conj;  // f^c
    SliceFunction<S> normal;          // N(f), slice preserving
    std::optional<SliceFunction<S>> right;  // g, absent for the plain reciprocal
};

template <class S>
void require_tame(const SliceFunction<S>& f) {
    if (!is_tame(f)) throw NotTame("function is not tame: N(f) is not slice preserving or differs from N(f^c)");
}

template <class S>
void require_associative(const AlgebraSpec& a, const char* op) {
    if (!a.is_associative()) throw NotAssociative(std::string(op) + " needs an associative algebra; " + a.name() + " is not");
}

template <class S>
Quotient<S> make_quotient(const SliceFunction<S>& f, std::optional<SliceFunction<S>> g = std::nullopt) {
    require_tame(f);
    if (g && g->algebra() != f.algebra()) throw AlgebraMismatch("quotient of functions over different algebras");
    return Quotient<S>{slice_conjugate(f), normal(f), std::move(g)};
}

// N(f)(x)^{-1}, with OnZeroSetOfNormal when x lies in V(N(f)).
template <class S>
Element<S> normal_inverse_at(const SliceFunction<S>& nf, const Element<S>& x) {
    const Element<S> n = evaluate(nf, x);
    auto inv = try_invert(n);
    if (!inv) throw OnZeroSetOfNormal("x lies on the zero set of N(f)");
    return *inv;
}

template <class S>
Element<S> evaluate(const Quotient<S>& q, const Element<S>& x) {
    const Element<S> ninv = normal_inverse_at(q.normal, x);
    // N(f) is slice preserving, so N(f)^{-.} . h evaluates to N(f)(x)^{-1} h(x).
    if (!q.right) return ninv * evaluate(q.numerator_conj, x);
    return ninv * evaluate(slice_product(q.numerator_conj, *q.right), x);
}

// f^{-.}(x) = N(f)(x)^{-1} f^c(x).
template <class S>
Element<S> reciprocal_eval(const SliceFunction<S>& f, const Element<S>& x) {
    return evaluate(make_quotient(f), x);
}

// T_f(x) = f^c(x)^{-1} x f^c(x).
template <class S>
Element<S> t_map(const SliceFunction<S>& f, const Element<S>& x) {
    require_associative<S>(x.algebra(), "t_map");
    require_tame(f);
    const Element<S> fc = evaluate(slice_conjugate(f), x);
    auto inv = try_invert(fc);
    if (!inv) throw NotInvertible("t_map: f^c(x) is not invertible");
    return *inv * x * fc;
}

// (f^{-.} . g)(x) = f(T_f(x))^{-1} g(T_f(x)).
template <class S>
Element<S> quotient_eval(const SliceFunction<S>& f, const SliceFunction<S>& g, const Element<S>& x) {
    require_associative<S>(x.algebra(), "quotient_eval");
    require_tame(f);
    normal_inverse_at(normal(f), x);
    const Element<S> y = t_map(f, x);
    auto inv = try_invert(evaluate(f, y));
    if (!inv) throw NotInvertible("quotient_eval: f(T_f(x)) is not invertible");
    return *inv * evaluate(g, y);
}

// (f.g)(x) = f(x) g(f(x)^{-1} x f(x)).
template <class S>
Element<S> product_pointwise(const SliceFunction<S>& f, const SliceFunction<S>& g, const Element<S>& x) {
    require_associative<S>(x.algebra(), "product_pointwise");
    require_tame(f);
    const Element<S> fx = evaluate(f, x);
    auto inv = try_invert(fx);
    if (!inv) throw NotInvertible("product_pointwise: f(x) is not invertible; use slice_product");
    return fx * evaluate(g, *inv * x * fx);
}

}  // namespace slicealg
