#pragma once

#include <random>
#include <stdexcept>

#include "slicealg/algebra.hpp"
#include "slicealg/builtin.hpp"
#include "slicealg/format.hpp"
#include "slicealg/slice.hpp"

namespace testutil {

using namespace slicealg;

inline QElement E(const AlgebraPtr& a, const std::string& s) { return parse_element(s, a); }

inline Rational small_rational(std::mt19937_64& rng, int num = 5, int den = 3) {
    std::uniform_int_distribution<int> n(-num, num), d(1, den);
    Rational q(n(rng), d(rng));
    q.canonicalize();  // GMP compares only canonical values correctly
    return q;
}

inline QElement random_element(std::mt19937_64& rng, const AlgebraPtr& a, int support = -1) {
    QElement x = QElement::zero(a);
    if (support < 0 || support >= a->dim()) {
        for (int i = 0; i < a->dim(); ++i) x[i] = small_rational(rng);
    } else {
        std::uniform_int_distribution<int> pick(0, a->dim() - 1);
        for (int s = 0; s < support; ++s) x[pick(rng)] = small_rational(rng);
    }
    return x;
}

inline PolyStem P(const AlgebraPtr& a, const std::string& s) { return parse_poly(s, a); }
inline SliceFunction<Rational> F(const AlgebraPtr& a, const std::string& s) { return SliceFunction<Rational>(parse_poly(s, a)); }

inline PolyStem random_poly(std::mt19937_64& rng, const AlgebraPtr& a, int max_degree, int support = -1) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::vector<QElement> c;
    const int n = deg(rng);
    for (int m = 0; m <= n; ++m) c.push_back(random_element(rng, a, support));
    return PolyStem(complexify(a), c);
}

// A random point alpha + beta*J of Q_A outside R, J a conjugate of a basis
// unit by an element of the central cone.
inline QElement random_sphere_point(std::mt19937_64& rng, const AlgebraPtr& a) {
    const auto& units = a->unit_basis();
    if (units.empty()) throw std::invalid_argument("random_sphere_point: S_A has no basis unit in " + a->name());
    std::uniform_int_distribution<int> pick(0, int(units.size()) - 1), pos(1, 4);
    for (;;) {
        QElement h = random_element(rng, a, 3);
        if (h.is_zero() || !cone_membership(h).in_CA || !a->is_associative()) h = QElement::one(a);
        const QElement u = QElement::basis(a, units[pick(rng)]);
        const QElement j = invert(h) * (u * h);
        if (!in_unit_sphere(j)) continue;
        return small_rational(rng) * QElement::one(a) + Rational(pos(rng)) / 2 * j;
    }
}

// c * prod (x - q_i) with q_i in Q_A and n(c) a nonzero real: tame in
// every compatible algebra. Roots are real when S_A has no basis unit.
inline PolyStem random_tame_poly(std::mt19937_64& rng, const AlgebraPtr& a, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    for (;;) {
        QElement c = random_element(rng, a, 2);
        const auto cr = cone_membership(c);
        if (c.is_zero() || !cr.in_NA) continue;
        PolyStem f = poly_constant(c);
        const int n = deg(rng);
        for (int i = 0; i < n; ++i) {
            const QElement q = a->unit_basis().empty() ? small_rational(rng) * QElement::one(a) : random_sphere_point(rng, a);
            f = poly_product(poly_linear(q), f);
        }
        if (is_tame(SliceFunction<Rational>(f))) return f;
    }
}

}  // namespace testutil
