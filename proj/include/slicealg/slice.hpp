#pragma once

#include <functional>
#include <random>
#include <utility>
#include <variant>

#include "slicealg/complexify.hpp"

namespace slicealg {

// The sphere S_x = alpha + beta*S_A, stored through beta^2 so that spheres
// coming from irreducible real quadratics stay exact.
template <class S>
struct SphereRef {
    S alpha;
    S beta_sq;

    static SphereRef from_alpha_beta(const S& alpha, const S& beta) { return {alpha, beta * beta}; }
    bool is_real() const { return ScalarTraits<S>::is_zero(beta_sq); }
    // beta itself, when it is representable in S.
    std::optional<S> beta() const { return ScalarTraits<S>::sqrt(beta_sq); }
};

template <class S>
SphereRef<S> sphere_of(const Element<S>& x) {
    auto q = quadratic_parts(x);
    return {q.alpha, q.beta_sq};
}

// F(z) = sum z^m a_m with a_m in A. Coefficients are always exact; float
// evaluation converts them on the fly.
struct PolyStem {
    ComplexifiedPtr cx;
    std::vector<QElement> coeffs;

    PolyStem(ComplexifiedPtr c, std::vector<QElement> a);
    const AlgebraPtr& algebra() const { return cx->base(); }
    int degree() const { return int(coeffs.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return coeffs.empty(); }
    QElement coeff(int m) const { return m < int(coeffs.size()) ? coeffs[m] : QElement::zero(algebra()); }
};

PolyStem poly_constant(const QElement& a);
PolyStem poly_x(const AlgebraPtr& a);      // f(x) = x
PolyStem poly_linear(const QElement& y);   // f(x) = x - y
PolyStem poly_add(const PolyStem& f, const PolyStem& g);
PolyStem poly_sub(const PolyStem& f, const PolyStem& g);
PolyStem poly_product(const PolyStem& f, const PolyStem& g);  // coefficient convolution
PolyStem poly_conjugate(const PolyStem& f);
bool operator==(const PolyStem& f, const PolyStem& g);
// Real coefficients of a slice preserving polynomial; nullopt otherwise.
std::optional<std::vector<Rational>> real_coefficients(const PolyStem& f);
std::string format_poly(const PolyStem& f);

// Metadata only: the domain kind is supplied by whoever builds the stem.
enum class DomainKind { Slice, Product };

template <class S>
struct CallableStem {
    using Value = std::pair<Element<S>, Element<S>>;  // (F1, F2)
    ComplexifiedPtr cx;
    // Must be pure and reentrant.
    std::function<Value(const S& alpha, const S& beta)> evaluator;
    std::function<bool(double alpha, double beta)> domain;  // empty = everywhere
    DomainKind kind = DomainKind::Slice;
    std::string label = "callable";

    const AlgebraPtr& algebra() const { return cx->base(); }
    bool contains(double alpha, double beta) const { return !domain || domain(alpha, beta); }
};

template <class S>
class SliceFunction {
public:
    SliceFunction(PolyStem p) : stem_(std::move(p)) {}
    SliceFunction(CallableStem<S> c) : stem_(std::move(c)) {}

    bool is_poly() const { return std::holds_alternative<PolyStem>(stem_); }
    const PolyStem& poly() const { return std::get<PolyStem>(stem_); }
    const CallableStem<S>& callable() const { return std::get<CallableStem<S>>(stem_); }
    const ComplexifiedPtr& complexified() const { return is_poly() ? poly().cx : callable().cx; }
    const AlgebraPtr& algebra() const { return complexified()->base(); }

    bool contains(double alpha, double beta) const { return is_poly() || callable().contains(alpha, beta); }

    // (F1, F2) at z = alpha + i*beta.
    typename CallableStem<S>::Value stem(const S& alpha, const S& beta) const;
    // (v_s f, f'_s) on the sphere; v_s f = F1(z), f'_s = F2(z)/beta.
    std::pair<Element<S>, Element<S>> spherical_parts(const SphereRef<S>& s) const;

private:
    std::variant<PolyStem, CallableStem<S>> stem_;
};

namespace detail {

// z^m = P_m + i*beta*Q_m for z = alpha + i*beta; returns (sum P_m a_m, sum Q_m a_m).
template <class S>
std::pair<Element<S>, Element<S>> poly_sphere_sums(const PolyStem& p, const S& alpha, const S& beta_sq) {
    const auto& a = p.algebra();
    Element<S> v = Element<S>::zero(a), d = Element<S>::zero(a);
    S P = 1, Q = 0;
    for (const auto& c : p.coeffs) {
        const Element<S> cm = convert<S>(c);
        if (!detail::exactly_zero(P)) v += P * cm;
        if (!detail::exactly_zero(Q)) d += Q * cm;
        S P2 = alpha * P - beta_sq * Q;
        S Q2 = P + alpha * Q;
        P = std::move(P2);
        Q = std::move(Q2);
    }
    return {v, d};
}

template <class S>
S exact_beta(const SphereRef<S>& s) {
    auto b = s.beta();
    if (!b) throw DomainError("beta = sqrt(" + ScalarTraits<S>::str(s.beta_sq) + ") is not representable; use float mode");
    return *b;
}

}  // namespace detail

template <class S>
typename CallableStem<S>::Value SliceFunction<S>::stem(const S& alpha, const S& beta) const {
    if (is_poly()) {
        auto [v, d] = detail::poly_sphere_sums(poly(), alpha, S(beta * beta));
        return {v, d * beta};
    }
    const auto& c = callable();
    if (!c.contains(ScalarTraits<S>::to_double(alpha), ScalarTraits<S>::to_double(beta)))
        throw DomainError("point outside the stem domain");
    return c.evaluator(alpha, beta);
}

template <class S>
std::pair<Element<S>, Element<S>> SliceFunction<S>::spherical_parts(const SphereRef<S>& s) const {
    if (is_poly()) return detail::poly_sphere_sums(poly(), s.alpha, s.beta_sq);
    if (s.is_real()) throw DomainError("spherical derivative is undefined at real points");
    const S beta = detail::exact_beta(s);
    auto [f1, f2] = stem(s.alpha, beta);
    return {f1, f2 * (S(1) / beta)};
}

template <class S>
Element<S> evaluate(const SliceFunction<S>& f, const Element<S>& x) {
    if (x.algebra_ptr() != f.algebra()) throw AlgebraMismatch("evaluation point is not in " + f.algebra()->name());
    if (!in_quadratic_cone(x)) throw DomainError("evaluation point is not in the quadratic cone");
    if (f.is_poly()) {
        // Powers of x are unambiguous by power-associativity.
        const auto& p = f.poly();
        Element<S> sum = Element<S>::zero(f.algebra());
        Element<S> pw = Element<S>::one(f.algebra());
        for (std::size_t m = 0; m < p.coeffs.size(); ++m) {
            if (m > 0) pw = pw * x;
            if (!p.coeffs[m].is_zero()) sum += pw * convert<S>(p.coeffs[m]);
        }
        return sum;
    }
    const auto q = quadratic_parts(x);
    if (x.is_real()) return f.stem(q.alpha, S(0)).first;
    const S beta = detail::exact_beta(SphereRef<S>{q.alpha, q.beta_sq});
    auto [f1, f2] = f.stem(q.alpha, beta);
    return f1 + im(x) * (f2 * (S(1) / beta));
}

template <class S>
Element<S> spherical_value(const SliceFunction<S>& f, const Element<S>& x) {
    return (evaluate(f, x) + evaluate(f, conj(x))) * ScalarTraits<S>::from(Rational(1, 2));
}

template <class S>
Element<S> spherical_derivative(const SliceFunction<S>& f, const Element<S>& x) {
    if (!in_quadratic_cone(x)) throw DomainError("evaluation point is not in the quadratic cone");
    if (x.is_real()) throw DomainError("spherical derivative is undefined at real points");
    return invert(im(x)) * (evaluate(f, x) - evaluate(f, conj(x))) * ScalarTraits<S>::from(Rational(1, 2));
}

// Poly stems viewed as callables, for mixed operations.
template <class S>
CallableStem<S> as_callable(const SliceFunction<S>& f) {
    if (!f.is_poly()) return f.callable();
    CallableStem<S> c;
    c.cx = f.complexified();
    c.label = format_poly(f.poly());
    c.evaluator = [f](const S& alpha, const S& beta) { return f.stem(alpha, beta); };
    return c;
}

template <class S>
SliceFunction<S> slice_conjugate(const SliceFunction<S>& f) {
    if (f.is_poly()) return SliceFunction<S>(poly_conjugate(f.poly()));
    CallableStem<S> c = f.callable();
    auto inner = c.evaluator;
    c.evaluator = [inner](const S& alpha, const S& beta) {
        auto [f1, f2] = inner(alpha, beta);
        return typename CallableStem<S>::Value{conj(f1), conj(f2)};
    };
    c.label = "(" + c.label + ")^c";
    return SliceFunction<S>(std::move(c));
}

namespace detail {
inline bool sample_domain_overlap(const std::function<bool(double, double)>& a,
                                  const std::function<bool(double, double)>& b) {
    for (int i = -8; i <= 8; ++i)
        for (int j = -8; j <= 8; ++j) {
            const double al = i * 0.5, be = j * 0.5;
            if ((!a || a(al, be)) && (!b || b(al, be))) return true;
        }
    return false;
}
}  // namespace detail

template <class S>
SliceFunction<S> slice_product(const SliceFunction<S>& f, const SliceFunction<S>& g) {
    if (f.algebra() != g.algebra()) throw AlgebraMismatch("slice_product: functions over different algebras");
    if (f.is_poly() && g.is_poly()) return SliceFunction<S>(poly_product(f.poly(), g.poly()));
    CallableStem<S> cf = as_callable(f), cg = as_callable(g);
    if (!detail::sample_domain_overlap(cf.domain, cg.domain))
        throw DomainError("slice_product: stem domains do not intersect");
    CallableStem<S> c;
    c.cx = f.complexified();
    c.kind = (cf.kind == DomainKind::Product || cg.kind == DomainKind::Product) ? DomainKind::Product : DomainKind::Slice;
    c.label = "(" + cf.label + ")*(" + cg.label + ")";
    if (cf.domain || cg.domain) {
        auto da = cf.domain, db = cg.domain;
        c.domain = [da, db](double al, double be) { return (!da || da(al, be)) && (!db || db(al, be)); };
    }
    // Pointwise stem product in A_C.
    auto cx = c.cx;
    auto ef = cf.evaluator, eg = cg.evaluator;
    c.evaluator = [cx, ef, eg](const S& alpha, const S& beta) {
        auto [f1, f2] = ef(alpha, beta);
        auto [g1, g2] = eg(alpha, beta);
        Element<S> prod = cx->make(f1, f2) * cx->make(g1, g2);
        return typename CallableStem<S>::Value{cx->part_re(prod), cx->part_im(prod)};
    };
    return SliceFunction<S>(std::move(c));
}

template <class S>
SliceFunction<S> normal(const SliceFunction<S>& f) {
    return slice_product(f, slice_conjugate(f));
}

namespace detail {
// Deterministic sample grid (alpha, beta) with beta > 0 inside the domain.
template <class S>
std::vector<std::pair<S, S>> sample_points(const CallableStem<S>& c, int count = 64) {
    std::mt19937_64 rng(sampling_seed());
    std::uniform_int_distribution<int> num(-16, 16), den(1, 8), pos(1, 16);
    std::vector<std::pair<S, S>> pts;
    for (int tries = 0; int(pts.size()) < count && tries < 50 * count; ++tries) {
        const Rational a(num(rng), den(rng)), b(pos(rng), den(rng));
        if (!c.contains(a.get_d(), b.get_d())) continue;
        pts.emplace_back(ScalarTraits<S>::from(a), ScalarTraits<S>::from(b));
    }
    return pts;
}
}  // namespace detail

// Exact for poly stems; callables are judged on a sample grid (heuristic).
template <class S>
bool is_slice_preserving(const SliceFunction<S>& f) {
    if (f.is_poly()) return real_coefficients(f.poly()).has_value();
    for (auto [a, b] : detail::sample_points(f.callable())) {
        auto [f1, f2] = f.stem(a, b);
        if (!f1.is_real() || !f2.is_real()) return false;
    }
    return true;
}

template <class S>
bool is_heuristic_verdict(const SliceFunction<S>& f) {
    return !f.is_poly();
}

template <class S>
bool is_tame(const SliceFunction<S>& f) {
    if (f.is_poly()) {
        PolyStem n = poly_product(f.poly(), poly_conjugate(f.poly()));
        PolyStem nc = poly_product(poly_conjugate(f.poly()), f.poly());
        return real_coefficients(n).has_value() && n == nc;
    }
    auto n = normal(f), nc = normal(slice_conjugate(f));
    for (auto [a, b] : detail::sample_points(f.callable())) {
        auto [n1, n2] = n.stem(a, b);
        auto [m1, m2] = nc.stem(a, b);
        if (!n1.is_real() || !n2.is_real() || n1 != m1 || n2 != m2) return false;
    }
    return true;
}

// Checks F(conj z) = conj F(z) on the sample grid.
template <class S>
bool stem_symmetry_holds(const CallableStem<S>& c) {
    for (auto [a, b] : detail::sample_points(c)) {
        if (!c.contains(ScalarTraits<S>::to_double(a), -ScalarTraits<S>::to_double(b))) return false;
        auto [f1, f2] = c.evaluator(a, b);
        auto [g1, g2] = c.evaluator(a, S(-b));
        if (f1 != g1 || f2 != -g2) return false;
    }
    return true;
}

// Value at alpha + beta*I forced by the values at y = alpha + beta*J and
// z = alpha + beta*K:
//   f(x) = (I-K)((J-K)^{-1} f(y)) - (I-J)((J-K)^{-1} f(z)).
template <class S>
Element<S> rep_two_points(const Element<S>& fy, const Element<S>& y, const Element<S>& fz, const Element<S>& z,
                          const Element<S>& I) {
    if (!in_quadratic_cone(y) || !in_quadratic_cone(z)) throw DomainError("rep_two_points: points not in Q_A");
    if (!in_unit_sphere(I)) throw DomainError("rep_two_points: target is not in S_A");
    const auto py = quadratic_parts(y), pz = quadratic_parts(z);
    if (!ScalarTraits<S>::is_zero(py.alpha - pz.alpha) || !ScalarTraits<S>::is_zero(py.beta_sq - pz.beta_sq))
        throw DomainError("rep_two_points: y and z lie on different spheres");
    if (ScalarTraits<S>::is_zero(py.beta_sq)) throw DomainError("rep_two_points: real points carry no sphere data");
    const S beta = detail::exact_beta(SphereRef<S>{py.alpha, py.beta_sq});
    const S inv_beta = S(1) / beta;
    const Element<S> J = im(y) * inv_beta, K = im(z) * inv_beta;
    auto jk_inv = try_invert(J - K);
    if (!jk_inv) throw NotInvertible("rep_two_points: J - K is not invertible");
    return (I - K) * (*jk_inv * fy) - (I - J) * (*jk_inv * fz);
}

enum class ProductMode { General, Associative };

// (f.g)(x) from values of f and g only:
//   general:     f(x) v_s g(x) + im(x)(f(x) g'_s(x)) - (im(x), f'_s(x), g(x^c))
//   associative: f(x) v_s g(x) + im(x) f(x) g'_s(x)
template <class S>
Element<S> product_eval_formula(const SliceFunction<S>& f, const SliceFunction<S>& g, const Element<S>& x,
                                ProductMode mode) {
    if (!in_quadratic_cone(x) || x.is_real()) throw DomainError("product_eval_formula needs x in Q_A outside R");
    if (mode == ProductMode::Associative && !x.algebra().is_associative())
        throw NotAssociative("associative product formula requested over " + x.algebra().name());
    const Element<S> fx = evaluate(f, x), ix = im(x);
    const Element<S> vg = spherical_value(g, x), dg = spherical_derivative(g, x);
    if (mode == ProductMode::Associative) return fx * vg + ix * fx * dg;
    const Element<S> df = spherical_derivative(f, x);
    return fx * vg + ix * (fx * dg) - associator(ix, df, evaluate(g, conj(x)));
}

// Central-difference estimate of |dF/d(conj z)| at z = alpha + i beta.
template <class S>
double regularity_residual(const SliceFunction<S>& f, double alpha, double beta, double h) {
    if (f.is_poly()) return 0.0;
    const auto& c = f.callable();
    for (auto [da, db] : {std::pair{h, 0.0}, std::pair{-h, 0.0}, std::pair{0.0, h}, std::pair{0.0, -h}})
        if (!c.contains(alpha + da, beta + db)) throw DomainError("regularity_residual: stencil leaves the domain");
    auto at = [&](double a, double b) {
        auto [f1, f2] = c.evaluator(ScalarTraits<S>::from(Rational(a)), ScalarTraits<S>::from(Rational(b)));
        std::vector<double> v1(f1.dim()), v2(f2.dim());
        for (int i = 0; i < f1.dim(); ++i) {
            v1[i] = ScalarTraits<S>::to_double(f1[i]);
            v2[i] = ScalarTraits<S>::to_double(f2[i]);
        }
        return std::pair{v1, v2};
    };
    auto [ap1, ap2] = at(alpha + h, beta);
    auto [am1, am2] = at(alpha - h, beta);
    auto [bp1, bp2] = at(alpha, beta + h);
    auto [bm1, bm2] = at(alpha, beta - h);
    double sum = 0;
    for (std::size_t i = 0; i < ap1.size(); ++i) {
        const double da1 = (ap1[i] - am1[i]) / (2 * h), da2 = (ap2[i] - am2[i]) / (2 * h);
        const double db1 = (bp1[i] - bm1[i]) / (2 * h), db2 = (bp2[i] - bm2[i]) / (2 * h);
        const double r = 0.5 * (da1 - db2), s = 0.5 * (da2 + db1);
        sum += r * r + s * s;
    }
    return std::sqrt(sum);
}

}  // namespace slicealg
