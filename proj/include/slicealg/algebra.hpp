#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "slicealg/linalg.hpp"
#include "slicealg/scalar.hpp"

namespace slicealg {

// One entry of a sparse structure-constant row: e_i e_j = sum of coeff * e_index.
struct Term {
    int index;
    Rational coeff;
    double coeff_d;
    int unit;  // +1 or -1 when coeff is a unit, else 0

    Term(int k, Rational c) : index(k), coeff(std::move(c)), coeff_d(coeff.get_d()) {
        unit = coeff == 1 ? 1 : (coeff == -1 ? -1 : 0);
    }
};
using SparseRow = std::vector<Term>;

struct AxiomWitness {
    std::string axiom;    // "identity", "alternative", "involution", "compatible"
    std::string detail;   // human-readable description, e.g. "t(l) = 2*l not in nucleus"
    std::vector<int> basis;
};

struct AxiomReport {
    bool alternative = true;
    bool star = true;
    bool compatible = true;
    bool associative = true;
    std::vector<AxiomWitness> witnesses;
};

class AlgebraSpec {
public:
    // products[i * d + j] holds e_i e_j; involution[i] holds e_i^c.
    AlgebraSpec(std::string name, std::vector<std::string> basis_names, std::vector<SparseRow> products,
                std::vector<SparseRow> involution);

    AlgebraSpec(const AlgebraSpec&) = delete;
    AlgebraSpec& operator=(const AlgebraSpec&) = delete;

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }
    int basis_index(const std::string& name) const;

    const SparseRow& product(int i, int j) const { return products_[std::size_t(i) * dim_ + j]; }
    const SparseRow& involution_row(int i) const { return involution_[i]; }
    Rational structure(int i, int j, int k) const;
    Rational involution(int i, int k) const;

    // Cached, computed on first use.
    const AxiomReport& axioms() const;
    bool is_associative() const { return axioms().associative; }
    bool is_alternative() const { return axioms().alternative; }
    bool is_compatible() const { return axioms().compatible; }
    const std::vector<std::vector<Rational>>& nucleus_basis() const;
    const std::vector<std::vector<Rational>>& center_basis() const;
    // Basis indices e_i lying in S_A (t(e_i) = 0, n(e_i) = 1).
    const std::vector<int>& unit_basis() const;

    // Associator of basis elements as a sparse vector.
    std::vector<std::pair<int, Rational>> basis_associator(int i, int j, int k) const;

private:
    void compute_axioms() const;
    void compute_bases() const;

    std::string name_;
    int dim_;
    std::vector<std::string> basis_names_;
    std::vector<SparseRow> products_;
    std::vector<SparseRow> involution_;

    mutable std::once_flag axioms_once_, bases_once_, units_once_;
    mutable AxiomReport axioms_;
    mutable std::vector<std::vector<Rational>> nucleus_, center_;
    mutable std::vector<int> units_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

template <class S>
class Element {
public:
    Element() = default;
    Element(AlgebraPtr a, std::vector<S> c) : alg_(std::move(a)), c_(std::move(c)) {
        if (!alg_ || int(c_.size()) != alg_->dim()) throw DomainError("coefficient vector length does not match algebra dimension");
    }

    static Element zero(const AlgebraPtr& a) { return Element(a, std::vector<S>(a->dim(), S(0))); }
    static Element scalar(const AlgebraPtr& a, const S& v) {
        Element e = zero(a);
        e.c_[0] = v;
        return e;
    }
    static Element one(const AlgebraPtr& a) { return scalar(a, S(1)); }
    static Element basis(const AlgebraPtr& a, int i) {
        Element e = zero(a);
        e.c_.at(i) = 1;
        return e;
    }

    const AlgebraPtr& algebra_ptr() const { return alg_; }
    const AlgebraSpec& algebra() const { return *alg_; }
    int dim() const { return int(c_.size()); }
    const std::vector<S>& coeffs() const { return c_; }
    std::vector<S>& coeffs() { return c_; }
    const S& operator[](int i) const { return c_[i]; }
    S& operator[](int i) { return c_[i]; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (!ScalarTraits<S>::is_zero(v)) return false;
        return true;
    }
    bool is_real() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!ScalarTraits<S>::is_zero(c_[i])) return false;
        return true;
    }
    const S& real_part() const { return c_[0]; }

    Element& operator+=(const Element& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Element& operator-=(const Element& o) {
        check_same(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Element& operator*=(const S& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator-(Element a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Element operator*(const S& s, Element a) { return a *= s; }
    friend Element operator*(Element a, const S& s) { return a *= s; }

    // Exact equality in rational mode, tolerance-based in float mode.
    friend bool operator==(const Element& a, const Element& b) {
        if (a.alg_ != b.alg_) return false;
        return (a - b).is_zero();
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    void check_same(const Element& o) const {
        if (alg_ != o.alg_) throw AlgebraMismatch("elements belong to different algebras");
    }

private:
    AlgebraPtr alg_;
    std::vector<S> c_;
};

using QElement = Element<Rational>;
using FElement = Element<double>;

inline FElement to_float(const QElement& x) {
    std::vector<double> c(x.dim());
    for (int i = 0; i < x.dim(); ++i) c[i] = x[i].get_d();
    return FElement(x.algebra_ptr(), std::move(c));
}

template <class S>
Element<S> convert(const QElement& x) {
    if constexpr (std::is_same_v<S, Rational>) return x;
    else return to_float(x);
}

namespace detail {
template <class S>
inline void accumulate(S& out, const S& ab, const Term& t) {
    if constexpr (std::is_same_v<S, Rational>) {
        if (t.unit == 1) out += ab;
        else if (t.unit == -1) out -= ab;
        else out += ab * t.coeff;
    } else {
        out += ab * t.coeff_d;
    }
}
template <class S>
inline bool exactly_zero(const S& v) {
    if constexpr (std::is_same_v<S, Rational>) return sgn(v) == 0;
    else return v == 0.0;
}
}  // namespace detail

template <class S>
Element<S> mul(const Element<S>& a, const Element<S>& b) {
    a.check_same(b);
    const AlgebraSpec& alg = a.algebra();
    const int d = alg.dim();
    std::vector<S> out(d, S(0));
    S ab;
    for (int i = 0; i < d; ++i) {
        if (detail::exactly_zero(a[i])) continue;
        for (int j = 0; j < d; ++j) {
            if (detail::exactly_zero(b[j])) continue;
            ab = a[i] * b[j];
            for (const Term& t : alg.product(i, j)) detail::accumulate(out[t.index], ab, t);
        }
    }
    return Element<S>(a.algebra_ptr(), std::move(out));
}

template <class S>
Element<S> operator*(const Element<S>& a, const Element<S>& b) {
    return mul(a, b);
}

template <class S>
Element<S> conj(const Element<S>& x) {
    const AlgebraSpec& alg = x.algebra();
    std::vector<S> out(alg.dim(), S(0));
    for (int i = 0; i < alg.dim(); ++i) {
        if (detail::exactly_zero(x[i])) continue;
        for (const Term& t : alg.involution_row(i)) detail::accumulate(out[t.index], x[i], t);
    }
    return Element<S>(x.algebra_ptr(), std::move(out));
}

template <class S>
Element<S> trace(const Element<S>& x) {
    return x + conj(x);
}

template <class S>
Element<S> norm(const Element<S>& x) {
    return x * conj(x);
}

template <class S>
Element<S> associator(const Element<S>& x, const Element<S>& y, const Element<S>& z) {
    return (x * y) * z - x * (y * z);
}

template <class S>
Element<S> commutator(const Element<S>& x, const Element<S>& y) {
    return x * y - y * x;
}

template <class S>
Element<S> re(const Element<S>& x) {
    return trace(x) * ScalarTraits<S>::from(Rational(1, 2));
}

template <class S>
Element<S> im(const Element<S>& x) {
    return x - re(x);
}

// Matrix of y -> x*y (left) or y -> y*x (right); column j is the image of e_j.
template <class S>
Matrix<S> left_mul_matrix(const Element<S>& x) {
    const AlgebraSpec& alg = x.algebra();
    const int d = alg.dim();
    Matrix<S> m(d, d);
    for (int i = 0; i < d; ++i) {
        if (detail::exactly_zero(x[i])) continue;
        for (int j = 0; j < d; ++j)
            for (const Term& t : alg.product(i, j)) detail::accumulate(m(t.index, j), x[i], t);
    }
    return m;
}

template <class S>
Matrix<S> right_mul_matrix(const Element<S>& x) {
    const AlgebraSpec& alg = x.algebra();
    const int d = alg.dim();
    Matrix<S> m(d, d);
    for (int i = 0; i < d; ++i) {
        if (detail::exactly_zero(x[i])) continue;
        for (int j = 0; j < d; ++j)
            for (const Term& t : alg.product(j, i)) detail::accumulate(m(t.index, j), x[i], t);
    }
    return m;
}

// Two-sided inverse via left and right linear solves, verified by
// multiplication.
template <class S>
std::optional<Element<S>> try_invert(const Element<S>& x) {
    const auto& a = x.algebra_ptr();
    const int d = x.dim();
    std::vector<S> e0(d, S(0));
    e0[0] = 1;
    auto left = solve(left_mul_matrix(x), e0);
    if (!left || !left->directions.empty()) return std::nullopt;
    auto right = solve(right_mul_matrix(x), e0);
    if (!right || !right->directions.empty()) return std::nullopt;
    Element<S> y(a, left->particular);
    Element<S> z(a, right->particular);
    const Element<S> one = Element<S>::one(a);
    if (y != z || x * y != one || y * x != one) return std::nullopt;
    return y;
}

template <class S>
Element<S> invert(const Element<S>& x) {
    auto inv = try_invert(x);
    if (!inv) throw NotInvertible("element is not invertible");
    return *inv;
}

struct ZeroDivisorInfo {
    bool left = false;   // x y = 0 for some y != 0
    bool right = false;  // y x = 0 for some y != 0
};

template <class S>
ZeroDivisorInfo is_zero_divisor(const Element<S>& x) {
    if (x.is_zero()) throw DomainError("is_zero_divisor: zero input");
    ZeroDivisorInfo z;
    z.left = rank(left_mul_matrix(x)) < x.dim();
    z.right = rank(right_mul_matrix(x)) < x.dim();
    return z;
}

template <class S>
bool in_nucleus(const Element<S>& x) {
    const auto& a = x.algebra_ptr();
    if (a->is_associative()) return true;
    const int d = a->dim();
    for (int i = 0; i < d; ++i) {
        Element<S> xi = x * Element<S>::basis(a, i);
        for (int j = 0; j < d; ++j) {
            Element<S> ej = Element<S>::basis(a, j);
            if (!(xi * ej - x * (Element<S>::basis(a, i) * ej)).is_zero()) return false;
        }
    }
    return true;
}

template <class S>
bool in_center(const Element<S>& x) {
    const auto& a = x.algebra_ptr();
    for (int i = 0; i < a->dim(); ++i) {
        Element<S> ei = Element<S>::basis(a, i);
        if (!commutator(x, ei).is_zero()) return false;
    }
    return in_nucleus(x);
}

template <class S>
struct ConeReport {
    bool in_QA = false, in_NA = false, in_CA = false, in_SA = false;
    bool is_zero_divisor_left = false, is_zero_divisor_right = false;
    bool is_invertible = false;
    Element<S> trace, norm;
};

template <class S>
ConeReport<S> cone_membership(const Element<S>& x) {
    ConeReport<S> r;
    r.trace = slicealg::trace(x);
    r.norm = slicealg::norm(x);
    const Element<S> nc = slicealg::norm(conj(x));
    const bool zero = x.is_zero();
    auto nonzero_real = [](const Element<S>& v) { return v.is_real() && !ScalarTraits<S>::is_zero(v[0]); };
    r.in_NA = zero || (nonzero_real(r.norm) && nonzero_real(nc));
    if (zero) {
        r.in_CA = true;
    } else {
        r.in_CA = try_invert(r.norm).has_value() && try_invert(nc).has_value() && in_center(r.norm) && in_center(nc);
    }
    if (x.is_real()) {
        r.in_QA = true;
    } else if (r.trace.is_real() && r.norm.is_real()) {
        const S t = r.trace[0], n = r.norm[0];
        r.in_QA = ScalarTraits<S>::sign(S(4) * n - t * t) > 0;
    }
    r.in_SA = r.trace.is_zero() && r.norm.is_real() && ScalarTraits<S>::is_zero(r.norm[0] - S(1));
    if (!zero) {
        auto zd = is_zero_divisor(x);
        r.is_zero_divisor_left = zd.left;
        r.is_zero_divisor_right = zd.right;
        r.is_invertible = try_invert(x).has_value();
    }
    return r;
}

template <class S>
bool in_quadratic_cone(const Element<S>& x) {
    if (x.is_real()) return true;
    const Element<S> t = trace(x), n = norm(x);
    if (!t.is_real() || !n.is_real()) return false;
    return ScalarTraits<S>::sign(S(4) * n[0] - t[0] * t[0]) > 0;
}

template <class S>
bool in_unit_sphere(const Element<S>& x) {
    const Element<S> n = norm(x);
    return trace(x).is_zero() && n.is_real() && ScalarTraits<S>::is_zero(n[0] - S(1));
}

// Decomposition x = alpha + J*beta of an element of Q_A, kept as
// (alpha, beta^2) so that it stays exact.
template <class S>
struct QuadraticParts {
    S alpha;
    S beta_sq;
};

template <class S>
QuadraticParts<S> quadratic_parts(const Element<S>& x) {
    if (!in_quadratic_cone(x)) throw DomainError("element is not in the quadratic cone Q_A");
    const S alpha = trace(x)[0] / S(2);
    const S beta_sq = x.is_real() ? S(0) : norm(x)[0] - alpha * alpha;
    return {alpha, beta_sq};
}

template <class S>
double abs_q(const Element<S>& x) {
    if (!in_quadratic_cone(x)) throw DomainError("abs_q: element is not in Q_A");
    return std::sqrt(ScalarTraits<S>::to_double(norm(x)[0]));
}

// Axiom suite entry point (same as spec.axioms()).
inline const AxiomReport& verify_axioms(const AlgebraSpec& spec) { return spec.axioms(); }

}  // namespace slicealg
