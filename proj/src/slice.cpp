#include "slicealg/slice.hpp"

#include "slicealg/format.hpp"

namespace slicealg {

namespace {

void trim(std::vector<QElement>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

void check_same(const PolyStem& f, const PolyStem& g) {
    if (f.cx != g.cx) throw AlgebraMismatch("polynomials over different algebras");
}

}  // namespace

PolyStem::PolyStem(ComplexifiedPtr c, std::vector<QElement> a) : cx(std::move(c)), coeffs(std::move(a)) {
    for (const auto& x : coeffs)
        if (x.algebra_ptr() != cx->base()) throw AlgebraMismatch("polynomial coefficient not in " + cx->base()->name());
    trim(coeffs);
}

PolyStem poly_constant(const QElement& a) { return PolyStem(complexify(a.algebra_ptr()), {a}); }

PolyStem poly_x(const AlgebraPtr& a) {
    return PolyStem(complexify(a), {QElement::zero(a), QElement::one(a)});
}

PolyStem poly_linear(const QElement& y) {
    return PolyStem(complexify(y.algebra_ptr()), {-y, QElement::one(y.algebra_ptr())});
}

PolyStem poly_add(const PolyStem& f, const PolyStem& g) {
    check_same(f, g);
    const int n = std::max(f.degree(), g.degree()) + 1;
    std::vector<QElement> c;
    for (int m = 0; m < n; ++m) c.push_back(f.coeff(m) + g.coeff(m));
    return PolyStem(f.cx, std::move(c));
}

PolyStem poly_sub(const PolyStem& f, const PolyStem& g) {
    check_same(f, g);
    const int n = std::max(f.degree(), g.degree()) + 1;
    std::vector<QElement> c;
    for (int m = 0; m < n; ++m) c.push_back(f.coeff(m) - g.coeff(m));
    return PolyStem(f.cx, std::move(c));
}

PolyStem poly_product(const PolyStem& f, const PolyStem& g) {
    check_same(f, g);
    if (f.is_zero() || g.is_zero()) return PolyStem(f.cx, {});
    std::vector<QElement> c(f.coeffs.size() + g.coeffs.size() - 1, QElement::zero(f.algebra()));
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i].is_zero()) continue;
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) c[i + j] += f.coeffs[i] * g.coeffs[j];
    }
    return PolyStem(f.cx, std::move(c));
}

PolyStem poly_conjugate(const PolyStem& f) {
    std::vector<QElement> c;
    for (const auto& a : f.coeffs) c.push_back(conj(a));
    return PolyStem(f.cx, std::move(c));
}

bool operator==(const PolyStem& f, const PolyStem& g) {
    if (f.cx != g.cx || f.coeffs.size() != g.coeffs.size()) return false;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        if (f.coeffs[i] != g.coeffs[i]) return false;
    return true;
}

std::optional<std::vector<Rational>> real_coefficients(const PolyStem& f) {
    std::vector<Rational> r;
    for (const auto& a : f.coeffs) {
        if (!a.is_real()) return std::nullopt;
        r.push_back(a[0]);
    }
    return r;
}

std::string format_poly(const PolyStem& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int m = f.degree(); m >= 0; --m) {
        const QElement& a = f.coeffs[m];
        if (a.is_zero()) continue;
        std::string xm = m == 0 ? "" : (m == 1 ? "x" : "x^" + std::to_string(m));
        std::string c = format_element(a);
        std::string term;
        if (m == 0) {
            term = c;
        } else if (c == "1") {
            term = xm;
        } else if (c == "-1") {
            term = "-" + xm;
        } else {
            term = xm + "*(" + c + ")";
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

}  // namespace slicealg
