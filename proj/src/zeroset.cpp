#include "slicealg/zeroset.hpp"

#include <Eigen/Dense>
#include <random>

namespace slicealg {

const char* kind_name(ZeroKind k) {
    switch (k) {
        case ZeroKind::Empty: return "Empty";
        case ZeroKind::Point: return "Point";
        case ZeroKind::PointPair: return "PointPair";
        case ZeroKind::AffineSet: return "AffineSet";
        case ZeroKind::FullSphere: return "FullSphere";
        case ZeroKind::QuadricSet: return "QuadricSet";
    }
    return "?";
}

namespace detail {

NumericQuadricResult numeric_quadric_solve(const std::vector<std::vector<double>>& rows, int r,
                                           unsigned long long seed) {
    const int m = r * (r + 1) / 2, q = int(rows.size());
    Eigen::MatrixXd coef(q, m + r + 1);
    for (int k = 0; k < q; ++k)
        for (int c = 0; c < m + r + 1; ++c) coef(k, c) = rows[k][c];
    auto features = [&](const Eigen::VectorXd& c) {
        Eigen::VectorXd f(m + r + 1);
        int idx = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) f(idx++) = c(i) * c(j);
        for (int i = 0; i < r; ++i) f(m + i) = c(i);
        f(m + r) = 1;
        return f;
    };
    auto jacobian = [&](const Eigen::VectorXd& c) {
        Eigen::MatrixXd jf = Eigen::MatrixXd::Zero(m + r + 1, r);
        int idx = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j, ++idx) {
                jf(idx, i) += c(j);
                jf(idx, j) += c(i);
            }
        for (int i = 0; i < r; ++i) jf(m + i, i) = 1;
        return Eigen::MatrixXd(coef * jf);
    };
    double scale = 1;
    for (int k = 0; k < q; ++k) scale = std::max(scale, coef.row(k).cwiseAbs().maxCoeff());

    NumericQuadricResult out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int start = 0; start < 64; ++start) {
        const double spread = (start % 3 == 0) ? 4.0 : 1.0;
        Eigen::VectorXd c(r);
        for (int i = 0; i < r; ++i) c(i) = spread * gauss(rng);
        for (int it = 0; it < 200; ++it) {
            const Eigen::VectorXd f = coef * features(c);
            if (f.norm() <= 1e-14 * scale * std::max(1.0, c.squaredNorm())) break;
            const Eigen::VectorXd step = jacobian(c).completeOrthogonalDecomposition().solve(-f);
            c += step;
            if (step.norm() <= 1e-16 * std::max(1.0, c.norm())) break;
        }
        const Eigen::VectorXd f = coef * features(c);
        if (!c.allFinite() || f.norm() > 1e-10 * scale * std::max(1.0, c.squaredNorm())) continue;
        bool seen = false;
        for (const auto& p : out.points) {
            double dist = 0;
            for (int i = 0; i < r; ++i) dist += (p[i] - c(i)) * (p[i] - c(i));
            if (std::sqrt(dist) <= 1e-6 * std::max(1.0, c.norm())) seen = true;
        }
        if (seen) continue;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian(c));
        const auto& sv = svd.singularValues();
        int rk = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-7 * std::max(1.0, sv(0))) ++rk;
        out.points.emplace_back(c.data(), c.data() + r);
        out.local_dims.push_back(r - rk);
    }
    return out;
}

}  // namespace detail

namespace {

std::vector<Rational> normal_coefficients(const SliceFunction<Rational>& f) {
    if (!f.is_poly()) throw DomainError("zero sets are computed for polynomial stems only");
    require_tame(f);
    auto n = real_coefficients(normal(f).poly());
    if (!n) throw NotTame("N(f) has non-real coefficients");
    return *n;
}

}  // namespace

std::vector<CandidateSphere> candidate_spheres(const SliceFunction<Rational>& f) {
    const auto n = normal_coefficients(f);
    if (n.empty()) throw NormalIdenticallyZero("N(f) vanishes identically");
    std::vector<CandidateSphere> out;
    for (const auto& root : real_poly_roots(n)) {
        CandidateSphere c;
        c.exact = root.exact;
        if (root.exact) c.q = SphereRef<Rational>{root.alpha_q, root.beta_sq_q};
        c.fl = SphereRef<double>{root.alpha, root.beta * root.beta};
        c.multiplicity = root.multiplicity;
        out.push_back(c);
    }
    return out;
}

ZeroReport full_zero_set(const SliceFunction<Rational>& f, bool force_float) {
    ZeroReport rep;
    const auto n = normal_coefficients(f);
    rep.function = format_poly(f.poly());
    rep.normal = n;
    if (f.poly().is_zero()) {
        rep.caveats.push_back("f = 0: every point of Q_A is a zero");
        return rep;
    }
    if (n.empty()) {
        rep.caveats.push_back("N(f) = 0 identically: zero set not characterized");
        if (f.poly().degree() == 0) rep.caveats.push_back("f is a nonzero constant, so V(f) is empty");
        return rep;
    }
    rep.normal_roots = real_poly_roots(n);
    const SliceFunction<double> ff(f.poly());
    for (const auto& c : candidate_spheres(f)) {
        SphereEntry e;
        e.sphere = c;
        if (c.exact && !force_float) {
            e.exact_class = classify_sphere(f, c.q);
        } else {
            e.float_class = classify_sphere(ff, c.fl);
        }
        rep.spheres.push_back(std::move(e));
    }
    return rep;
}

QPoly real_content(const PolyStem& p) {
    QPoly g;
    for (int k = 0; k < p.algebra()->dim(); ++k) {
        QPoly comp;
        for (const auto& c : p.coeffs) comp.push_back(c[k]);
        qpoly_trim(comp);
        if (!comp.empty()) g = g.empty() ? comp : qpoly_gcd(g, comp);
    }
    return g.empty() ? g : qpoly_gcd(g, g);
}

std::vector<Rational> right_multiplication_determinant(const SliceFunction<Rational>& f) {
    if (!f.is_poly()) throw DomainError("determinant route needs a polynomial stem");
    const auto& a = f.algebra();
    // At real z the map is right multiplication by f(z) on A, so exact
    // values at deg D + 1 integers fix D.
    const int deg = std::max(0, f.poly().degree()) * a->dim();
    std::vector<Rational> xs, ys;
    for (int k = 0; k <= deg; ++k) {
        xs.emplace_back(k);
        ys.push_back(determinant(right_mul_matrix(evaluate(f, QElement::scalar(a, Rational(k))))));
    }
    return qpoly_interpolate(xs, ys);
}

ZeroReport zero_set_via_determinant(const SliceFunction<Rational>& f, bool force_float) {
    if (!f.is_poly()) throw DomainError("zero sets are computed for polynomial stems only");
    ZeroReport rep;
    rep.function = format_poly(f.poly());
    if (auto n = real_coefficients(normal(f).poly())) rep.normal = *n;
    if (f.poly().is_zero()) {
        rep.caveats.push_back("f = 0: every point of Q_A is a zero");
        return rep;
    }
    rep.determinant = right_multiplication_determinant(f);
    rep.caveats.push_back("candidate spheres from det(w -> w F(z)); multiplicities are those of its roots");
    QPoly candidates = rep.determinant;
    if (candidates.empty()) {
        // y in V(f) gives y in V(N(f)) and y^c in V(N(f^c)) (compatible A);
        // the real factors common to all components are what can be used.
        rep.caveats.push_back("det(w -> w F(z)) = 0 identically; spheres below come from the real content of N(f) and "
                              "N(f^c) and may miss zeros");
        if (!f.algebra()->is_compatible()) return rep;
        candidates = qpoly_mul(real_content(normal(f).poly()), real_content(normal(slice_conjugate(f)).poly()));
        candidates = qpoly_gcd(candidates, candidates);
        if (qpoly_degree(candidates) < 1) return rep;
    }
    rep.normal_roots = real_poly_roots(candidates);
    const SliceFunction<double> ff(f.poly());
    for (const auto& root : rep.normal_roots) {
        SphereEntry e;
        e.sphere.exact = root.exact;
        if (root.exact) e.sphere.q = SphereRef<Rational>{root.alpha_q, root.beta_sq_q};
        e.sphere.fl = SphereRef<double>{root.alpha, root.beta * root.beta};
        e.sphere.multiplicity = root.multiplicity;
        if (root.exact && !force_float) e.exact_class = classify_sphere(f, e.sphere.q);
        else e.float_class = classify_sphere(ff, e.sphere.fl);
        rep.spheres.push_back(std::move(e));
    }
    return rep;
}

}  // namespace slicealg
