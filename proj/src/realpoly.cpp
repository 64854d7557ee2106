#include "slicealg/realpoly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace slicealg {

void qpoly_trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int qpoly_degree(const QPoly& p) { return int(p.size()) - 1; }

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qpoly_trim(r);
    return r;
}

std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& a, const QPoly& b) {
    QPoly bb = b;
    qpoly_trim(bb);
    if (bb.empty()) throw DomainError("polynomial division by zero");
    QPoly r = a;
    qpoly_trim(r);
    if (r.size() < bb.size()) return {{}, r};
    QPoly q(r.size() - bb.size() + 1, Rational(0));
    const Rational lead = bb.back();
    for (int k = int(r.size()) - int(bb.size()); k >= 0; --k) {
        const Rational c = r[k + bb.size() - 1] / lead;
        q[k] = c;
        if (sgn(c) == 0) continue;
        for (std::size_t j = 0; j < bb.size(); ++j) r[k + j] -= c * bb[j];
    }
    qpoly_trim(q);
    qpoly_trim(r);
    return {q, r};
}

namespace {
QPoly monic(QPoly p) {
    qpoly_trim(p);
    if (p.empty()) return p;
    const Rational lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}
}  // namespace

QPoly qpoly_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    // Newton divided differences.
    const std::size_t n = xs.size();
    std::vector<Rational> c = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
    QPoly p;
    for (std::size_t k = n; k-- > 0;) {
        p = qpoly_mul(p, QPoly{-xs[k], Rational(1)});
        if (p.empty()) p = QPoly{c[k]};
        else p[0] += c[k];
    }
    qpoly_trim(p);
    return p;
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
    qpoly_trim(a);
    qpoly_trim(b);
    while (!b.empty()) {
        auto r = qpoly_divmod(a, b).second;
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(a);
}

QPoly qpoly_derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * int(i));
    qpoly_trim(d);
    return d;
}

Rational qpoly_eval(const QPoly& p, const Rational& x) {
    Rational r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

std::string format_qpoly(const QPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (int m = int(p.size()) - 1; m >= 0; --m) {
        if (sgn(p[m]) == 0) continue;
        const bool neg = sgn(p[m]) < 0;
        const Rational mag = neg ? Rational(-p[m]) : p[m];
        std::string xm = m == 0 ? "" : (m == 1 ? "x" : "x^" + std::to_string(m));
        std::string term;
        if (m == 0) term = mag.get_str();
        else if (mag == 1) term = xm;
        else term = mag.get_str() + "*" + xm;
        if (neg) out += "-";
        else if (!out.empty()) out += "+";
        out += term;
    }
    return out;
}

std::vector<SquareFreeFactor> square_free_decomposition(const QPoly& p0) {
    QPoly p = monic(p0);
    std::vector<SquareFreeFactor> out;
    if (qpoly_degree(p) < 1) return out;
    QPoly a = qpoly_gcd(p, qpoly_derivative(p));
    QPoly b = qpoly_divmod(p, a).first;
    QPoly c = qpoly_divmod(qpoly_derivative(p), a).first;
    QPoly d = c;
    {
        QPoly db = qpoly_derivative(b);
        d.resize(std::max(d.size(), db.size()), Rational(0));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        qpoly_trim(d);
    }
    for (int k = 1; qpoly_degree(b) >= 1; ++k) {
        QPoly g = qpoly_gcd(b, d);
        if (qpoly_degree(g) >= 1) out.push_back({g, k});
        b = qpoly_divmod(b, g).first;
        c = qpoly_divmod(d, g).first;
        QPoly db = qpoly_derivative(b);
        d = c;
        d.resize(std::max(d.size(), db.size()), Rational(0));
        for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
        qpoly_trim(d);
    }
    return out;
}

std::vector<std::complex<double>> complex_roots(const std::vector<double>& coeffs0) {
    std::vector<double> c = coeffs0;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    const int n = int(c.size()) - 1;
    if (n < 1) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()[i]);
    // Newton polishing in extended precision.
    using LC = std::complex<long double>;
    for (auto& r : roots) {
        LC z(r.real(), r.imag());
        for (int it = 0; it < 8; ++it) {
            LC p = 0, dp = 0;
            for (int k = n; k >= 0; --k) {
                dp = dp * z + p;
                p = p * z + (long double)c[k];
            }
            if (std::abs(dp) == 0) break;
            LC step = p / dp;
            z -= step;
            if (std::abs(step) <= 1e-19L * std::max<long double>(1, std::abs(z))) break;
        }
        r = std::complex<double>(double(z.real()), double(z.imag()));
    }
    return roots;
}

namespace {

// Continued-fraction convergents of x with bounded denominators.
std::vector<Rational> convergents(double x, long max_den = 1000000) {
    std::vector<Rational> out;
    if (!std::isfinite(x)) return out;
    mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double r = x;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        mpz_class ai(a);
        mpz_class h2 = ai * h0 + h1, k2 = ai * k0 + k1;
        if (k2 > max_den) break;
        out.emplace_back(h2, k2);
        out.back().canonicalize();
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        double frac = r - a;
        if (frac < 1e-14) break;
        r = 1.0 / frac;
    }
    return out;
}

std::vector<double> to_double(const QPoly& p) {
    std::vector<double> d;
    for (const auto& c : p) d.push_back(c.get_d());
    return d;
}

std::vector<Rational> rational_candidates(double x) { return rational_approximations(x); }

bool divides(const QPoly& divisor, const QPoly& p) { return qpoly_divmod(p, divisor).second.empty(); }

// Roots of one square-free factor; exact when certified.
std::vector<PolyRoot> factor_roots(QPoly g, int mult) {
    std::vector<PolyRoot> out;
    auto add_exact_real = [&](const Rational& r) {
        PolyRoot pr;
        pr.exact = true;
        pr.alpha_q = r;
        pr.beta_sq_q = 0;
        pr.alpha = r.get_d();
        pr.multiplicity = mult;
        out.push_back(pr);
    };
    auto add_exact_pair = [&](const Rational& alpha, const Rational& beta_sq) {
        PolyRoot pr;
        pr.exact = true;
        pr.alpha_q = alpha;
        pr.beta_sq_q = beta_sq;
        pr.alpha = alpha.get_d();
        pr.beta = std::sqrt(beta_sq.get_d());
        pr.multiplicity = mult;
        out.push_back(pr);
    };
    // Peel off certified linear and quadratic factors.
    bool progress = true;
    while (qpoly_degree(g) >= 1 && progress) {
        progress = false;
        const int deg = qpoly_degree(g);
        if (deg == 1) {
            add_exact_real(-g[0] / g[1]);
            g = {Rational(1)};
            break;
        }
        if (deg == 2) {
            const Rational a = g[2], b = g[1], c = g[0];
            const Rational alpha = -b / (2 * a);
            const Rational disc = b * b - 4 * a * c;
            if (sgn(disc) < 0) {
                add_exact_pair(alpha, c / a - alpha * alpha);
                g = {Rational(1)};
                break;
            }
            if (auto s = ScalarTraits<Rational>::sqrt(disc)) {
                add_exact_real(alpha + *s / (2 * a));
                add_exact_real(alpha - *s / (2 * a));
                g = {Rational(1)};
                break;
            }
            // Irrational real pair: falls through to floats.
        }
        for (const auto& z : complex_roots(to_double(g))) {
            if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z))) {
                for (const auto& r : rational_candidates(z.real())) {
                    if (sgn(qpoly_eval(g, r)) == 0) {
                        add_exact_real(r);
                        g = qpoly_divmod(g, QPoly{-r, Rational(1)}).first;
                        progress = true;
                        break;
                    }
                }
            } else if (z.imag() > 0) {
                // x^2 - s x + n with s = 2 alpha, n = |z|^2
                const auto ss = rational_candidates(2 * z.real());
                const auto ns = rational_candidates(std::norm(z));
                for (const auto& s : ss) {
                    for (const auto& nn : ns) {
                        QPoly q{nn, -s, Rational(1)};
                        if (4 * nn - s * s > 0 && divides(q, g)) {
                            add_exact_pair(s / 2, nn - s * s / 4);
                            g = qpoly_divmod(g, q).first;
                            progress = true;
                            break;
                        }
                    }
                    if (progress) break;
                }
            }
            if (progress) break;
        }
    }
    if (qpoly_degree(g) >= 1) {
        for (const auto& z : complex_roots(to_double(g))) {
            const double scale = std::max(1.0, std::abs(z));
            if (std::abs(z.imag()) <= 1e-8 * scale) {
                PolyRoot pr;
                pr.alpha = z.real();
                pr.multiplicity = mult;
                out.push_back(pr);
            } else if (z.imag() > 0) {
                PolyRoot pr;
                pr.alpha = z.real();
                pr.beta = z.imag();
                pr.multiplicity = mult;
                out.push_back(pr);
            }
        }
    }
    return out;
}

}  // namespace

std::vector<Rational> rational_approximations(double x, long max_den) {
    auto cs = convergents(x, max_den);
    std::reverse(cs.begin(), cs.end());
    return cs;
}

std::vector<PolyRoot> real_poly_roots(const QPoly& p) {
    std::vector<PolyRoot> out;
    for (const auto& f : square_free_decomposition(p)) {
        auto rs = factor_roots(f.factor, f.multiplicity);
        out.insert(out.end(), rs.begin(), rs.end());
    }
    std::sort(out.begin(), out.end(), [](const PolyRoot& a, const PolyRoot& b) {
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.beta < b.beta;
    });
    return out;
}

}  // namespace slicealg
