#pragma once

#include <complex>
#include <vector>

#include "slicealg/scalar.hpp"

namespace slicealg {

// Univariate polynomials over Q, ascending coefficients, trimmed.
using QPoly = std::vector<Rational>;

void qpoly_trim(QPoly& p);
int qpoly_degree(const QPoly& p);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
// Quotient and remainder; b must be nonzero.
std::pair<QPoly, QPoly> qpoly_divmod(const QPoly& a, const QPoly& b);
QPoly qpoly_gcd(QPoly a, QPoly b);  // monic
QPoly qpoly_derivative(const QPoly& p);
// The polynomial of degree < xs.size() through the points (xs[k], ys[k]).
QPoly qpoly_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);
Rational qpoly_eval(const QPoly& p, const Rational& x);
std::string format_qpoly(const QPoly& p);

struct SquareFreeFactor {
    QPoly factor;  // monic, square-free
    int multiplicity;
};
// Yun's algorithm: p = lc * prod factor_k^k.
std::vector<SquareFreeFactor> square_free_decomposition(const QPoly& p);

// All complex roots of a polynomial with double coefficients, from the
// companion matrix eigenvalues followed by Newton polishing.
std::vector<std::complex<double>> complex_roots(const std::vector<double>& coeffs);

// Continued-fraction convergents of x with denominators up to max_den,
// best approximation first.
std::vector<Rational> rational_approximations(double x, long max_den = 1000000);

// A real root (beta_sq = 0) or a conjugate pair alpha +- i*beta of a real
// polynomial. Exact when certified by exact division over Q.
struct PolyRoot {
    bool exact = false;
    Rational alpha_q, beta_sq_q;  // valid when exact
    double alpha = 0, beta = 0;   // always set; beta >= 0
    int multiplicity = 1;
    bool is_real() const { return beta == 0; }
};

// Roots grouped into real points and conjugate pairs, sorted by (alpha, beta).
// Conjugate pairs are matched with tolerance 1e-8.
std::vector<PolyRoot> real_poly_roots(const QPoly& p);

}  // namespace slicealg
