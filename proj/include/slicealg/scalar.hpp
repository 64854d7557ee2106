#pragma once

#include <gmpxx.h>

#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace slicealg {

using Rational = mpq_class;

// Error hierarchy. The CLI maps ParseError to exit code 2 and every other
// Error to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};
struct DomainError : Error {
    using Error::Error;
};
struct AlgebraMismatch : DomainError {
    using DomainError::DomainError;
};
struct NotInvertible : DomainError {
    using DomainError::DomainError;
};
struct NotTame : DomainError {
    using DomainError::DomainError;
};
struct OnZeroSetOfNormal : DomainError {
    using DomainError::DomainError;
};
struct NormalIdenticallyZero : DomainError {
    using DomainError::DomainError;
};
struct NotAssociative : DomainError {
    using DomainError::DomainError;
};

// Absolute tolerance for float-mode zero tests.
inline std::atomic<double>& float_tolerance_storage() {
    static std::atomic<double> tol{1e-9};
    return tol;
}
inline double float_tolerance() { return float_tolerance_storage().load(std::memory_order_relaxed); }
inline void set_float_tolerance(double t) { float_tolerance_storage().store(t, std::memory_order_relaxed); }

// Seed for every sampling routine (sample grids, numeric fallbacks).
inline std::atomic<unsigned long long>& sampling_seed_storage() {
    static std::atomic<unsigned long long> seed{0};
    return seed;
}
inline unsigned long long sampling_seed() { return sampling_seed_storage().load(std::memory_order_relaxed); }
inline void set_sampling_seed(unsigned long long s) { sampling_seed_storage().store(s, std::memory_order_relaxed); }

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static int sign(const Rational& x) { return sgn(x); }
    static Rational from(const Rational& q) { return q; }
    static double to_double(const Rational& q) { return q.get_d(); }
    static std::optional<Rational> sqrt(const Rational& q);
    static std::string str(const Rational& q) { return q.get_str(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double x) { return std::abs(x) <= float_tolerance(); }
    static int sign(double x) { return is_zero(x) ? 0 : (x > 0 ? 1 : -1); }
    static double from(const Rational& q) { return q.get_d(); }
    static double to_double(double x) { return x; }
    static std::optional<double> sqrt(double x) {
        if (x < -float_tolerance()) return std::nullopt;
        return std::sqrt(std::max(x, 0.0));
    }
    static std::string str(double x);
};

// Exact square root of a nonnegative rational, if it is itself rational.
inline std::optional<Rational> ScalarTraits<Rational>::sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

// Shortest round-trip decimal representation.
std::string format_double(double x);
inline std::string ScalarTraits<double>::str(double x) { return format_double(x); }

// Parses "p", "p/q" or (when allow_decimal) a decimal literal into a rational.
Rational parse_rational(const std::string& text, bool allow_decimal = true);

}  // namespace slicealg
