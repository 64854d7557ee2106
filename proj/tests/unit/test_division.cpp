#include "doctest.h"
#include "helpers.hpp"
#include "slicealg/division.hpp"

using namespace slicealg;
using testutil::E;
using testutil::F;

namespace {

// Random x in Q_A with f(x), f^c(x) and N(f)(x) invertible.
QElement admissible_point(std::mt19937_64& rng, const SliceFunction<Rational>& f) {
    const auto& a = f.algebra();
    const auto nf = normal(f), fc = slice_conjugate(f);
    for (;;) {
        const QElement x = testutil::random_sphere_point(rng, a);
        if (try_invert(evaluate(nf, x)) && try_invert(evaluate(f, x)) && try_invert(evaluate(fc, x))) return x;
    }
}

}  // namespace

TEST_CASE("reciprocal") {
    auto h = make_builtin("H");
    auto f = F(h, "x-i");
    const QElement r = reciprocal_eval(f, E(h, "2"));
    CHECK(r == E(h, "2/5+1/5*i"));
    CHECK(r * evaluate(f, E(h, "2")) == E(h, "1"));
    // Slice preserving g: the reciprocal is g(x)^{-1}.
    auto g = F(h, "x^2+3");
    CHECK(reciprocal_eval(g, E(h, "1+j")) == invert(evaluate(g, E(h, "1+j"))));
    CHECK(reciprocal_eval(F(h, "2+i"), E(h, "3+k")) == invert(E(h, "2+i")));
    CHECK_THROWS_AS(reciprocal_eval(f, E(h, "i")), OnZeroSetOfNormal);
    auto r4 = algebra_from_id("R4");
    CHECK_THROWS_AS(reciprocal_eval(F(r4, "(x-e4)*(1+e123)"), E(r4, "2")), NotTame);
}

TEST_CASE("f . f^{-1} = 1 through the product formula") {
    std::mt19937_64 rng(31);
    for (const char* id : {"H", "R3", "SH"}) {
        auto a = algebra_from_id(id);
        for (int t = 0; t < 20; ++t) {
            SliceFunction<Rational> f(testutil::random_tame_poly(rng, a, 3));
            const QElement x = admissible_point(rng, f);
            auto q = make_quotient(f);
            // f . f^{-.} = f . f^c . N(f)^{-.}, and N(f) is real valued.
            const QElement ffc = evaluate(slice_product(f, q.numerator_conj), x);
            CHECK(ffc * evaluate(q.normal, x) == evaluate(q.normal, x) * ffc);
            CHECK(normal_inverse_at(q.normal, x) * ffc == QElement::one(a));
            // Reciprocal of the conjugate is the conjugate of the reciprocal.
            CHECK(reciprocal_eval(slice_conjugate(f), x) ==
                  normal_inverse_at(normal(slice_conjugate(f)), x) * evaluate(f, x));
            CHECK(reciprocal_eval(slice_conjugate(f), x) == normal_inverse_at(q.normal, x) * evaluate(f, x));
        }
    }
}

TEST_CASE("T_f map") {
    auto h = make_builtin("H");
    CHECK(t_map(F(h, "1"), E(h, "2+3*j")) == E(h, "2+3*j"));
    const QElement y = t_map(F(h, "x-i"), E(h, "j"));
    CHECK(in_unit_sphere(y));
    CHECK(y == invert(E(h, "i+j")) * E(h, "j") * E(h, "i+j"));
    CHECK_THROWS_AS(t_map(F(make_builtin("O"), "x"), E(make_builtin("O"), "i")), NotAssociative);
    CHECK_THROWS_AS(t_map(F(h, "x-i"), E(h, "-i")), NotInvertible);

    std::mt19937_64 rng(32);
    auto r3 = algebra_from_id("R3");
    for (int t = 0; t < 100; ++t) {
        SliceFunction<Rational> f(testutil::random_tame_poly(rng, r3, 3));
        const QElement x = admissible_point(rng, f);
        const QElement y = t_map(f, x);
        CHECK(sphere_of(y).alpha == sphere_of(x).alpha);
        CHECK(sphere_of(y).beta_sq == sphere_of(x).beta_sq);
        CHECK(t_map(slice_conjugate(f), y) == x);
    }
}

TEST_CASE("quotients") {
    auto h = make_builtin("H");
    auto f = F(h, "x-i"), g = F(h, "x-j");
    CHECK(quotient_eval(f, f, E(h, "3+k")) == E(h, "1"));
    CHECK(quotient_eval(f, g, E(h, "2")) == invert(E(h, "2-i")) * E(h, "2-j"));
    CHECK_THROWS_AS(quotient_eval(f, g, E(h, "i")), OnZeroSetOfNormal);

    std::mt19937_64 rng(33);
    for (const char* id : {"SH", "H", "R3"}) {
        auto a = algebra_from_id(id);
        for (int t = 0; t < 25; ++t) {
            SliceFunction<Rational> ff(testutil::random_tame_poly(rng, a, 3));
            SliceFunction<Rational> gg(testutil::random_poly(rng, a, 3));
            const QElement x = admissible_point(rng, ff);
            const QElement via_t = quotient_eval(ff, gg, x);
            const QElement via_n = evaluate(make_quotient(ff, std::optional<SliceFunction<Rational>>(gg)), x);
            CHECK(via_t == via_n);
        }
    }
}

TEST_CASE("pointwise product formula") {
    auto h = make_builtin("H");
    // f(x) real: (f.g)(x) = f(x) g(x).
    CHECK(product_pointwise(F(h, "x^2+1"), F(h, "x-j"), E(h, "2+i")) ==
          evaluate(F(h, "x^2+1"), E(h, "2+i")) * evaluate(F(h, "x-j"), E(h, "2+i")));
    auto r3 = algebra_from_id("R3");
    CHECK(product_pointwise(F(r3, "x-e1"), F(r3, "x-e2"), E(r3, "e12")) ==
          evaluate(F(r3, "x^2-x*(e1+e2)+e12"), E(r3, "e12")));
    CHECK_THROWS_AS(product_pointwise(F(h, "x-i"), F(h, "x"), E(h, "i")), NotInvertible);

    std::mt19937_64 rng(34);
    for (int t = 0; t < 500; ++t) {
        SliceFunction<Rational> f(testutil::random_poly(rng, h, 4)), g(testutil::random_poly(rng, h, 4));
        const QElement x = testutil::random_sphere_point(rng, h);
        if (!try_invert(evaluate(f, x))) continue;
        CHECK(product_pointwise(f, g, x) == evaluate(slice_product(f, g), x));
    }
}

TEST_CASE("normal is multiplicative for tame factors") {
    std::mt19937_64 rng(35);
    for (const char* id : {"H", "R3", "SH", "C", "DH"}) {
        auto a = algebra_from_id(id);
        CAPTURE(id);
        for (int t = 0; t < 20; ++t) {
            SliceFunction<Rational> f(testutil::random_tame_poly(rng, a, 3)), g(testutil::random_tame_poly(rng, a, 3));
            const auto nfg = normal(slice_product(f, g)).poly();
            CHECK(nfg == slice_product(normal(f), normal(g)).poly());
            CHECK(nfg == slice_product(normal(g), normal(f)).poly());
            CHECK(nfg == slice_product(slice_product(f, normal(g)), slice_conjugate(f)).poly());
        }
    }
}
