#include "doctest.h"
#include "helpers.hpp"

using namespace slicealg;
using testutil::E;

TEST_CASE("builtin tables satisfy the axioms") {
    for (const auto& id : builtin_ids(16)) {
        auto a = algebra_from_id(id);
        CAPTURE(id);
        const auto& r = verify_axioms(*a);
        CHECK(r.alternative);
        CHECK(r.star);
        if (a->name() != "SO_ALT") CHECK(r.compatible);
    }
}

TEST_CASE("SO_ALT is not compatible and the witness is t(l)") {
    auto a = make_builtin("SO_ALT");
    const auto& r = verify_axioms(*a);
    CHECK(r.alternative);
    CHECK(r.star);
    CHECK_FALSE(r.compatible);
    bool found = false;
    for (const auto& w : r.witnesses)
        if (w.axiom == "compatible" && w.detail.find("t(l)") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("octonions and split octonions are not associative") {
    CHECK_FALSE(make_builtin("O")->is_associative());
    CHECK_FALSE(make_builtin("SO")->is_associative());
    CHECK(make_builtin("H")->is_associative());
    CHECK(algebra_from_id("R3")->is_associative());
}

TEST_CASE("CL(0,2) is the quaternions") {
    auto a = algebra_from_id("cl-0-2");
    auto e1 = E(a, "e1"), e2 = E(a, "e2"), e12 = E(a, "e12");
    CHECK(e1 * e1 == E(a, "-1"));
    CHECK(e2 * e2 == E(a, "-1"));
    CHECK(e12 * e12 == E(a, "-1"));
    CHECK(e1 * e2 == e12);
    CHECK(e2 * e12 == e1);
    CHECK(e12 * e1 == e2);
}

TEST_CASE("split octonion rule (lp)(lq) = q p^c") {
    auto a = make_builtin("SO");
    CHECK(E(a, "li") * E(a, "lj") == E(a, "k"));
    CHECK(E(a, "l") * E(a, "l") == E(a, "1"));
    auto o = make_builtin("O");
    CHECK(E(o, "l") * E(o, "l") == E(o, "-1"));
}

TEST_CASE("identity and basic products") {
    auto h = make_builtin("H");
    for (int i = 0; i < 4; ++i) CHECK(QElement::one(h) * QElement::basis(h, i) == QElement::basis(h, i));
    auto r3 = algebra_from_id("CL(0,3)");
    CHECK(E(r3, "e1") * E(r3, "e2") == E(r3, "e12"));
    auto dh = make_builtin("DH");
    CHECK((E(dh, "eps") * E(dh, "eps")).is_zero());
    CHECK((QElement::zero(h) * E(h, "1+i")).is_zero());
}

TEST_CASE("trace and norm") {
    auto so = make_builtin("SO");
    CHECK(norm(E(so, "i+lj")).is_zero());
    auto dh = make_builtin("DH");
    CHECK(norm(E(dh, "2*epsi-epsk")).is_zero());
    auto h = make_builtin("H");
    CHECK(trace(E(h, "1")) == E(h, "2"));
    CHECK(norm(E(h, "1")) == E(h, "1"));
}

TEST_CASE("associator and commutator") {
    std::mt19937_64 rng(1);
    for (const auto& id : builtin_ids(16)) {
        auto a = algebra_from_id(id);
        auto x = testutil::random_element(rng, a), y = testutil::random_element(rng, a);
        CHECK(associator(x, x, y).is_zero());
        CHECK(associator(y, x, x).is_zero());
        CHECK(associator(QElement::one(a), x, y).is_zero());
    }
    auto h = make_builtin("H");
    CHECK(commutator(E(h, "i"), E(h, "j")) == E(h, "2*k"));
}

TEST_CASE("inversion") {
    auto h = make_builtin("H");
    CHECK(invert(E(h, "1+2*i")) == E(h, "1/5-2/5*i"));
    CHECK(invert(E(h, "1")) == E(h, "1"));
    auto r3 = algebra_from_id("R3");
    CHECK_FALSE(try_invert(E(r3, "1+e123")).has_value());
    CHECK_THROWS_AS(invert(E(r3, "1+e123")), NotInvertible);
}

TEST_CASE("zero divisors") {
    auto so = make_builtin("SO");
    auto z = is_zero_divisor(E(so, "i+lj"));
    CHECK(z.left);
    CHECK(z.right);
    auto h = make_builtin("H");
    auto q = is_zero_divisor(E(h, "1-i+3*k"));
    CHECK_FALSE(q.left);
    CHECK_FALSE(q.right);
    auto r3 = algebra_from_id("R3");
    auto w = is_zero_divisor(E(r3, "1-e123"));
    CHECK(w.left);
    CHECK(w.right);
    CHECK_THROWS_AS(is_zero_divisor(QElement::zero(h)), DomainError);
}

TEST_CASE("nucleus and center") {
    auto so = make_builtin("SO");
    CHECK_FALSE(in_nucleus(E(so, "l")));
    CHECK(so->nucleus_basis().size() == 1);
    auto r3 = algebra_from_id("R3");
    CHECK(in_center(E(r3, "e123")));
    CHECK(r3->center_basis().size() == 2);
    CHECK(in_center(QElement::one(r3)));
    auto dc = make_builtin("DC");
    CHECK(dc->center_basis().size() == 4);
    CHECK(dc->nucleus_basis().size() == 4);
}

TEST_CASE("cone membership") {
    auto sh = make_builtin("SH");
    CHECK(cone_membership(E(sh, "e2")).in_SA);
    CHECK_FALSE(cone_membership(E(sh, "e1")).in_SA);
    auto r3 = algebra_from_id("R3");
    CHECK_FALSE(cone_membership(E(r3, "e123")).in_SA);
    CHECK(cone_membership(E(r3, "e12")).in_SA);
    auto h = make_builtin("H");
    auto one = cone_membership(QElement::one(h));
    CHECK(one.in_QA);
    CHECK_FALSE(one.in_SA);
}

TEST_CASE("re, im, abs_q") {
    auto h = make_builtin("H");
    auto x = E(h, "3+4*i");
    CHECK(re(x) == E(h, "3"));
    CHECK(im(x) == E(h, "4*i"));
    CHECK(abs_q(x) == doctest::Approx(5.0));
    CHECK(abs_q(E(h, "1")) == doctest::Approx(1.0));
    auto sh = make_builtin("SH");
    CHECK(re(E(sh, "e2")).is_zero());
    CHECK_THROWS_AS(abs_q(E(sh, "e1")), DomainError);
}

TEST_CASE("mixing algebras is rejected") {
    auto h = make_builtin("H");
    auto c = make_builtin("C");
    CHECK_THROWS_AS(E(h, "i") * E(c, "i"), AlgebraMismatch);
    CHECK_THROWS_AS(E(h, "i") + E(c, "i"), AlgebraMismatch);
}

TEST_CASE("invariants on random elements") {
    std::mt19937_64 rng(7);
    for (const auto& id : builtin_ids(16)) {
        auto a = algebra_from_id(id);
        CAPTURE(id);
        for (int s = 0; s < 20; ++s) {
            auto x = testutil::random_element(rng, a), y = testutil::random_element(rng, a);
            auto z = testutil::random_element(rng, a);
            // Moufang
            CHECK((x * z * x) * y == x * (z * (x * y)));
            CHECK(((x * z) * x) == (x * (z * x)));
            auto xi = try_invert(x), yi = try_invert(y);
            if (xi && yi) CHECK(invert(x * y) == (*yi) * (*xi));
            if (xi) {
                auto xci = try_invert(conj(x));
                REQUIRE(xci.has_value());
                CHECK(*xci == conj(*xi));
            }
            auto cx = cone_membership(x), cy = cone_membership(y);
            if (cx.in_SA) CHECK(cx.in_QA);
            if (cx.in_QA) CHECK(cx.in_NA);
            if (cx.in_NA) CHECK(cx.in_CA);
            if (cx.in_CA && !x.is_zero()) CHECK(cx.is_invertible);
            if (cx.in_CA && cy.in_CA) {
                CHECK(norm(x * y) == norm(x) * norm(y));
                CHECK(norm(y * x) == norm(x) * norm(y));
            }
            if (a->is_compatible()) CHECK(norm(x * y) == (x * norm(y)) * conj(x));
            if (a->is_associative() && !x.is_zero()) CHECK(cx.is_invertible == !(cx.is_zero_divisor_left || cx.is_zero_divisor_right));
        }
    }
}

TEST_CASE("element literals round-trip") {
    auto h = make_builtin("H");
    CHECK(E(h, "1+2*i").coeffs() == std::vector<Rational>{1, 2, 0, 0});
    auto r3 = algebra_from_id("R3");
    auto x = E(r3, "1-e123");
    CHECK(x[0] == 1);
    CHECK(x[r3->basis_index("e123")] == -1);
    auto so = make_builtin("SO");
    CHECK(E(so, "3/2*l")[4] == Rational(3, 2));
    for (const char* s : {"0", "1", "-i", "1/2-3*j+k", "2i", " 1 + i "}) {
        auto v = E(h, s);
        CHECK(E(h, format_element(v)) == v);
    }
    CHECK(format_element(E(h, "1/2-3*j+k")) == "1/2-3*j+k");
    CHECK_THROWS_AS(E(h, "1+q"), ParseError);
    CHECK_THROWS_AS(E(h, "1+"), ParseError);
    CHECK_THROWS_AS(E(h, "0.5*i"), ParseError);
    CHECK(parse_element("0.5*i", h, true)[1] == Rational(1, 2));
    CHECK(E(r3, "2e1")[1] == 2);
}

TEST_CASE("R3 unit I = (e1+e2+e13+e23)/2 is a zero of (x-e1)(1-e123)") {
    auto r3 = algebra_from_id("R3");
    auto I = E(r3, "1/2*e1+1/2*e2+1/2*e13+1/2*e23");
    CHECK(cone_membership(I).in_SA);
    CHECK(((I - E(r3, "e1")) * E(r3, "1-e123")).is_zero());
    CHECK_FALSE(I == E(r3, "e1"));
    CHECK_FALSE(I == E(r3, "e23"));
}
