#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "slicealg/report.hpp"
#include "slicealg/zeroset.hpp"

using namespace slicealg;
using testutil::E;
using testutil::F;

namespace {

const SphereRef<Rational> unit_sphere{Rational(0), Rational(1)};

bool vanishes(const SliceFunction<Rational>& f, const QElement& x) { return evaluate(f, x).is_zero(); }

bool has_witness(const SphereZeroClass<Rational>& c, const QElement& x) {
    return std::find(c.witnesses.begin(), c.witnesses.end(), x) != c.witnesses.end();
}

}  // namespace

TEST_CASE("Delta_i vanishes on the whole unit sphere of H") {
    auto h = make_builtin("H");
    auto c = zeros_on_sphere(F(h, "x^2+1"), unit_sphere);
    CHECK(c.kind == ZeroKind::FullSphere);
    CHECK(c.theorem_case == "1(a)");
    CHECK(vanishes(F(h, "x^2+1"), E(h, "3/5*j+4/5*k")));
}

TEST_CASE("R4: (x-e4)(1+e123) has the single zero e4, its conjugate none") {
    auto a = algebra_from_id("R4");
    auto f = F(a, "(x-e4)*(1+e123)");
    auto c = zeros_on_sphere(f, unit_sphere);
    REQUIRE(c.kind == ZeroKind::Point);
    REQUIRE(c.witnesses.size() == 1);
    CHECK(c.witnesses[0] == E(a, "e4"));
    CHECK(vanishes(f, E(a, "e4")));
    CHECK(zeros_on_sphere(slice_conjugate(f), unit_sphere).kind == ZeroKind::Empty);
}

TEST_CASE("R4: N(f^c) is (x^2+1)(2+2e123) and vanishes on the sphere, N(f) only at e4") {
    auto a = algebra_from_id("R4");
    auto f = F(a, "(x-e4)*(1+e123)");
    auto nfc = normal(slice_conjugate(f));
    CHECK(nfc.poly() == testutil::P(a, "(x^2+1)*(2+2e123)"));
    CHECK(zeros_on_sphere(nfc, unit_sphere).kind == ZeroKind::FullSphere);
    auto cn = zeros_on_sphere(normal(f), unit_sphere);
    REQUIRE(cn.kind == ZeroKind::Point);
    CHECK(cn.witnesses[0] == E(a, "e4"));
    CHECK_FALSE(is_tame(f));
    CHECK_THROWS_AS(full_zero_set(f), NotTame);
}

TEST_CASE("invertible derivative: the zero is re(x) - v_s f (f'_s)^{-1}") {
    auto h = make_builtin("H");
    auto f = F(h, "x-i");
    auto c = zeros_on_sphere(f, unit_sphere);
    REQUIRE(c.kind == ZeroKind::Point);
    CHECK(c.witnesses[0] == E(h, "i"));
    CHECK(c.theorem_case == "3(a)");

    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        auto p = testutil::random_tame_poly(rng, h, 3);
        SliceFunction<Rational> g(p);
        if (g.poly().degree() < 1) continue;
        for (const auto& cs : candidate_spheres(g)) {
            if (!cs.beta_rational() || cs.q.is_real()) continue;
            auto [v, d] = g.spherical_parts(cs.q);
            auto cl = zeros_on_sphere(g, cs.q);
            if (d.is_zero() || !try_invert(d)) continue;
            if (cl.kind != ZeroKind::Point) continue;
            CHECK(cl.witnesses[0] == QElement::scalar(h, cs.q.alpha) - v * invert(d));
        }
    }
}

TEST_CASE("H: sphere of a real polynomial that misses the zero") {
    auto h = make_builtin("H");
    // 1 + (x^2+1) is 2 on the unit sphere.
    CHECK(zeros_on_sphere(F(h, "x^2+2"), unit_sphere).kind == ZeroKind::Empty);
    CHECK(zeros_on_sphere(F(h, "x^2+2"), unit_sphere).theorem_case == "1(b)");
}

TEST_CASE("real spheres are evaluated directly") {
    auto h = make_builtin("H");
    auto c = zeros_on_sphere(F(h, "x^2-4"), SphereRef<Rational>{Rational(2), Rational(0)});
    REQUIRE(c.kind == ZeroKind::Point);
    CHECK(c.witnesses[0] == E(h, "2"));
    CHECK(zeros_on_sphere(F(h, "x^2-4"), SphereRef<Rational>{Rational(1), Rational(0)}).empty());
}

TEST_CASE("R3: (x-e1)(1-e123) on the unit sphere") {
    auto a = algebra_from_id("R3");
    auto f = F(a, "(x-e1)*(1-e123)");
    auto c = r3_sphere_structure(f, unit_sphere);
    // The pair e1, e23 is found and commutes.
    REQUIRE(c.witnesses.size() == 2);
    CHECK(has_witness(c, E(a, "e1")));
    CHECK(has_witness(c, E(a, "e23")));
    REQUIRE(c.witnesses_commute.has_value());
    CHECK(*c.witnesses_commute);
    for (const auto& w : c.witnesses) CHECK(vanishes(f, w));
    // h = 1, so the zeros of f^c are the conjugates.
    REQUIRE(c.conjugate_witnesses.size() == 2);
    auto fc = slice_conjugate(f);
    std::set<std::string> conj_w;
    for (const auto& w : c.conjugate_witnesses) {
        CHECK(vanishes(fc, w));
        conj_w.insert(format_element(w));
    }
    CHECK(conj_w == std::set<std::string>{"-e1", "-e23"});
    // The set is larger than the pair: (e1+e2+e13+e23)/2 is another zero.
    const auto extra = E(a, "1/2*e1+1/2*e2+1/2*e13+1/2*e23");
    CHECK(in_unit_sphere(extra));
    CHECK(vanishes(f, extra));
    CHECK(c.kind == ZeroKind::QuadricSet);
    CHECK(c.dimension == 2);
}

TEST_CASE("R3: x - e1 has the single zero e1") {
    auto a = algebra_from_id("R3");
    auto c = r3_sphere_structure(F(a, "x-e1"), unit_sphere);
    REQUIRE(c.kind == ZeroKind::Point);
    CHECK(c.witnesses[0] == E(a, "e1"));
    REQUIRE(c.conjugate_witnesses.size() == 1);
    CHECK(vanishes(slice_conjugate(F(a, "x-e1")), c.conjugate_witnesses[0]));
}

TEST_CASE("SO: (x-i)(1+li) vanishes on an affine 2-plane of the unit sphere") {
    auto so = make_builtin("SO");
    auto f = F(so, "(x-i)*(1+li)");
    auto c = so_sphere_structure(f, unit_sphere);
    REQUIRE(c.kind == ZeroKind::AffineSet);
    CHECK(c.dimension == 2);
    CHECK(c.theorem_case == "SO case 3");
    REQUIRE(c.affine.has_value());
    CHECK(c.affine->directions.size() == 2);
    auto generic = zeros_on_sphere(f, unit_sphere);
    CHECK(generic.kind == ZeroKind::AffineSet);
    CHECK(generic.dimension == 2);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        QElement x = c.affine->base;
        for (const auto& d : c.affine->directions) x += testutil::small_rational(rng, 7, 5) * d;
        CHECK(in_unit_sphere(x));
        CHECK(vanishes(f, x));
    }
}

TEST_CASE("SO: invertible derivative routes agree") {
    auto so = make_builtin("SO");
    auto f = F(so, "x-i");
    auto c = so_sphere_structure(f, unit_sphere);
    REQUIRE(c.kind == ZeroKind::Point);
    CHECK(c.witnesses[0] == E(so, "i"));
    CHECK(same_zero_set(c, zeros_on_sphere(f, unit_sphere)));
}

TEST_CASE("SO: the constant 1+l has no zeros and N = 0") {
    auto so = make_builtin("SO");
    auto f = F(so, "1+l");
    CHECK(normal(f).poly().is_zero());
    CHECK(normal(slice_conjugate(f)).poly().is_zero());
    CHECK(zeros_on_sphere(f, unit_sphere).kind == ZeroKind::Empty);
    auto rep = full_zero_set(f);
    CHECK(rep.spheres.empty());
    CHECK_FALSE(rep.caveats.empty());
    CHECK_THROWS_AS(candidate_spheres(f), NormalIdenticallyZero);
}

TEST_CASE("candidate spheres from N(f)") {
    auto h = make_builtin("H");
    auto c1 = candidate_spheres(F(h, "x-i"));
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].q.alpha == 0);
    CHECK(c1[0].q.beta_sq == 1);
    CHECK(c1[0].multiplicity == 1);
    auto c2 = candidate_spheres(F(h, "(x-i)*(x-j)"));
    REQUIRE(c2.size() == 1);
    CHECK(c2[0].multiplicity == 2);

    // In SH = CL(1,1), e1^2 = 1: a = 1 + e1 has n(a) = 0 and t(a) = 2.
    auto sh = make_builtin("SH");
    const QElement a = E(sh, "1+e1");
    REQUIRE(norm(a).is_real());
    REQUIRE(norm(a)[0] == 0);
    REQUIRE(trace(a)[0] == 2);
    auto f = SliceFunction<Rational>(poly_linear(a));
    REQUIRE(normal(f).poly() == testutil::P(sh, "x^2-2x"));
    auto cs = candidate_spheres(f);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].q.alpha == 0);
    CHECK(cs[0].q.beta_sq == 0);
    CHECK(cs[1].q.alpha == 2);
    CHECK(cs[1].q.beta_sq == 0);
    auto rep = full_zero_set(f);
    REQUIRE(rep.spheres.size() == 2);
    for (const auto& e : rep.spheres) CHECK(e.kind() == ZeroKind::Empty);
}

TEST_CASE("full zero set of (x-i)(x-j) over H is {i}") {
    auto h = make_builtin("H");
    auto rep = full_zero_set(F(h, "(x-i)*(x-j)"));
    REQUIRE(rep.spheres.size() == 1);
    const auto& c = *rep.spheres[0].exact_class;
    REQUIRE(c.kind == ZeroKind::Point);
    CHECK(c.witnesses[0] == E(h, "i"));
    // Brute-force scan of rational points of S_H: no other zero.
    auto f = F(h, "(x-i)*(x-j)");
    const int trip[][3] = {{0, 0, 1}, {3, 4, 0}, {0, 3, 4}, {4, 0, 3}, {2, 3, 6}, {6, 2, 3}, {1, 4, 8}};
    for (const auto& t : trip) {
        const int n = int(std::lround(std::sqrt(double(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]))));
        for (int perm = 0; perm < 3; ++perm)
            for (int sg = 0; sg < 8; ++sg) {
                QElement x = QElement::zero(h);
                for (int m = 0; m < 3; ++m) x[1 + (m + perm) % 3] = Rational((sg >> m & 1) ? -t[m] : t[m], n);
                if (x == E(h, "i")) continue;
                CHECK_FALSE(vanishes(f, x));
            }
    }
}

TEST_CASE("full zero set of e1(x^2+1) over R_n is the unit sphere") {
    for (const char* id : {"R2", "R3", "R4"}) {
        auto a = algebra_from_id(id);
        auto rep = full_zero_set(F(a, "e1*(x^2+1)"));
        REQUIRE(rep.spheres.size() == 1);
        CHECK(rep.spheres[0].kind() == ZeroKind::FullSphere);
    }
}

TEST_CASE("full zero set of a nonzero constant is empty") {
    auto h = make_builtin("H");
    auto rep = full_zero_set(F(h, "1"));
    CHECK(rep.spheres.empty());
    CHECK(rep.normal == std::vector<Rational>{Rational(1)});
}

TEST_CASE("irrational spheres fall back to float classification") {
    auto h = make_builtin("H");
    auto rep = full_zero_set(F(h, "x^2+2"));
    REQUIRE(rep.spheres.size() == 1);
    CHECK(rep.spheres[0].kind() == ZeroKind::FullSphere);
    auto j = report_json(rep);
    CHECK(j["spheres"][0]["beta"] == "sqrt(2)");
}

TEST_CASE("product prediction: e1 and x^2+1 give the full sphere") {
    auto a = algebra_from_id("R3");
    auto p = product_zero_predict(F(a, "e1"), F(a, "x^2+1"), unit_sphere);
    REQUIRE(p.predicted.has_value());
    CHECK(p.predicted->kind == ZeroKind::FullSphere);
    CHECK(p.actual.kind == ZeroKind::FullSphere);
    CHECK(p.agrees);
}

TEST_CASE("product prediction: e1 times x-e2 moves the zero to -e2") {
    for (const char* id : {"R2", "R3", "R4"}) {
        auto a = algebra_from_id(id);
        CAPTURE(id);
        auto p = product_zero_predict(F(a, "e1"), F(a, "x-e2"), unit_sphere);
        REQUIRE(p.predicted.has_value());
        REQUIRE(p.predicted->kind == ZeroKind::Point);
        CHECK(p.predicted->witnesses[0] == E(a, "-e2"));
        REQUIRE(p.actual.kind == ZeroKind::Point);
        CHECK(p.actual.witnesses[0] == E(a, "-e2"));
        CHECK(p.agrees);
    }
}

TEST_CASE("product prediction: (x-e1)(x-e2) keeps only e1") {
    for (const char* id : {"R2", "R3", "R4"}) {
        auto a = algebra_from_id(id);
        CAPTURE(id);
        auto p = product_zero_predict(F(a, "x-e1"), F(a, "x-e2"), unit_sphere);
        REQUIRE(p.predicted.has_value());
        REQUIRE(p.predicted->kind == ZeroKind::Point);
        CHECK(p.predicted->witnesses[0] == E(a, "e1"));
        CHECK(p.actual.kind == ZeroKind::Point);
        CHECK(p.agrees);
    }
}

TEST_CASE("product prediction in SO with the alternate involution rejects the candidate") {
    auto a = make_builtin("SO_ALT");
    auto p = product_zero_predict(F(a, "x-2l"), F(a, "x-i"), unit_sphere);
    REQUIRE(p.formula_witness.has_value());
    CHECK(*p.formula_witness == E(a, "-5/3*i-4/3*l"));
    CHECK(trace(-*p.formula_witness) == E(a, "8/3*l"));
    REQUIRE(p.predicted.has_value());
    CHECK(p.predicted->kind == ZeroKind::Empty);
    CHECK(p.actual.kind == ZeroKind::Empty);
    CHECK(p.inclusion_only);
    CHECK(p.agrees);
}

TEST_CASE("real-point rule for products") {
    auto h = make_builtin("H");
    auto p = product_zero_predict(F(h, "x-1"), F(h, "x-i"), SphereRef<Rational>{Rational(1), Rational(0)});
    REQUIRE(p.predicted.has_value());
    CHECK(p.predicted->kind == ZeroKind::Point);
    CHECK(p.actual.kind == ZeroKind::Point);
    CHECK(p.agrees);
}

TEST_CASE("soundness on random tame polynomials") {
    std::mt19937_64 rng(7);
    for (const char* id : {"H", "R3", "SH", "O", "SO", "C", "DH"}) {
        auto a = algebra_from_id(id);
        CAPTURE(id);
        for (int t = 0; t < 12; ++t) {
            auto p = testutil::random_tame_poly(rng, a, 3);
            SliceFunction<Rational> f(p);
            CAPTURE(format_poly(p));
            if (p.degree() < 1) continue;
            ZeroReport rep;
            try {
                rep = full_zero_set(f);
            } catch (const NormalIdenticallyZero&) {
                continue;
            }
            const auto nfc = normal(slice_conjugate(f));
            for (const auto& e : rep.spheres) {
                if (!e.exact_class) continue;
                for (const auto& w : e.exact_class->witnesses) {
                    CHECK(vanishes(f, w));
                    // y^c lies in V(N(f^c)) and, compatible here, y in V(N(f)).
                    CHECK(vanishes(nfc, conj(w)));
                    if (a->is_compatible()) CHECK(vanishes(normal(f), w));
                }
                if (e.exact_class->affine)
                    for (const auto& d : e.exact_class->affine->directions)
                        CHECK(vanishes(f, e.exact_class->affine->base + d));
            }
        }
    }
}

TEST_CASE("zeros of a product lie on spheres of V(N(f)) or V(N(g))") {
    std::mt19937_64 rng(19);
    for (const char* id : {"H", "R3"}) {
        auto a = algebra_from_id(id);
        for (int t = 0; t < 15; ++t) {
            SliceFunction<Rational> f(testutil::random_tame_poly(rng, a, 2)), g(testutil::random_tame_poly(rng, a, 2));
            auto fg = slice_product(f, g);
            if (fg.poly().degree() < 1) continue;
            auto rep = full_zero_set(fg);
            for (const auto& e : rep.spheres) {
                if (!e.exact_class) continue;
                for (const auto& w : e.exact_class->witnesses)
                    CHECK((vanishes(normal(f), w) || vanishes(normal(g), w)));
            }
        }
    }
}

TEST_CASE("real-point rule on random polynomials") {
    std::mt19937_64 rng(23);
    auto h = make_builtin("H");
    for (int t = 0; t < 30; ++t) {
        const Rational r = testutil::small_rational(rng);
        auto f = SliceFunction<Rational>(poly_product(poly_linear(QElement::scalar(h, r)),
                                                      testutil::random_poly(rng, h, 2)));
        SliceFunction<Rational> g(testutil::random_poly(rng, h, 2));
        CHECK(vanishes(slice_product(f, g), QElement::scalar(h, r)));
        CHECK(vanishes(slice_product(g, f), QElement::scalar(h, r)));
    }
}

TEST_CASE("nonsingular algebras: nonzero polynomials have nonzero normal") {
    std::mt19937_64 rng(29);
    for (const char* id : {"H", "O", "R3"}) {
        auto a = algebra_from_id(id);
        for (int t = 0; t < 40; ++t) {
            auto p = testutil::random_poly(rng, a, 3);
            if (p.is_zero()) continue;
            CHECK_FALSE(normal(SliceFunction<Rational>(p)).poly().is_zero());
        }
    }
}

TEST_CASE("zero report JSON has the documented fields") {
    auto h = make_builtin("H");
    auto rep = full_zero_set(F(h, "x-i"));
    auto j = report_json(rep);
    CHECK(j["function"] == "x-i");
    CHECK(j["normal_poly"] == Json::array({"1", "0", "1"}));
    REQUIRE(j["spheres"].size() == 1);
    CHECK(j["spheres"][0]["alpha"] == "0");
    CHECK(j["spheres"][0]["beta"] == "1");
    CHECK(j["spheres"][0]["kind"] == "Point");
    CHECK(j["spheres"][0]["witnesses"] == Json::array({"i"}));
    CHECK(j["spheres"][0]["affine_dim"].is_null());
    CHECK(j["caveats"].is_array());
}

TEST_CASE("determinant route") {
    auto h = make_builtin("H");
    // Right multiplication by q on H has determinant n(q)^2.
    CHECK(right_multiplication_determinant(F(h, "x-i")) == std::vector<Rational>{1, 0, 2, 0, 1});
    auto rep = zero_set_via_determinant(F(h, "(x-i)*(x-j)"));
    REQUIRE(rep.spheres.size() == 1);
    CHECK(rep.spheres[0].exact_class->witnesses == std::vector<QElement>{E(h, "i")});

    auto r4 = algebra_from_id("R4");
    auto f = F(r4, "(x-e4)*(1+e123)");
    CHECK(right_multiplication_determinant(f).empty());
    CHECK(real_content(normal(slice_conjugate(f)).poly()) == std::vector<Rational>{1, 0, 1});
    auto r = zero_set_via_determinant(f);
    REQUIRE(r.spheres.size() == 1);
    REQUIRE(r.spheres[0].kind() == ZeroKind::Point);
    CHECK(r.spheres[0].exact_class->witnesses[0] == E(r4, "e4"));
    CHECK(r.caveats.size() == 2);
}

TEST_CASE("determinant route covers the N(f) spheres of tame polynomials") {
    std::mt19937_64 rng(47);
    for (const char* id : {"H", "R3", "O"}) {
        auto a = algebra_from_id(id);
        for (int t = 0; t < 8; ++t) {
            SliceFunction<Rational> f(testutil::random_tame_poly(rng, a, 2));
            if (f.poly().degree() < 1) continue;
            const auto d = right_multiplication_determinant(f);
            if (d.empty()) continue;
            // Every root of N(f) carrying a zero of f is a root of D.
            for (const auto& e : full_zero_set(f).spheres) {
                if (!e.exact_class || e.exact_class->empty()) continue;
                const auto& q = e.sphere.q;
                CHECK(qpoly_divmod(d, QPoly{q.alpha * q.alpha + q.beta_sq, -2 * q.alpha, 1}).second.empty());
            }
        }
    }
}
