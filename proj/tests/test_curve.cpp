#include <doctest.h>

#include "fmd/catalog.hpp"
#include "fmd/descent.hpp"
#include "helpers.hpp"

using namespace fmd;

namespace {
const ModelRef X0{"X", 0};

std::vector<CurveElement> gens() { return CurveElement::generators(CurveSpec::macbeath()); }

CycScalar small_scalar(std::mt19937_64& rng) {
    return CycScalar(long(rng() % 7) - 3) * CycScalar::rho(int(rng() % 7));
}

// Three nonzero slots with linear polynomial coefficients.
CurveElement random_element(std::mt19937_64& rng) {
    auto spec = CurveSpec::macbeath();
    CurveElement e(spec, RatFunc());
    for (int i = 0; i < 3; ++i) {
        int m = int(rng() % 8);
        e.slot(m) = RatFunc(UPoly(std::vector<CycScalar>{small_scalar(rng), small_scalar(rng)}));
    }
    if (e.is_zero()) e.slot(0) = RatFunc(1);
    return e;
}
}  // namespace

TEST_SUITE("curve-algebra") {
    TEST_CASE("reduction of y_i squared") {
        auto spec = CurveSpec::macbeath();
        auto y1 = CurveElement::y(spec, 1);
        CHECK(y1 * y1 == CurveElement(spec, RatFunc(spec->f[0])));
        UPoly f1 = (UPoly::x() - UPoly(1)) * (UPoly::x() - UPoly(CycScalar::rho(3))) *
                   (UPoly::x() - UPoly(CycScalar::rho(5))) * (UPoly::x() - UPoly(CycScalar::rho(6)));
        CHECK(spec->f[0] == f1);
        auto y2 = CurveElement::y(spec, 2), y4 = CurveElement::y(spec, 4);
        CHECK((y1 * y2) * (y1 * y4) == CurveElement(spec, RatFunc(spec->f[0])) * y2 * y4);
        CHECK(y1 * CurveElement(spec, RatFunc(1)) == y1);
        CHECK_THROWS_AS(CurveElement::y(spec, 3), DomainError);
    }

    TEST_CASE("inverses") {
        auto spec = CurveSpec::macbeath();
        auto x = CurveElement::x(spec), y1 = CurveElement::y(spec, 1);
        CHECK(x.inverse() == CurveElement(spec, RatFunc(1) / RatFunc::x()));
        CHECK(y1.inverse() == y1 * CurveElement(spec, RatFunc(1, spec->f[0])));
        RatFunc q = RatFunc((UPoly::x() - UPoly(CycScalar::rho(4))) * (UPoly::x() - UPoly(CycScalar::rho(5))));
        CHECK(CurveElement(spec, q).inverse() == CurveElement(spec, q.inverse()));
        CHECK_THROWS_AS(CurveElement(spec, RatFunc()).inverse(), DomainError);
    }

    TEST_CASE("function field axioms on random elements") {
        std::mt19937_64 rng(41);
        for (int i = 0; i < 4; ++i) {
            CurveElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * a.inverse() == CurveElement(a.spec(), RatFunc(1)));
        }
    }

    TEST_CASE("sign conjugates multiply to a scalar") {
        std::mt19937_64 rng(43);
        CurveElement a = random_element(rng);
        CurveElement n = a;
        for (int m = 1; m < 8; ++m) n = n * a.sign_conjugate(m);
        CHECK(n.is_scalar());
    }

    TEST_CASE("interpretation") {
        auto g = gens();
        auto vars = CurveSpec::macbeath()->vars();
        CurveElement e = interpret(Expr::parse("rho^2*y2/x^2", vars), g);
        for (int m = 0; m < 8; ++m)
            CHECK(e.slot(m) == (m == 2 ? RatFunc(CycScalar::rho(2)) / RatFunc::x().pow(2) : RatFunc()));
        CHECK(interpret(Expr::parse("x", vars), g) == g[0]);
        CurveElement u = interpret(Expr::parse("y2*y4/((x - rho^4)*(x - rho^5))", vars), g);
        for (int m = 0; m < 8; ++m) CHECK(u.slot(m).is_zero() == (m != 6));
        CHECK(u.slot(6).is_constant() == false);
    }

    TEST_CASE("interpretation is a ring homomorphism") {
        auto g = gens();
        auto vars = CurveSpec::macbeath()->vars();
        std::vector<std::string> texts{"x + rho*y1", "y2*y4 - 3/x", "(y1 + y2)/(x - 2)", "rho^5*y4^3 + x*y1"};
        for (auto& a : texts)
            for (auto& b : texts) {
                Expr ea = Expr::parse(a, vars), eb = Expr::parse(b, vars);
                CHECK(interpret(ea * eb, g) == interpret(ea, g) * interpret(eb, g));
                CHECK(interpret(ea + eb, g) == interpret(ea, g) + interpret(eb, g));
            }
    }

    TEST_CASE("numeric evaluation matches the expression") {
        auto spec = CurveSpec::macbeath();
        auto g = gens();
        Expr e = Expr::parse("rho*y2*y4/(x^2*(x - rho^4)*(x - rho^5)) + y1", spec->vars());
        CurveElement c = interpret(e, g);
        std::complex<double> x(0.7, 0.3);
        std::array<std::complex<double>, 4> pt{x, std::sqrt(spec->f[0].eval(x)), std::sqrt(spec->f[1].eval(x)),
                                               std::sqrt(spec->f[2].eval(x))};
        auto v = e.eval({pt.begin(), pt.end()});
        CHECK(std::abs(c.eval(pt) - v) < 1e-10 * std::max(1.0, std::abs(v)));
    }

    TEST_CASE("listed maps preserve the curve") {
        auto models = make_models();
        for (int k = 1; k < 6; ++k)
            CHECK(map_preserves_curve(catalog_map(X0, {"X", k}, catalog::weil_map(k)), models).empty());
        for (int j : {1, 2, 4}) CHECK(map_preserves_curve(catalog_map(X0, X0, catalog::involution_a(j)), models).empty());
        CHECK(map_preserves_curve(catalog_map(X0, X0, catalog::rotation_b()), models).empty());
        CHECK(map_preserves_curve(catalog_map(X0, X0, catalog::involution_j(), GaloisElem::conj()), models).empty());
    }

    TEST_CASE("a map onto the wrong quartic is rejected") {
        auto models = make_models();
        auto res = map_preserves_curve(catalog_map(X0, X0, {"x", "y2", "y2", "y4"}), models);
        REQUIRE_FALSE(res.empty());
        bool nonzero = false;
        for (auto& r : res) nonzero |= !r.is_zero();
        CHECK(nonzero);
    }

    TEST_CASE("composition and orders") {
        auto models = make_models();
        SemiMap f1 = catalog_map(X0, {"X", 1}, catalog::weil_map(1));
        SemiMap f2 = catalog_map(X0, {"X", 2}, catalog::weil_map(2));
        CHECK(maps_equal(compose(f1.twisted(GaloisElem(1)), f1), f2, models));
        SemiMap id = SemiMap::identity(X0, catalog::curve_vars());
        SemiMap B = catalog_map(X0, X0, catalog::rotation_b());
        CHECK(maps_equal(compose(id, B), B, models));
        CHECK(map_order(B, 10, models) == std::optional<int>(7));
        SemiMap b7 = B;
        for (int i = 1; i < 7; ++i) b7 = compose(B, b7);
        CHECK(is_identity(b7, models));
        CHECK_THROWS(compose(B, f1));
    }

    TEST_CASE("anticonformal involution") {
        auto models = make_models();
        SemiMap J = catalog_map(X0, X0, catalog::involution_j(), GaloisElem::conj());
        CHECK(is_identity(compose(J, J), models));
        SemiMap B = catalog_map(X0, X0, catalog::rotation_b());
        for (int j : {1, 2, 4})
            CHECK(resolve_conjugation_relation(J, catalog_map(X0, X0, catalog::involution_a(j)), 2, models) ==
                  std::optional<int>(1));
        CHECK(resolve_conjugation_relation(SemiMap::identity(X0, catalog::curve_vars()), B, 7, models) ==
              std::optional<int>(1));
        CHECK(resolve_conjugation_relation(J, B, 7, models) == std::optional<int>(1));
        CHECK_FALSE(maps_equal(compose(J, B), B, models));
    }

    TEST_CASE("Belyi maps") {
        auto models = make_models();
        SemiMap B = catalog_map(X0, X0, catalog::rotation_b());
        SemiMap J = catalog_map(X0, X0, catalog::involution_j(), GaloisElem::conj());
        SemiMap beta = catalog_map(X0, {"P1", 0}, {catalog::belyi_beta()});
        SemiMap delta = catalog_map(X0, {"P1", 0}, {catalog::belyi_delta()});
        SemiMap C = SemiMap::parse({"P1", 0}, {"P1", 0}, {"u"}, {"u"}, GaloisElem::conj());
        CHECK(maps_equal(compose(beta, B), beta, models));
        CHECK(maps_equal(compose(C, compose(beta, J)), delta, models));
    }

    TEST_CASE("semimap json round trip") {
        auto models = make_models();
        SemiMap J = catalog_map(X0, X0, catalog::involution_j(), GaloisElem::conj());
        auto j = J.to_json();
        CHECK(j["twist"] == "conj");
        CHECK(j["components"].size() == 4);
        SemiMap back = SemiMap::from_json(j, X0, X0);
        CHECK(back.twist() == GaloisElem::conj());
        CHECK(maps_equal(back, J, models));
        SemiMap f1 = catalog_map(X0, {"X", 1}, catalog::weil_map(1));
        CHECK(maps_equal(SemiMap::from_json(f1.to_json(), X0, {"X", 1}), f1, models));
    }
}
