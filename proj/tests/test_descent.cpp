#include <doctest.h>

#include "fmd/catalog.hpp"
#include "fmd/descent.hpp"
#include "helpers.hpp"

using namespace fmd;

namespace {
const ModelRef X0{"X", 0};

PermAction step1_action() { return PermAction{{"x", "w", "v"}, {"1", "2", "3", "4"}}; }
PermAction step2_action() { return PermAction{{"t", "s"}, {"1", "2", "3", "7", "11"}}; }
}  // namespace

TEST_SUITE("weil-descent") {
    TEST_CASE("listed datum satisfies the cocycle condition") {
        auto models = make_models();
        auto res = cocycle_check(listed_datum(), models);
        CHECK(res.size() == 36);
        for (auto& r : res) CHECK(r.ok);
    }

    TEST_CASE("mutation of f_sigma breaks the cocycle") {
        auto models = make_models();
        WeilDatum d = listed_datum();
        auto comps = catalog::weil_map(1);
        comps[2] = "y2*y4/(x^2*(x - rho^4)*(x - rho^5))";
        d.maps.erase(1);
        d.maps.emplace(1, catalog_map(X0, {"X", 1}, comps));
        int failed = 0;
        bool residual = false;
        for (auto& r : cocycle_check(d, models)) {
            if (r.ok) continue;
            ++failed;
            for (auto& e : r.residual) residual |= !e.is_zero();
        }
        CHECK(failed > 0);
        CHECK(residual);
    }

    TEST_CASE("generated datum") {
        auto models = make_models();
        WeilDatum d = listed_datum();
        WeilDatum g = generate_datum(d.at(GaloisElem(1)), d.group);
        CHECK(maps_equal(g.at(GaloisElem(3)), catalog_map(X0, {"X", 3}, catalog::weil_map(3)), models));
        REQUIRE(g.closing.has_value());
        CHECK(is_identity(*g.closing, models));
        for (auto& r : cocycle_check(g, models)) CHECK(r.ok);

        WeilDatum t = generate_datum(SemiMap::identity(X0, catalog::curve_vars()), {GaloisElem()});
        CHECK(t.maps.size() == 1);
        CHECK(is_identity(t.at(GaloisElem()), models));
        REQUIRE(t.closing.has_value());
        CHECK(is_identity(*t.closing, models));
        for (auto& r : cocycle_check(t, models)) CHECK(r.ok);
    }

    TEST_CASE("power sums reproduce the listed invariants") {
        auto a1 = step1_action();
        InvariantSet s1 = power_sum_invariants(a1, 3, "t");
        auto listed1 = catalog::step1_invariants();
        REQUIRE(s1.polys.size() == listed1.size());
        for (size_t i = 0; i < listed1.size(); ++i) CHECK(s1.polys[i] == MultiPoly::parse(listed1[i], a1.var_names()));
        auto a2 = step2_action();
        InvariantSet s2 = power_sum_invariants(a2, 2, "q");
        auto listed2 = catalog::step2_invariants();
        REQUIRE(s2.polys.size() == listed2.size());
        for (size_t i = 0; i < listed2.size(); ++i) CHECK(s2.polys[i] == MultiPoly::parse(listed2[i], a2.var_names()));
    }

    TEST_CASE("every power sum is invariant") {
        for (auto a : {step1_action(), step2_action(), PermAction{{"a", "b", "c", "d", "e"}, {"1", "2"}}}) {
            auto s = power_sum_invariants(a, 3, "p");
            for (auto& p : s.polys) {
                CHECK(is_invariant(p, a));
                CHECK(a.act(p) == p);
            }
        }
        auto a = step1_action();
        CHECK_FALSE(is_invariant(MultiPoly::variable(a.var_names(), 0), a));
    }

    TEST_CASE("block action has order equal to the block count") {
        auto a = step1_action();
        std::mt19937_64 rng(47);
        MultiPoly p = testing::random_poly(rng, a.var_names(), 6, 2);
        CHECK(a.act(p, 3) == p);
        CHECK(a.act(a.act(p), 2) == p);
        CHECK(a.act(p) != p);
    }

    TEST_CASE("separation") {
        auto a = step1_action();
        auto rep = separation_test(power_sum_invariants(a, 3, "t"), 0, 12);
        CHECK(rep.orbit_consistent);
        CHECK(rep.random_points_separated);
        InvariantSet constant{a, {"c"}, {MultiPoly::constant(a.var_names(), CycScalar(5))}};
        auto crep = separation_test(constant, 0, 6);
        CHECK_FALSE(crep.random_points_separated);
        CHECK(crep.verdict == "does not separate random orbits");
    }

    TEST_CASE("trace descent") {
        auto vars = catalog::z2_vars();
        MultiPoly q = MultiPoly::parse("t1^2 + (rho + rho^2 + rho^4)*t3 - 4", vars);
        auto d = descend_relation(q, Subgroup::order3());
        REQUIRE(d.size() == 3);
        CHECK(d[0] == q * CycScalar(3));
        std::mt19937_64 rng(53);
        MultiPoly p = testing::random_poly(rng, vars, 8, 2);
        for (auto& r : descend_relation(p, Subgroup::order3())) {
            CHECK(r.field_level() != FieldLevel::Q7);
            for (auto& [e, c] : r.terms()) CHECK(subfield_test(c, FieldLevel::QSqrtMinus7));
        }
    }

    TEST_CASE("polynomial comparison localizes differences") {
        auto vars = catalog::z2_vars();
        MultiPoly a = MultiPoly::parse("t1^2 + 2*t3 - 4", vars);
        MultiPoly b = MultiPoly::parse("3*t1^2 + 6*t3 - 12", vars);
        auto c = compare_polys(a, b);
        CHECK(c.equal_up_to_scale);
        CHECK(c.scale == CycScalar(3));
        MultiPoly e = MultiPoly::parse("3*t1^2 + 7*t3 - 12", vars);
        auto ce = compare_polys(a, e);
        CHECK_FALSE(ce.equal_up_to_scale);
        REQUIRE(ce.mismatches.size() == 1);
        CHECK(ce.mismatches[0].exp == MultiPoly::variable(vars, "t3").terms().begin()->first);
    }

    TEST_CASE("first-step inverse and round trip") {
        auto spec = CurveSpec::macbeath();
        Step1Inverse inv = solve_inverse_step1(*spec);
        auto models = make_models();
        auto zv = catalog::z2_vars();
        CHECK(expand(inv.inverse.components()[0], zv) == MultiPoly::parse("t1/3", zv));
        CHECK(expand(inv.inverse.components()[1], zv) == MultiPoly::parse("t2/3", zv));
        CHECK(is_identity(compose(inv.inverse, l1_star_map()), models));
        MultiPoly n3 = MultiPoly::parse(catalog::x3_numerator(), zv), d3 = MultiPoly::parse(catalog::x3_denominator(), zv);
        CHECK(n3 * inv.x3_den == inv.x3_num * d3);
    }
}
