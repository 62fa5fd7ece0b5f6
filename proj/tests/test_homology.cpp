#include <doctest.h>

#include <set>

#include "fmd/catalog.hpp"
#include "fmd/homology.hpp"
#include "fmd/numerics.hpp"

using namespace fmd;

namespace {
std::vector<DeckVec> kstar() {
    std::vector<DeckVec> k;
    for (auto& g : catalog::kstar_generators()) k.push_back(DeckVec::of(g));
    return k;
}
std::array<CycScalar, 7> lambda() { return CurveSpec::macbeath()->lambda; }
}  // namespace

TEST_SUITE("homology-cover") {
    TEST_CASE("deck group arithmetic") {
        CHECK((DeckVec::a(1) * DeckVec::a(1)).is_identity());
        CHECK(DeckVec::of({1, 2, 3, 4, 5, 6, 7}).is_identity());
        CHECK(DeckVec::a(7) == DeckVec::of({1, 2, 3, 4, 5, 6}));
        CHECK(DeckVec::a(1) != DeckVec::a(2));
        CHECK(deck_group().size() == 64);
        CHECK(DeckVec::of({1, 3, 7}).name() == "a1a3a7");
        CHECK(DeckVec().name() == "e");
        CHECK(DeckVec::of({1, 2, 3, 4, 5, 6}).single_index() == 7);
    }

    TEST_CASE("deck group is abelian of exponent two") {
        auto g = deck_group();
        for (auto& a : g)
            for (auto& b : g) {
                CHECK(a * b == b * a);
                CHECK((a * a).is_identity());
            }
    }

    TEST_CASE("freeness") {
        auto k = kstar();
        CHECK(span(k).size() == 8);
        auto f = freeness_check(k);
        CHECK(f.free);
        for (auto& e : span(k)) {
            if (e.is_identity()) continue;
            int w = __builtin_popcount(e.bits());
            CHECK((w == 3 || w == 4));
        }
        auto nf = freeness_check({DeckVec::a(1)});
        CHECK_FALSE(nf.free);
        REQUIRE(nf.witness.has_value());
        CHECK(*nf.witness == DeckVec::a(1));
        CHECK(freeness_check({}).free);
    }

    TEST_CASE("normalization by the shift") {
        CHECK(normalization_check(kstar()));
        CHECK(DeckVec::of({1, 3, 7}).shifted() == DeckVec::of({1, 2, 4}));
        CHECK_FALSE(normalization_check({DeckVec::of({1, 2})}));
        CHECK(DeckVec::a(7).shifted() == DeckVec::a(1));
    }

    TEST_CASE("elliptic triples") {
        auto k = kstar();
        auto spec = CurveSpec::macbeath();
        auto t23 = elliptic_triple(k, 2, 3, lambda());
        CHECK(t23.r == 5);
        CHECK(t23.quartic == spec->f[0]);
        auto t12 = elliptic_triple(k, 1, 2, lambda());
        CHECK(t12.r == 4);
        CHECK(t12.quartic == spec->f[1]);
        auto t13 = elliptic_triple(k, 1, 3, lambda());
        CHECK(t13.r == 7);
        CHECK(t13.quartic == spec->f[2]);
        for (int i = 1; i <= 7; ++i)
            for (int j = i + 1; j <= 7; ++j) {
                auto a = elliptic_triple(k, i, j, lambda());
                auto b = elliptic_triple(k, j, i, lambda());
                CHECK(a.r == b.r);
                CHECK(a.quartic.degree() == 4);
                std::set<int> all{i, j, a.r};
                for (int q : a.quartic_roots) all.insert(q);
                CHECK(all.size() == 7);
            }
        CHECK_THROWS_AS(elliptic_triple({DeckVec::a(1)}, 2, 3, lambda()), DomainError);
    }

    TEST_CASE("invariant monomials") {
        auto k = kstar();
        CHECK(invariance_check({1, 1, 0, 0, 1, 0}, k));
        CHECK_FALSE(invariance_check({1, 0, 0, 0, 0, 0}, k));
        for (auto& m : catalog::homology_invariants()) CHECK(invariance_check(m, k));
        CHECK(invariance_check({2, 0, 0, 0, 0, 0}, k));
    }

    TEST_CASE("monomial relations are exponent identities") {
        auto t = catalog::homology_invariants();
        auto mul = [&](std::vector<int> idx) {
            std::array<int, 6> e{};
            for (int i : idx)
                for (int v = 0; v < 6; ++v) e[v] += t[i - 1][v];
            return e;
        };
        CHECK(mul({6, 10}) == mul({9, 13}));
        CHECK(mul({6, 10}) == std::array<int, 6>{1, 0, 1, 1, 1, 2});
        CHECK(mul({1, 2, 5}) == mul({7, 7}));
        CHECK(mul({7, 7}) == std::array<int, 6>{2, 2, 0, 0, 2, 0});
    }

    TEST_CASE("relation check on the displayed model") {
        auto checks = relation_check(HumbertSpec::displayed());
        CHECK(checks.size() == 35);
        for (auto& c : checks) CHECK_MESSAGE(c.pass, c.text);
        auto model = emit_affine_model(HumbertSpec::displayed());
        CHECK(model[0] == MultiPoly::parse("t1 + t2 + t3", homology_t_vars()));
    }

    TEST_CASE("displayed branch values") {
        auto h = HumbertSpec::displayed();
        auto lam = lambda();
        REQUIRE(h.branch_value(1).has_value());
        CHECK(*h.branch_value(1) == lam[0]);
        for (int j = 4; j <= 7; ++j) {
            auto b = h.branch_value(j);
            REQUIRE(b.has_value());
            CHECK(*b == lam[j - 1]);
        }
        auto c = HumbertSpec::corrected();
        for (int j = 1; j <= 7; ++j) {
            auto b = c.branch_value(j);
            REQUIRE(b.has_value());
            CHECK(*b == lam[j - 1]);
        }
    }

    TEST_CASE("lift constants") {
        auto bad = solve_lift_constants(HumbertSpec::displayed());
        CHECK_FALSE(bad.consistent);
        CHECK_FALSE(bad.failing.empty());
        auto good = solve_lift_constants(HumbertSpec::corrected());
        REQUIRE(good.consistent);
        CHECK(good.c_squared[0] == CycScalar(1));
        REQUIRE(good.c_exact[0].has_value());
        CHECK(*good.c_exact[0] == CycScalar(1));
        CHECK(good.quadrics_preserved);
        CHECK(good.rotates_cover);
        CHECK(good.seventh_power_scalar);
        for (int j = 0; j < 7; ++j) {
            auto c = good.c_numeric[j];
            CHECK(std::abs(c * c - embed(good.c_squared[j])) < 1e-10);
        }
    }

    TEST_CASE("affine model on sampled points") {
        auto h = HumbertSpec::displayed();
        auto model = emit_affine_model(h);
        CHECK(model.size() == 35);
        auto t = catalog::homology_invariants();
        for (auto& x : humbert_samples(h, 5, 0)) {
            for (int k = 3; k <= 7; ++k) {
                auto q = embed(h.quadric_coeff(k)) * x[0] * x[0] + x[1] * x[1] + x[k - 1] * x[k - 1];
                CHECK(std::abs(q) < 1e-9);
            }
            std::vector<std::complex<double>> tv;
            for (auto& m : t) {
                std::complex<double> v = 1;
                for (int i = 0; i < 6; ++i) v *= std::pow(x[i], m[i]);
                tv.push_back(v);
            }
            for (auto& p : model) CHECK(poly_residual(p, tv) < 1e-9);
        }
    }

    TEST_CASE("nullspace") {
        std::vector<std::vector<CycScalar>> rows{{CycScalar(1), CycScalar(2), CycScalar(3)},
                                                 {CycScalar(2), CycScalar(4), CycScalar(6)}};
        int rank = 0;
        auto ns = nullspace(rows, 3, &rank);
        CHECK(rank == 1);
        CHECK(ns.size() == 2);
        for (auto& v : ns) CHECK((v[0] + CycScalar(2) * v[1] + CycScalar(3) * v[2]).is_zero());
    }
}
