#include <doctest.h>

#include "fmd/cyclotomic.hpp"
#include "helpers.hpp"

using namespace fmd;

TEST_SUITE("cyclotomic") {
    TEST_CASE("zeta times the canonical zeta^6 is 1") {
        CycScalar z = CycScalar::rho(1);
        CycScalar z6 = -(CycScalar(1) + z + z.pow(2) + z.pow(3) + z.pow(4) + z.pow(5));
        CHECK(z6 == CycScalar::rho(6));
        CHECK(z * z6 == CycScalar(1));
        CHECK(z.pow(7) == CycScalar(1));
    }

    TEST_CASE("sum of all powers vanishes") {
        CycScalar s;
        for (int k = 0; k < 7; ++k) s += CycScalar::rho(k);
        CHECK(s.is_zero());
    }

    TEST_CASE("inverse of zeta - 1") {
        CycScalar a = CycScalar::rho(1) - CycScalar(1);
        CycScalar v = CycScalar(1) / a;
        CHECK(v * a == CycScalar(1));
        CHECK(std::abs(v.embed(1) - 1.0 / (a.embed(1))) < 1e-12);
    }

    TEST_CASE("division by zero is a domain error") {
        CHECK_THROWS_AS(CycScalar(1) / CycScalar(), DomainError);
    }

    TEST_CASE("Galois action on zeta") {
        CHECK(GaloisElem::sigma()(CycScalar::rho(1)) == CycScalar::rho(3));
        CHECK(GaloisElem(2)(CycScalar::rho(1)) == CycScalar::rho(2));
        CHECK(GaloisElem::conj()(CycScalar::rho(1)) == CycScalar::rho(6));
        std::mt19937_64 rng(7);
        for (int i = 0; i < 20; ++i) {
            CycScalar a = testing::random_scalar(rng);
            CHECK(GaloisElem(6)(a) == a);
        }
    }

    TEST_CASE("sigma is a field automorphism of order 6") {
        std::mt19937_64 rng(11);
        GaloisElem s = GaloisElem::sigma();
        for (int i = 0; i < 30; ++i) {
            CycScalar a = testing::random_scalar(rng), b = testing::random_scalar(rng);
            CHECK(s(a * b) == s(a) * s(b));
            CHECK(s(a + b) == s(a) + s(b));
            CycScalar c = a;
            for (int k = 0; k < 6; ++k) c = s(c);
            CHECK(c == a);
        }
        CycScalar z = CycScalar::rho(1), c = z;
        int order = 0;
        do {
            c = s(c);
            ++order;
        } while (c != z);
        CHECK(order == 6);
    }

    TEST_CASE("field axioms on random samples") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 30; ++i) {
            CycScalar a = testing::random_scalar(rng), b = testing::random_scalar(rng), c = testing::random_scalar(rng);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            if (!a.is_zero()) CHECK(a * a.inverse() == CycScalar(1));
        }
    }

    TEST_CASE("multiplication agrees with the complex embedding") {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 20; ++i) {
            CycScalar a = testing::random_scalar(rng), b = testing::random_scalar(rng);
            for (int k : {1, 2, 3}) {
                auto lhs = (a * b).embed(k), rhs = a.embed(k) * b.embed(k);
                CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
            }
        }
    }

    TEST_CASE("relative traces") {
        CycScalar z = CycScalar::rho(1);
        CHECK(relative_trace(Subgroup::whole(), z) == CycScalar(-1));
        CHECK(relative_trace(Subgroup::order3(), z) == CycScalar::rho(1) + CycScalar::rho(2) + CycScalar::rho(4));
        std::mt19937_64 rng(13);
        for (int i = 0; i < 20; ++i) {
            CycScalar a = testing::random_scalar(rng);
            CHECK(relative_trace(Subgroup::trivial(), a) == a);
            CycScalar tn = relative_trace(Subgroup::order3(), a);
            CHECK(GaloisElem::tau()(tn) == tn);
            CHECK(relative_trace(Subgroup::whole(), a).is_rational());
        }
    }

    TEST_CASE("non-subgroups are rejected") {
        CHECK_THROWS_AS(Subgroup::from_elements({GaloisElem(0), GaloisElem(1)}), DomainError);
        CHECK(Subgroup::from_elements({GaloisElem(0), GaloisElem(2), GaloisElem(4)}).order() == 3);
    }

    TEST_CASE("subfield tests") {
        CycScalar w = CycScalar::rho(1) + CycScalar::rho(2) + CycScalar::rho(4);
        CHECK(subfield_test(w, FieldLevel::QSqrtMinus7));
        CHECK_FALSE(subfield_test(w, FieldLevel::Q));
        CHECK_FALSE(subfield_test(CycScalar::rho(1), FieldLevel::QSqrtMinus7));
        CHECK(subfield_test(CycScalar::rho(1), FieldLevel::Q7));
        CycScalar s = w * CycScalar(2) + CycScalar(1);
        CHECK(s == sqrt_minus7());
        CHECK(subfield_test(s * s, FieldLevel::Q));
        CHECK(s * s == CycScalar(-7));
        CHECK(std::abs(s.embed(1) * s.embed(1) + 7.0) < 1e-12);
        CHECK(field_of(CycScalar::rho(1) + CycScalar::rho(6)) == FieldLevel::QReal);
    }

    TEST_CASE("text round trip") {
        std::mt19937_64 rng(17);
        for (int i = 0; i < 30; ++i) {
            CycScalar a = testing::random_scalar(rng);
            CHECK(CycScalar::parse(a.to_text("r")) == a);
            CHECK(CycScalar::from_json(a.to_json()) == a);
        }
        CHECK(CycScalar::parse("1/2 - 3*r^2") == CycScalar(mpq_class(1, 2)) - CycScalar(3) * CycScalar::rho(2));
        CHECK(CycScalar(mpq_class(1, 2)).to_json()[0] == "1/2");
        CHECK_THROWS_AS(CycScalar::parse("1 +* r"), ParseError);
    }

    TEST_CASE("exact square roots") {
        CycScalar out;
        CycScalar a = CycScalar::rho(1) * CycScalar(3) + CycScalar(mpq_class(1, 2));
        REQUIRE(try_sqrt(a * a, out));
        CHECK(out * out == a * a);
        CHECK_FALSE(try_sqrt(CycScalar(2), out));
        CHECK(try_sqrt(CycScalar(-7), out));
        CHECK(out * out == CycScalar(-7));
    }

    TEST_CASE("Galois element names") {
        CHECK(GaloisElem(3).name() == "conj");
        CHECK(GaloisElem(2).name() == "sigma^2");
        CHECK(GaloisElem::parse("sigma^5") == GaloisElem(5));
        CHECK(GaloisElem::parse("conj") == GaloisElem(3));
    }
}
