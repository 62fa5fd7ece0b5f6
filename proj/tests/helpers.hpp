#pragma once

#include <random>

#include "fmd/cyclotomic.hpp"
#include "fmd/multipoly.hpp"

namespace testing {

inline fmd::CycScalar random_scalar(std::mt19937_64& rng, int range = 9) {
    std::array<mpq_class, 6> c;
    for (auto& v : c) {
        long n = long(rng() % (2 * range + 1)) - range;
        long d = long(rng() % 4) + 1;
        v = mpq_class(n, d);
        v.canonicalize();
    }
    return fmd::CycScalar::from_coeffs(c);
}

inline fmd::CycScalar random_nonzero(std::mt19937_64& rng) {
    fmd::CycScalar a;
    do a = random_scalar(rng);
    while (a.is_zero());
    return a;
}

inline fmd::MultiPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int terms, int maxexp) {
    fmd::MultiPoly p(vars);
    for (int i = 0; i < terms; ++i) {
        fmd::Exponent e(vars.size());
        for (auto& x : e) x = int(rng() % (maxexp + 1));
        p.add_term(e, random_scalar(rng, 5));
    }
    return p;
}

}  // namespace testing
