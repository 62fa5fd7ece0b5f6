#include "fmd/catalog.hpp"

#include <stdexcept>

namespace fmd::catalog {

namespace {
#include "catalog_data.inc"
}

const std::vector<std::string>& curve_vars() {
    static const std::vector<std::string> v{"x", "y1", "y2", "y4"};
    return v;
}

const std::vector<std::string>& z2_vars() {
    static const std::vector<std::string> v{"t1", "t2", "t3", "t7", "t11"};
    return v;
}

const std::vector<std::string>& z1_vars() {
    static const std::vector<std::string> v{"t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9", "t10", "t11", "t12"};
    return v;
}

std::vector<std::string> weil_map(int k) {
    const std::string u = "y2*y4/((x - rho^4)*(x - rho^5))";
    const std::string ux = "rho*y2*y4/(x^2*(x - rho^4)*(x - rho^5))";
    switch (k) {
        case 1: return {"1/x", "y1/x^2", ux, "rho^2*y2/x^2"};
        case 2: return {"x", "y1", "y4", u};
        case 3: return {"1/x", "y1/x^2", "rho^2*y2/x^2", "rho^4*y4/x^2"};
        case 4: return {"x", "y1", u, "y2"};
        case 5: return {"1/x", "y1/x^2", "rho^4*y4/x^2", ux};
    }
    throw std::out_of_range("weil map index");
}

std::vector<std::string> involution_a(int j) {
    switch (j) {
        case 1: return {"x", "-y1", "y2", "y4"};
        case 2: return {"x", "y1", "-y2", "y4"};
        case 4: return {"x", "y1", "y2", "-y4"};
    }
    throw std::out_of_range("involution index");
}

std::vector<std::string> rotation_b() {
    return {"rho*x", "rho^2*y2", "rho^2*y4", "rho^2*y1*y2/((x - rho^5)*(x - rho^6))"};
}

std::vector<std::string> involution_j() { return {"1/x", "y1/x^2", "rho^5*y2/x^2", "rho^3*y4/x^2"}; }

std::string belyi_beta() { return "x^7"; }
std::string belyi_delta() { return "1/x^7"; }
std::string belyi_beta_star() { return "(t1/3)^7"; }

std::vector<std::string> l1_star() {
    return {"3*x", "3*y1", "y2 + y4 + y2*y4/((x - rho^4)*(x - rho^5))",
            "y2^2 + y4^2 + y2^2*y4^2/((x - rho^4)^2*(x - rho^5)^2)",
            "y2^3 + y4^3 + y2^3*y4^3/((x - rho^4)^3*(x - rho^5)^3)"};
}

std::string x3_numerator() { return kX3Num; }
std::string x3_denominator() { return kX3Den; }
std::string x4_numerator() { return kX4Num; }
std::string x4_denominator() { return kX4Den; }

std::string p1() {
    return "-81 + 27*(1 + (rho + rho^2 + rho^4))*t1 + 9*t1^2 - 3*(rho + rho^2 + rho^4)*t1^3 - t1^4 + 9*t2^2";
}

std::string p2() {
    return "27 + 27*(rho + rho^2 + rho^4) - 18*t1 - 3*(1 + (rho + rho^2 + rho^4))*t1^2 - 2*t1^3 - t1^4 + 27*t7";
}

std::string appendix_p3() { return kP3; }
std::string appendix_p4() { return kP4; }

std::vector<Equation> z1_relations() {
    return {{"t4", "t3"}, {"3*t5", "t1^2"}, {"3*t6", "t2^2"}, {"t8", "t9"},
            {"9*t9", "t1^3"}, {"9*t10", "t2^3"}, {"t12", "t11"}};
}

std::vector<std::string> step1_invariants() {
    return {"x1 + w1 + v1",       "x2 + w2 + v2",       "x3 + w3 + v3",       "x4 + w4 + v4",
            "x1^2 + w1^2 + v1^2", "x2^2 + w2^2 + v2^2", "x3^2 + w3^2 + v3^2", "x4^2 + w4^2 + v4^2",
            "x1^3 + w1^3 + v1^3", "x2^3 + w2^3 + v2^3", "x3^3 + w3^3 + v3^3", "x4^3 + w4^3 + v4^3"};
}

std::vector<std::string> step2_invariants() {
    return {"t1 + s1",     "t2 + s2",     "t3 + s3",     "t7 + s7",     "t11 + s11",
            "t1^2 + s1^2", "t2^2 + s2^2", "t3^2 + s3^2", "t7^2 + s7^2", "t11^2 + s11^2"};
}

std::vector<std::string> six_block_candidates() {
    std::vector<std::string> out;
    for (int d = 1; d <= 3; ++d)
        for (int j = 1; j <= 4; ++j) {
            std::string s;
            for (const char* b : {"x", "z", "w", "u", "v", "r"}) {
                if (!s.empty()) s += " + ";
                s += b + std::to_string(j);
                if (d > 1) s += "^" + std::to_string(d);
            }
            out.push_back(s);
        }
    return out;
}

std::vector<std::string> psi2_listing() { return {"q1", "q2", "q3", "q4", "q5", "q6", "q7q8", "q9", "q10"}; }

std::vector<std::vector<int>> kstar_generators() { return {{1, 3, 7}, {2, 3, 5}, {1, 2, 4}}; }

std::vector<std::array<int, 6>> homology_invariants() {
    return {{{2, 0, 0, 0, 0, 0}}, {{0, 2, 0, 0, 0, 0}}, {{0, 0, 2, 0, 0, 0}}, {{0, 0, 0, 2, 0, 0}},
            {{0, 0, 0, 0, 2, 0}}, {{0, 0, 0, 0, 0, 2}}, {{1, 1, 0, 0, 1, 0}}, {{1, 1, 1, 0, 0, 1}},
            {{1, 0, 0, 1, 0, 1}}, {{1, 0, 1, 1, 1, 0}}, {{0, 1, 0, 1, 1, 1}}, {{0, 1, 1, 1, 0, 0}},
            {{0, 0, 1, 0, 1, 1}}};
}

std::vector<Equation> homology_relations() {
    return {{"t6*t10", "t9*t13"},       {"t6*t7*t12", "t8*t11"},   {"t5*t9*t12", "t10*t11"},
            {"t5*t8", "t7*t13"},        {"t5*t6*t12", "t11*t13"},  {"t4*t8", "t9*t12"},
            {"t4*t7*t13", "t10*t11"},   {"t4*t6*t7", "t9*t11"},    {"t3*t11", "t12*t13"},
            {"t3*t6*t7", "t8*t13"},     {"t3*t5*t9", "t10*t13"},   {"t3*t5*t6", "t13^2"},
            {"t3*t4*t7", "t10*t12"},    {"t2*t10", "t7*t12"},      {"t2*t9*t13", "t8*t11"},
            {"t2*t5*t9", "t7*t11"},     {"t2*t4*t13", "t11*t12"},  {"t2*t4*t5*t6", "t11^2"},
            {"t2*t3*t9", "t8*t12"},     {"t2*t3*t4", "t12^2"},     {"t1*t12*t13", "t8*t10"},
            {"t1*t11", "t7*t9"},        {"t1*t6*t12", "t8*t9"},    {"t1*t5*t12", "t7*t10"},
            {"t1*t4*t13", "t9*t10"},    {"t1*t4*t6", "t9^2"},      {"t1*t3*t4*t5", "t10^2"},
            {"t1*t2*t13", "t7*t8"},     {"t1*t2*t5", "t7^2"},      {"t1*t2*t3*t6", "t8^2"}};
}

}  // namespace fmd::catalog
