#pragma once

#include <map>
#include <string>
#include <vector>

#include "fmd/ratfunc.hpp"

namespace fmd {

using Exponent = std::vector<int>;

// Graded lexicographic order, first variable most significant.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

class MultiPoly {
public:
    using Terms = std::map<Exponent, CycScalar, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    static MultiPoly constant(const std::vector<std::string>& vars, const CycScalar& c);
    static MultiPoly variable(const std::vector<std::string>& vars, int i);
    static MultiPoly variable(const std::vector<std::string>& vars, const std::string& name);
    // p(var_i) from a univariate polynomial
    static MultiPoly from_upoly(const std::vector<std::string>& vars, int i, const UPoly& p);

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return int(vars_.size()); }
    int var_index(const std::string& name) const;
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    CycScalar constant_term() const;
    CycScalar coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const CycScalar& c);
    size_t size() const { return terms_.size(); }
    int total_degree() const;
    int degree_in(int v) const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const CycScalar& s);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const CycScalar& s) { return a *= s; }
    friend MultiPoly operator*(const CycScalar& s, MultiPoly a) { return a *= s; }
    // Only constant divisors are allowed.
    friend MultiPoly operator/(const MultiPoly& a, const MultiPoly& b);
    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(terms_ == o.terms_); }
    MultiPoly pow(int e) const;

    MultiPoly twisted(const GaloisElem& g) const;
    // Same polynomial over a different variable list (names must be present).
    MultiPoly rebased(const std::vector<std::string>& vars) const;
    // Exact division by d(var_v); empty optional-like flag on failure.
    bool divides_by(const UPoly& d, int v, MultiPoly& quotient) const;
    // Scale to coprime integral coordinates; constant term (or the leading
    // term when there is none) gets a positive first nonzero coordinate.
    MultiPoly primitive_integral() const;
    FieldLevel field_level() const;

    std::complex<double> eval(const std::vector<std::complex<double>>& pt, int embedding = 1) const;
    // |P(pt)| and sum of |term(pt)|
    std::pair<double, double> eval_with_scale(const std::vector<std::complex<double>>& pt) const;

    nlohmann::json to_json() const;
    static MultiPoly from_json(const nlohmann::json& j);
    std::string to_text(const std::string& sym = "rho") const;
    static MultiPoly parse(const std::string& text, const std::vector<std::string>& vars);

    template <class A, class OneF, class ConstF>
    A substitute(const std::vector<A>& values, OneF one, ConstF lift) const;

private:
    void check_compatible(const MultiPoly& o) const;
    std::vector<std::string> vars_;
    Terms terms_;
};

MultiPoly trace_poly(const Subgroup& h, const MultiPoly& p);

// Horner-like evaluation: powers of each value are cached, and terms sharing
// all but the first variable are grouped into a univariate evaluation.
template <class A, class OneF, class ConstF>
A MultiPoly::substitute(const std::vector<A>& values, OneF one, ConstF lift) const {
    if (int(values.size()) != nvars()) throw DomainError("substitute: arity mismatch");
    std::vector<std::vector<A>> pw(values.size());
    auto power = [&](int v, int e) -> const A& {
        auto& cache = pw[v];
        if (cache.empty()) cache.push_back(one());
        while (int(cache.size()) <= e) cache.push_back(cache.back() * values[v]);
        return cache[e];
    };
    std::map<Exponent, std::map<int, CycScalar>> groups;
    for (auto& [e, c] : terms_) {
        Exponent rest = e;
        int e0 = rest.empty() ? 0 : rest[0];
        if (!rest.empty()) rest[0] = 0;
        groups[rest][e0] += c;
    }
    A acc = lift(CycScalar());
    for (auto& [rest, uni] : groups) {
        A inner = lift(CycScalar());
        if (!rest.empty()) {
            int top = uni.rbegin()->first;
            for (int k = top; k >= 0; --k) {
                inner = inner * values[0];
                auto it = uni.find(k);
                if (it != uni.end()) inner = inner + lift(it->second);
            }
        } else {
            inner = lift(uni.begin()->second);
        }
        for (int v = 1; v < int(rest.size()); ++v)
            if (rest[v] > 0) inner = inner * power(v, rest[v]);
        acc = acc + inner;
    }
    return acc;
}

}  // namespace fmd
