#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace fmd {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of Q(zeta_7) in the power basis 1, r, ..., r^5, stored as an integer
// vector over a positive common denominator with no common factor.
class CycScalar {
public:
    CycScalar();
    CycScalar(long v);
    explicit CycScalar(const mpq_class& q);
    static CycScalar from_coeffs(const std::array<mpq_class, 6>& c);
    static CycScalar rho(int k = 1);

    mpq_class coeff(int i) const;
    std::array<mpq_class, 6> coeffs() const;
    const mpz_class& num(int i) const { return n_[i]; }
    const mpz_class& den() const { return d_; }

    bool is_zero() const;
    bool is_rational() const;
    bool is_one() const;

    CycScalar operator-() const;
    CycScalar& operator+=(const CycScalar& o);
    CycScalar& operator-=(const CycScalar& o);
    CycScalar& operator*=(const CycScalar& o);
    CycScalar& operator/=(const CycScalar& o);
    friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
    friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
    friend CycScalar operator/(CycScalar a, const CycScalar& b) { return a /= b; }
    bool operator==(const CycScalar& o) const;
    bool operator!=(const CycScalar& o) const { return !(*this == o); }
    // Total order on canonical forms; only for use as a map key.
    bool operator<(const CycScalar& o) const;

    CycScalar inverse() const;
    CycScalar pow(long e) const;
    // Image under r -> r^k, k a unit mod 7.
    CycScalar apply_automorphism(int k) const;
    std::complex<double> embed(int k = 1) const;

    std::string to_text(const std::string& sym = "r") const;
    nlohmann::json to_json() const;
    static CycScalar from_json(const nlohmann::json& j);
    static CycScalar parse(const std::string& s);

private:
    void normalize();
    std::array<mpz_class, 6> n_;
    mpz_class d_;
};

// Element sigma^k of Gal(Q(zeta_7)/Q) with sigma(r) = r^3; k taken mod 6.
struct GaloisElem {
    int k = 0;
    GaloisElem() = default;
    explicit GaloisElem(int e) : k(((e % 6) + 6) % 6) {}
    static GaloisElem identity() { return GaloisElem(0); }
    static GaloisElem sigma() { return GaloisElem(1); }
    static GaloisElem tau() { return GaloisElem(2); }
    static GaloisElem conj() { return GaloisElem(3); }
    // exponent m with r -> r^m
    int power() const;
    GaloisElem operator*(const GaloisElem& o) const { return GaloisElem(k + o.k); }
    GaloisElem inverse() const { return GaloisElem(-k); }
    bool operator==(const GaloisElem& o) const { return k == o.k; }
    bool operator!=(const GaloisElem& o) const { return k != o.k; }
    bool operator<(const GaloisElem& o) const { return k < o.k; }
    CycScalar operator()(const CycScalar& a) const { return a.apply_automorphism(power()); }
    std::string name() const;
    static GaloisElem parse(const std::string& s);
};

enum class FieldLevel { Q, QSqrtMinus7, QReal, Q7 };
std::string field_level_tag(FieldLevel f);

// Subgroups of the cyclic Galois group of order 6.
class Subgroup {
public:
    static Subgroup trivial() { return Subgroup(0); }
    static Subgroup order2() { return Subgroup(3); }
    static Subgroup order3() { return Subgroup(2); }
    static Subgroup whole() { return Subgroup(1); }
    // Validates closure; throws DomainError for a non-subgroup.
    static Subgroup from_elements(const std::vector<GaloisElem>& els);
    std::vector<GaloisElem> elements() const;
    GaloisElem generator() const { return GaloisElem(gen_); }
    int order() const;
    FieldLevel fixed_field() const;

private:
    explicit Subgroup(int gen) : gen_(gen) {}
    int gen_;
};

CycScalar relative_trace(const Subgroup& h, const CycScalar& a);
bool subfield_test(const CycScalar& a, FieldLevel f);
FieldLevel field_of(const CycScalar& a);

// sqrt(-7) = 2(r + r^2 + r^4) + 1
CycScalar sqrt_minus7();

// Exact square root in Q(zeta_7) when one exists, located numerically and
// confirmed by squaring.
bool try_sqrt(const CycScalar& a, CycScalar& out);

}  // namespace fmd
