#pragma once

#include <vector>

#include "fmd/cyclotomic.hpp"

namespace fmd {

inline constexpr int kMaxDegree = 4096;

// Dense univariate polynomial over Q(zeta_7), coefficients low to high.
class UPoly {
public:
    UPoly() = default;
    UPoly(const CycScalar& c);
    UPoly(long c) : UPoly(CycScalar(c)) {}
    explicit UPoly(std::vector<CycScalar> c);
    static UPoly x();
    static UPoly monomial(const CycScalar& c, int e);
    // prod (x - r_i)
    static UPoly from_roots(const std::vector<CycScalar>& roots);

    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const CycScalar& lead() const { return c_.back(); }
    CycScalar coeff(int i) const;
    const std::vector<CycScalar>& coeffs() const { return c_; }

    UPoly operator-() const;
    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    UPoly& operator*=(const UPoly& o);
    UPoly& operator*=(const CycScalar& s);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const CycScalar& s) { return a *= s; }
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(c_ == o.c_); }

    UPoly pow(int e) const;
    UPoly monic() const;
    // Quotient and remainder; divisor nonzero.
    void divmod(const UPoly& d, UPoly& q, UPoly& r) const;
    UPoly divexact(const UPoly& d) const;
    CycScalar eval(const CycScalar& v) const;
    std::complex<double> eval(std::complex<double> v, int embedding = 1) const;
    UPoly twisted(const GaloisElem& g) const;
    // p(s*x)
    UPoly scaled_arg(const CycScalar& s) const;

private:
    void trim();
    std::vector<CycScalar> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);

// Reduced quotient num/den with den monic and gcd(num, den) = 1.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const CycScalar& c) : num_(c), den_(1) {}
    RatFunc(long c) : RatFunc(CycScalar(c)) {}
    RatFunc(const UPoly& p) : num_(p), den_(1) {}
    RatFunc(const UPoly& n, const UPoly& d);
    static RatFunc x() { return RatFunc(UPoly::x()); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.is_constant() && den_.degree() == 0; }

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc pow(int e) const;
    RatFunc twisted(const GaloisElem& g) const;
    // this(r(x))
    RatFunc compose(const RatFunc& r) const;
    std::complex<double> eval(std::complex<double> v, int embedding = 1) const;
    std::string to_text(const std::string& var = "x") const;

private:
    void reduce();
    UPoly num_, den_;
};

std::string upoly_text(const UPoly& p, const std::string& var = "x");

}  // namespace fmd
