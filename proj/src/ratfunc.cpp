#include "fmd/ratfunc.hpp"

#include <sstream>

namespace fmd {

UPoly::UPoly(const CycScalar& c) {
    if (!c.is_zero()) c_.push_back(c);
}

UPoly::UPoly(std::vector<CycScalar> c) : c_(std::move(c)) {
    trim();
    if (degree() > kMaxDegree) throw ResourceError("polynomial degree exceeds guardrail");
}

UPoly UPoly::x() { return monomial(CycScalar(1), 1); }

UPoly UPoly::monomial(const CycScalar& c, int e) {
    if (e > kMaxDegree) throw ResourceError("polynomial degree exceeds guardrail");
    std::vector<CycScalar> v(e + 1);
    v[e] = c;
    return UPoly(std::move(v));
}

UPoly UPoly::from_roots(const std::vector<CycScalar>& roots) {
    UPoly p(1);
    for (auto& r : roots) p *= UPoly(std::vector<CycScalar>{-r, CycScalar(1)});
    return p;
}

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

CycScalar UPoly::coeff(int i) const {
    if (i < 0 || i >= int(c_.size())) return CycScalar();
    return c_[i];
}

UPoly UPoly::operator-() const {
    UPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    if (a.degree() + b.degree() > kMaxDegree) throw ResourceError("polynomial degree exceeds guardrail");
    if (b.c_.size() == 1) return a * b.c_[0];
    if (a.c_.size() == 1) return b * a.c_[0];
    std::vector<CycScalar> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            r[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return UPoly(std::move(r));
}

UPoly& UPoly::operator*=(const UPoly& o) { return *this = *this * o; }

UPoly& UPoly::operator*=(const CycScalar& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    if (s.is_one()) return *this;
    for (auto& c : c_) c *= s;
    return *this;
}

UPoly UPoly::pow(int e) const {
    UPoly r(1), b(*this);
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero() || lead().is_one()) return *this;
    return *this * lead().inverse();
}

void UPoly::divmod(const UPoly& d, UPoly& q, UPoly& r) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    r = *this;
    if (degree() < d.degree()) {
        q = UPoly();
        return;
    }
    std::vector<CycScalar> qc(degree() - d.degree() + 1);
    CycScalar li = d.lead().inverse();
    bool monic_d = d.lead().is_one();
    std::vector<CycScalar>& rc = r.c_;
    int dd = d.degree();
    for (int k = int(rc.size()) - 1; k >= dd; --k) {
        if (rc[k].is_zero()) continue;
        CycScalar c = monic_d ? rc[k] : rc[k] * li;
        for (int j = 0; j < dd; ++j) {
            if (d.c_[j].is_zero()) continue;
            rc[k - dd + j] -= c * d.c_[j];
        }
        rc[k] = CycScalar();
        qc[k - dd] = std::move(c);
    }
    r.trim();
    q = UPoly(std::move(qc));
}

UPoly UPoly::divexact(const UPoly& d) const {
    UPoly q, r;
    divmod(d, q, r);
    if (!r.is_zero()) throw DomainError("inexact polynomial division");
    return q;
}

CycScalar UPoly::eval(const CycScalar& v) const {
    CycScalar s;
    for (int i = degree(); i >= 0; --i) s = s * v + c_[i];
    return s;
}

std::complex<double> UPoly::eval(std::complex<double> v, int embedding) const {
    std::complex<double> s = 0;
    for (int i = degree(); i >= 0; --i) s = s * v + c_[i].embed(embedding);
    return s;
}

UPoly UPoly::twisted(const GaloisElem& g) const {
    if (g.k == 0) return *this;
    UPoly r(*this);
    for (auto& c : r.c_) c = g(c);
    return r;
}

UPoly UPoly::scaled_arg(const CycScalar& s) const {
    UPoly r(*this);
    CycScalar p(1);
    for (auto& c : r.c_) {
        c *= p;
        p *= s;
    }
    r.trim();
    return r;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return UPoly(1);
    UPoly r0 = a.degree() >= b.degree() ? a : b;
    UPoly r1 = (a.degree() >= b.degree() ? b : a).monic();
    UPoly q, r;
    while (!r1.is_zero()) {
        if (r1.is_constant()) return UPoly(1);
        r0.divmod(r1, q, r);
        r0 = std::move(r1);
        r1 = r.monic();
    }
    return r0.monic();
}

std::string upoly_text(const UPoly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= p.degree(); ++i) {
        const CycScalar& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c.is_one();
        if (i == 0 || !unit) os << "(" << c.to_text() << ")";
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

RatFunc::RatFunc(const UPoly& n, const UPoly& d) : num_(n), den_(d) {
    if (d.is_zero()) throw DomainError("rational function with zero denominator");
    reduce();
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = UPoly(1);
        return;
    }
    if (den_.degree() > 0) {
        UPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
    }
    if (!den_.lead().is_one()) {
        CycScalar li = den_.lead().inverse();
        num_ *= li;
        den_ *= li;
    }
}

RatFunc RatFunc::operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_.degree() == 0 && o.den_.degree() == 0) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        reduce();
        return *this;
    }
    UPoly g = gcd(den_, o.den_);
    if (g.degree() == 0) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
        if (num_.is_zero()) den_ = UPoly(1);
        return *this;
    }
    UPoly b1 = den_.divexact(g), d1 = o.den_.divexact(g);
    UPoly n = num_ * d1 + o.num_ * b1;
    if (n.is_zero()) return *this = RatFunc();
    UPoly h = gcd(n, g);
    if (h.degree() > 0) {
        n = n.divexact(h);
        g = g.divexact(h);
    }
    num_ = std::move(n);
    den_ = b1 * d1 * g;
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) return *this = RatFunc();
    UPoly a = num_, b = den_, c = o.num_, d = o.den_;
    if (d.degree() > 0) {
        UPoly g = gcd(a, d);
        if (g.degree() > 0) {
            a = a.divexact(g);
            d = d.divexact(g);
        }
    }
    if (b.degree() > 0) {
        UPoly g = gcd(c, b);
        if (g.degree() > 0) {
            c = c.divexact(g);
            b = b.divexact(g);
        }
    }
    num_ = a * c;
    den_ = b * d;
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero rational function");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    CycScalar li = r.den_.lead().inverse();
    r.num_ *= li;
    r.den_ *= li;
    return r;
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r;
    r.num_ = num_.pow(e);
    r.den_ = den_.pow(e);
    return r;
}

RatFunc RatFunc::twisted(const GaloisElem& g) const {
    RatFunc r;
    r.num_ = num_.twisted(g);
    r.den_ = den_.twisted(g);
    return r;
}

RatFunc RatFunc::compose(const RatFunc& s) const {
    auto horner = [&](const UPoly& p) {
        RatFunc acc;
        for (int i = p.degree(); i >= 0; --i) acc = acc * s + RatFunc(p.coeffs()[i]);
        return acc;
    };
    return horner(num_) / horner(den_);
}

std::complex<double> RatFunc::eval(std::complex<double> v, int embedding) const {
    return num_.eval(v, embedding) / den_.eval(v, embedding);
}

std::string RatFunc::to_text(const std::string& var) const {
    if (den_.degree() == 0) return upoly_text(num_, var);
    return "(" + upoly_text(num_, var) + ")/(" + upoly_text(den_, var) + ")";
}

}  // namespace fmd
