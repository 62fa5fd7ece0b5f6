#include "fmd/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fmd {

namespace {

int mod7(long v) { return int(((v % 7) + 7) % 7); }

// Fold a length-7 coefficient vector (basis r^0..r^6) into the power basis.
void fold6(std::array<mpz_class, 7>& c) {
    if (sgn(c[6]) != 0) {
        for (int i = 0; i < 6; ++i) c[i] -= c[6];
        c[6] = 0;
    }
}

}  // namespace

CycScalar::CycScalar() : d_(1) {}

CycScalar::CycScalar(long v) : d_(1) { n_[0] = v; }

CycScalar::CycScalar(const mpq_class& q) : d_(q.get_den()) { n_[0] = q.get_num(); }

CycScalar CycScalar::from_coeffs(const std::array<mpq_class, 6>& c) {
    CycScalar r;
    mpz_class l = 1;
    for (auto& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (int i = 0; i < 6; ++i) r.n_[i] = c[i].get_num() * (l / c[i].get_den());
    r.d_ = l;
    r.normalize();
    return r;
}

CycScalar CycScalar::rho(int k) {
    CycScalar r;
    int e = mod7(k);
    if (e == 6) {
        for (int i = 0; i < 6; ++i) r.n_[i] = -1;
    } else {
        r.n_[e] = 1;
    }
    return r;
}

void CycScalar::normalize() {
    if (d_ < 0) {
        d_ = -d_;
        for (auto& x : n_) x = -x;
    }
    if (d_ == 1) return;
    mpz_class g = d_;
    for (auto& x : n_) {
        if (sgn(x) == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) return;
    }
    if (is_zero()) {
        d_ = 1;
        return;
    }
    for (auto& x : n_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(d_.get_mpz_t(), d_.get_mpz_t(), g.get_mpz_t());
}

mpq_class CycScalar::coeff(int i) const {
    mpq_class q(n_[i], d_);
    q.canonicalize();
    return q;
}

std::array<mpq_class, 6> CycScalar::coeffs() const {
    std::array<mpq_class, 6> c;
    for (int i = 0; i < 6; ++i) c[i] = coeff(i);
    return c;
}

bool CycScalar::is_zero() const {
    for (auto& x : n_)
        if (sgn(x) != 0) return false;
    return true;
}

bool CycScalar::is_rational() const {
    for (int i = 1; i < 6; ++i)
        if (sgn(n_[i]) != 0) return false;
    return true;
}

bool CycScalar::is_one() const { return is_rational() && d_ == 1 && n_[0] == 1; }

CycScalar CycScalar::operator-() const {
    CycScalar r(*this);
    for (auto& x : r.n_) x = -x;
    return r;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
    if (o.is_zero()) return *this;
    if (d_ == o.d_) {
        for (int i = 0; i < 6; ++i) n_[i] += o.n_[i];
    } else {
        for (int i = 0; i < 6; ++i) n_[i] = n_[i] * o.d_ + o.n_[i] * d_;
        d_ *= o.d_;
    }
    normalize();
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar& CycScalar::operator*=(const CycScalar& o) {
    if (o.is_rational()) {
        if (o.d_ == 1 && o.n_[0] == 1) return *this;
        for (auto& x : n_) x *= o.n_[0];
        d_ *= o.d_;
        normalize();
        return *this;
    }
    std::array<mpz_class, 11> p;
    for (int i = 0; i < 6; ++i) {
        if (sgn(n_[i]) == 0) continue;
        for (int j = 0; j < 6; ++j) {
            if (sgn(o.n_[j]) == 0) continue;
            mpz_addmul(p[i + j].get_mpz_t(), n_[i].get_mpz_t(), o.n_[j].get_mpz_t());
        }
    }
    std::array<mpz_class, 7> c;
    for (int i = 0; i < 7; ++i) c[i] = p[i];
    for (int i = 7; i < 11; ++i) c[i - 7] += p[i];
    fold6(c);
    for (int i = 0; i < 6; ++i) n_[i] = c[i];
    d_ *= o.d_;
    normalize();
    return *this;
}

CycScalar& CycScalar::operator/=(const CycScalar& o) { return *this *= o.inverse(); }

bool CycScalar::operator==(const CycScalar& o) const {
    if (d_ != o.d_) return false;
    for (int i = 0; i < 6; ++i)
        if (n_[i] != o.n_[i]) return false;
    return true;
}

bool CycScalar::operator<(const CycScalar& o) const {
    if (d_ != o.d_) return d_ < o.d_;
    for (int i = 0; i < 6; ++i)
        if (n_[i] != o.n_[i]) return n_[i] < o.n_[i];
    return false;
}

// Extended Euclid in Q[z] against z^6 + ... + 1.
CycScalar CycScalar::inverse() const {
    if (is_zero()) throw DomainError("division by zero in Q(zeta_7)");
    if (is_rational()) {
        CycScalar r;
        r.n_[0] = d_;
        r.d_ = n_[0];
        r.normalize();
        return r;
    }
    using P = std::vector<mpq_class>;
    auto trim = [](P& p) {
        while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
    };
    auto sub_mul = [&](P& a, const P& b, const mpq_class& c, int shift) {
        if (a.size() < b.size() + shift) a.resize(b.size() + shift);
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    };
    P r0(7, mpq_class(1)), r1(6);
    for (int i = 0; i < 6; ++i) r1[i] = coeff(i);
    trim(r1);
    P s0, s1{mpq_class(1)};
    while (r1.size() > 1) {
        P q;
        P rem = r0;
        while (rem.size() >= r1.size()) {
            int sh = int(rem.size() - r1.size());
            mpq_class c = rem.back() / r1.back();
            if (q.size() < size_t(sh + 1)) q.resize(sh + 1);
            q[sh] = c;
            sub_mul(rem, r1, c, sh);
        }
        P s2 = s0;
        for (size_t i = 0; i < q.size(); ++i)
            if (sgn(q[i]) != 0) sub_mul(s2, s1, q[i], int(i));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    mpq_class c = r1[0];
    std::array<mpq_class, 6> out;
    for (size_t i = 0; i < s1.size() && i < 6; ++i) out[i] = s1[i] / c;
    return from_coeffs(out);
}

CycScalar CycScalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycScalar r(1), b(*this);
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

CycScalar CycScalar::apply_automorphism(int k) const {
    int m = mod7(k);
    if (m == 0) throw DomainError("r -> 1 is not an automorphism");
    if (m == 1) return *this;
    std::array<mpz_class, 7> c;
    for (int i = 0; i < 6; ++i) c[mod7(long(i) * m)] += n_[i];
    fold6(c);
    CycScalar r;
    for (int i = 0; i < 6; ++i) r.n_[i] = c[i];
    r.d_ = d_;
    return r;
}

std::complex<double> CycScalar::embed(int k) const {
    std::complex<double> s = 0;
    double dd = d_.get_d();
    for (int i = 0; i < 6; ++i) {
        if (sgn(n_[i]) == 0) continue;
        double a = 2.0 * std::numbers::pi * double(mod7(long(i) * k)) / 7.0;
        s += (n_[i].get_d() / dd) * std::complex<double>(std::cos(a), std::sin(a));
    }
    return s;
}

std::string CycScalar::to_text(const std::string& sym) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < 6; ++i) {
        mpq_class q = coeff(i);
        if (sgn(q) == 0) continue;
        if (!first) os << (sgn(q) < 0 ? " - " : " + ");
        else if (sgn(q) < 0) os << "-";
        mpq_class a = abs(q);
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << sym;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

nlohmann::json CycScalar::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < 6; ++i) j.push_back(coeff(i).get_str());
    return j;
}

CycScalar CycScalar::from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 6) throw ParseError("scalar must be an array of 6 rationals");
    std::array<mpq_class, 6> c;
    for (int i = 0; i < 6; ++i) {
        if (!j[i].is_string()) throw ParseError("scalar coordinate must be a string");
        try {
            c[i] = mpq_class(j[i].get<std::string>());
            c[i].canonicalize();
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational: " + j[i].get<std::string>());
        }
        if (sgn(c[i].get_den()) == 0) throw ParseError("zero denominator");
    }
    return from_coeffs(c);
}

// Grammar: sums of terms  [coeff][*][r[^k]]  with coeff an integer or p/q.
CycScalar CycScalar::parse(const std::string& s) {
    size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    };
    auto fail = [&](const std::string& why) -> CycScalar {
        throw ParseError("scalar '" + s + "': " + why);
    };
    CycScalar acc;
    bool any = false;
    skip();
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
            skip();
        } else if (any) {
            fail("expected + or -");
        }
        mpq_class c = 1;
        bool have_c = false;
        if (i < s.size() && std::isdigit((unsigned char)s[i])) {
            size_t b = i;
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            mpz_class nu(s.substr(b, i - b));
            mpz_class de = 1;
            skip();
            if (i < s.size() && s[i] == '/') {
                ++i;
                skip();
                size_t b2 = i;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
                if (b2 == i) fail("missing denominator");
                de = mpz_class(s.substr(b2, i - b2));
                if (de == 0) fail("zero denominator");
            }
            c = mpq_class(nu, de);
            c.canonicalize();
            have_c = true;
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip();
            }
        }
        int e = 0;
        if (i < s.size() && s[i] == 'r') {
            ++i;
            if (s.compare(i, 2, "ho") == 0) i += 2;
            e = 1;
            skip();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip();
                size_t b = i;
                while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
                if (b == i) fail("missing exponent");
                e = std::stoi(s.substr(b, i - b));
            }
        } else if (!have_c) {
            fail("expected a term");
        }
        acc += CycScalar(c * sign) * rho(e);
        any = true;
        skip();
    }
    if (!any) fail("empty");
    return acc;
}

int GaloisElem::power() const {
    static const int p[6] = {1, 3, 2, 6, 4, 5};
    return p[k];
}

std::string GaloisElem::name() const {
    if (k == 3) return "conj";
    return "sigma^" + std::to_string(k);
}

GaloisElem GaloisElem::parse(const std::string& s) {
    if (s == "conj") return conj();
    if (s == "id" || s == "e") return identity();
    if (s == "sigma") return sigma();
    if (s == "tau") return tau();
    if (s.rfind("sigma^", 0) == 0) {
        try {
            return GaloisElem(std::stoi(s.substr(6)));
        } catch (...) {
        }
    }
    throw ParseError("bad Galois element: " + s);
}

std::string field_level_tag(FieldLevel f) {
    switch (f) {
        case FieldLevel::Q: return "Q";
        case FieldLevel::QSqrtMinus7: return "Qsqrt-7";
        case FieldLevel::QReal: return "Qreal";
        case FieldLevel::Q7: return "Q7";
    }
    return "Q7";
}

Subgroup Subgroup::from_elements(const std::vector<GaloisElem>& els) {
    bool in[6] = {false, false, false, false, false, false};
    for (auto& g : els) in[g.k] = true;
    if (!in[0]) throw DomainError("subgroup must contain the identity");
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            if (in[a] && in[b] && !in[(a + b) % 6]) throw DomainError("set is not closed under composition");
    int n = 0;
    for (bool b : in) n += b;
    switch (n) {
        case 1: return trivial();
        case 2: return order2();
        case 3: return order3();
        case 6: return whole();
    }
    throw DomainError("not a subgroup");
}

std::vector<GaloisElem> Subgroup::elements() const {
    std::vector<GaloisElem> v;
    int g = gen_ == 0 ? 6 : gen_;
    for (int e = 0; e < 6; e += g) v.emplace_back(e);
    return v;
}

int Subgroup::order() const { return int(elements().size()); }

FieldLevel Subgroup::fixed_field() const {
    switch (gen_) {
        case 0: return FieldLevel::Q7;
        case 2: return FieldLevel::QSqrtMinus7;
        case 3: return FieldLevel::QReal;
    }
    return FieldLevel::Q;
}

CycScalar relative_trace(const Subgroup& h, const CycScalar& a) {
    CycScalar s;
    for (auto& g : h.elements()) s += g(a);
    return s;
}

bool subfield_test(const CycScalar& a, FieldLevel f) {
    switch (f) {
        case FieldLevel::Q7: return true;
        case FieldLevel::Q: return a.is_rational();
        case FieldLevel::QSqrtMinus7: return GaloisElem::tau()(a) == a;
        case FieldLevel::QReal: return GaloisElem::conj()(a) == a;
    }
    return false;
}

FieldLevel field_of(const CycScalar& a) {
    if (a.is_rational()) return FieldLevel::Q;
    if (subfield_test(a, FieldLevel::QSqrtMinus7)) return FieldLevel::QSqrtMinus7;
    if (subfield_test(a, FieldLevel::QReal)) return FieldLevel::QReal;
    return FieldLevel::Q7;
}

CycScalar sqrt_minus7() { return CycScalar(2) * (CycScalar::rho(1) + CycScalar::rho(2) + CycScalar::rho(4)) + CycScalar(1); }

namespace {

bool rational_approx(double v, mpq_class& out) {
    // continued fraction with bounded denominator
    const long maxden = 1000000;
    double x = v;
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(x);
        if (std::abs(a) > 1e15) return false;
        long ai = long(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > maxden) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double f = x - a;
        if (std::abs(double(h1) / double(k1) - v) < 1e-9 * std::max(1.0, std::abs(v))) break;
        if (f < 1e-15) break;
        x = 1.0 / f;
    }
    if (k1 == 0) return false;
    out = mpq_class(h1, k1);
    out.canonicalize();
    return std::abs(out.get_d() - v) < 1e-7 * std::max(1.0, std::abs(v));
}

}  // namespace

bool try_sqrt(const CycScalar& a, CycScalar& out) {
    if (a.is_zero()) {
        out = CycScalar();
        return true;
    }
    std::complex<double> ev[7];
    for (int m = 1; m <= 6; ++m) ev[m] = std::sqrt(a.embed(m));
    for (int mask = 0; mask < 4; ++mask) {
        std::complex<double> target[7];
        int sg[4] = {1, 1, (mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1};
        for (int m = 1; m <= 3; ++m) {
            target[m] = double(sg[m]) * ev[m];
            target[7 - m] = std::conj(target[m]);
        }
        // Solve sum_i c_i zeta^{m i} = target[m], m = 1..6.
        std::array<std::array<std::complex<double>, 7>, 6> M;
        for (int m = 1; m <= 6; ++m) {
            for (int i = 0; i < 6; ++i) {
                double ang = 2.0 * std::numbers::pi * double((m * i) % 7) / 7.0;
                M[m - 1][i] = std::complex<double>(std::cos(ang), std::sin(ang));
            }
            M[m - 1][6] = target[m];
        }
        for (int c = 0; c < 6; ++c) {
            int piv = c;
            for (int r = c + 1; r < 6; ++r)
                if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
            std::swap(M[c], M[piv]);
            for (int r = 0; r < 6; ++r) {
                if (r == c) continue;
                auto f = M[r][c] / M[c][c];
                for (int k = c; k < 7; ++k) M[r][k] -= f * M[c][k];
            }
        }
        std::array<mpq_class, 6> q;
        bool ok = true;
        for (int i = 0; i < 6 && ok; ++i) ok = rational_approx((M[i][6] / M[i][i]).real(), q[i]);
        if (!ok) continue;
        CycScalar b = CycScalar::from_coeffs(q);
        if (b * b == a) {
            out = b;
            return true;
        }
    }
    return false;
}

}  // namespace fmd
