#include "fmd/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "fmd/expr.hpp"

namespace fmd {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
    int da = 0, db = 0;
    for (int v : a) da += v;
    for (int v : b) db += v;
    if (da != db) return da < db;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
}

MultiPoly MultiPoly::constant(const std::vector<std::string>& vars, const CycScalar& c) {
    MultiPoly p(vars);
    p.add_term(Exponent(vars.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, int i) {
    if (i < 0 || i >= int(vars.size())) throw DomainError("variable index out of range");
    MultiPoly p(vars);
    Exponent e(vars.size(), 0);
    e[i] = 1;
    p.add_term(e, CycScalar(1));
    return p;
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, const std::string& name) {
    MultiPoly p(vars);
    return variable(vars, p.var_index(name));
}

MultiPoly MultiPoly::from_upoly(const std::vector<std::string>& vars, int i, const UPoly& u) {
    MultiPoly p(vars);
    for (int k = 0; k <= u.degree(); ++k) {
        Exponent e(vars.size(), 0);
        e[i] = k;
        p.add_term(e, u.coeffs()[k]);
    }
    return p;
}

int MultiPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw DomainError("unknown variable " + name);
    return int(it - vars_.begin());
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int v) { return v == 0; }));
}

CycScalar MultiPoly::constant_term() const { return coeff(Exponent(vars_.size(), 0)); }

CycScalar MultiPoly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? CycScalar() : it->second;
}

void MultiPoly::add_term(const Exponent& e, const CycScalar& c) {
    if (e.size() != vars_.size()) throw DomainError("exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (int v : terms_.rbegin()->first) d += v;
    return d;
}

int MultiPoly::degree_in(int v) const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_ && !vars_.empty() && !o.vars_.empty()) throw DomainError("polynomials over different variable lists");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_compatible(o);
    if (vars_.empty()) vars_ = o.vars_;
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_compatible(o);
    if (vars_.empty()) vars_ = o.vars_;
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const CycScalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.vars_.empty() ? b.vars_ : a.vars_);
    std::map<Exponent, CycScalar, GrlexLess> acc;
    for (auto& [ea, ca] : a.terms_) {
        for (auto& [eb, cb] : b.terms_) {
            Exponent e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            acc[e] += ca * cb;
        }
    }
    for (auto& [e, c] : acc)
        if (!c.is_zero()) r.terms_.emplace(e, c);
    return r;
}

MultiPoly operator/(const MultiPoly& a, const MultiPoly& b) {
    if (!b.is_constant() || b.is_zero()) throw DomainError("polynomial division by a non-constant");
    return a * b.constant_term().inverse();
}

MultiPoly MultiPoly::pow(int e) const {
    MultiPoly r = constant(vars_, CycScalar(1)), b(*this);
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

MultiPoly MultiPoly::twisted(const GaloisElem& g) const {
    MultiPoly r(*this);
    for (auto& [e, c] : r.terms_) c = g(c);
    return r;
}

MultiPoly MultiPoly::rebased(const std::vector<std::string>& vars) const {
    MultiPoly r(vars);
    std::vector<int> map;
    for (auto& v : vars_) map.push_back(r.var_index(v));
    for (auto& [e, c] : terms_) {
        Exponent ne(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
        r.add_term(ne, c);
    }
    return r;
}

bool MultiPoly::divides_by(const UPoly& d, int v, MultiPoly& quotient) const {
    // Long division in var v with coefficients polynomial in the rest.
    if (d.is_zero()) throw DomainError("division by zero polynomial");
    int dd = d.degree();
    CycScalar li = d.lead().inverse();
    MultiPoly rem(*this);
    MultiPoly q(vars_);
    while (!rem.is_zero()) {
        // pick a term of maximal degree in v
        const Exponent* best = nullptr;
        for (auto& [e, c] : rem.terms_)
            if (!best || e[v] > (*best)[v]) best = &e;
        if ((*best)[v] < dd) return false;
        int top = (*best)[v];
        std::vector<std::pair<Exponent, CycScalar>> lead_terms;
        for (auto& [e, c] : rem.terms_)
            if (e[v] == top) lead_terms.push_back({e, c});
        for (auto& [e, c] : lead_terms) {
            Exponent qe = e;
            qe[v] -= dd;
            CycScalar qc = c * li;
            q.add_term(qe, qc);
            for (int k = 0; k <= dd; ++k) {
                if (d.coeffs()[k].is_zero()) continue;
                Exponent te = qe;
                te[v] += k;
                rem.add_term(te, -(qc * d.coeffs()[k]));
            }
        }
    }
    quotient = q;
    return true;
}

MultiPoly MultiPoly::primitive_integral() const {
    if (is_zero()) return *this;
    mpz_class l = 1;
    for (auto& [e, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    mpz_class g = 0;
    for (auto& [e, c] : terms_)
        for (int i = 0; i < 6; ++i) {
            mpz_class v = c.num(i) * (l / c.den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
    mpq_class s(l, g);
    s.canonicalize();
    MultiPoly r = *this * CycScalar(s);
    const CycScalar& ref = r.terms_.begin()->first == Exponent(vars_.size(), 0) ? r.terms_.begin()->second : r.terms_.rbegin()->second;
    for (int i = 0; i < 6; ++i) {
        if (sgn(ref.num(i)) == 0) continue;
        if (sgn(ref.num(i)) < 0) r = -r;
        break;
    }
    return r;
}

FieldLevel MultiPoly::field_level() const {
    bool q = true, s7 = true, re = true;
    for (auto& [e, c] : terms_) {
        q = q && subfield_test(c, FieldLevel::Q);
        s7 = s7 && subfield_test(c, FieldLevel::QSqrtMinus7);
        re = re && subfield_test(c, FieldLevel::QReal);
    }
    if (q) return FieldLevel::Q;
    if (s7) return FieldLevel::QSqrtMinus7;
    if (re) return FieldLevel::QReal;
    return FieldLevel::Q7;
}

std::complex<double> MultiPoly::eval(const std::vector<std::complex<double>>& pt, int embedding) const {
    if (int(pt.size()) != nvars()) throw DomainError("evaluation arity mismatch");
    std::complex<double> s = 0;
    for (auto& [e, c] : terms_) {
        std::complex<double> t = c.embed(embedding);
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= pt[i];
        s += t;
    }
    return s;
}

std::pair<double, double> MultiPoly::eval_with_scale(const std::vector<std::complex<double>>& pt) const {
    if (int(pt.size()) != nvars()) throw DomainError("evaluation arity mismatch");
    std::complex<double> s = 0;
    double scale = 0;
    for (auto& [e, c] : terms_) {
        std::complex<double> t = c.embed(1);
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= pt[i];
        s += t;
        scale += std::abs(t);
    }
    return {std::abs(s), scale};
}

nlohmann::json MultiPoly::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (auto& [e, c] : terms_) terms.push_back({{"exp", e}, {"coeff", c.to_json()}});
    return {{"vars", vars_}, {"terms", terms}};
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
    try {
        MultiPoly p(j.at("vars").get<std::vector<std::string>>());
        for (auto& t : j.at("terms")) {
            Exponent e = t.at("exp").get<Exponent>();
            if (int(e.size()) != p.nvars()) throw ParseError("exponent arity mismatch");
            for (int v : e)
                if (v < 0) throw ParseError("negative exponent");
            p.add_term(e, CycScalar::from_json(t.at("coeff")));
        }
        return p;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("polynomial json: ") + ex.what());
    }
}

std::string MultiPoly::to_text(const std::string& sym) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        bool mono = std::any_of(e.begin(), e.end(), [](int v) { return v > 0; });
        std::string ct = c.to_text(sym);
        bool single = ct.find(' ') == std::string::npos;
        bool neg = single && ct[0] == '-';
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        std::string body = neg ? ct.substr(1) : ct;
        bool unit = body == "1";
        if (!mono) {
            os << (single ? body : "(" + body + ")");
            continue;
        }
        if (!unit) os << (single ? body : "(" + body + ")") << "*";
        bool f2 = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!f2) os << "*";
            f2 = false;
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

MultiPoly MultiPoly::parse(const std::string& text, const std::vector<std::string>& vars) {
    return expand(Expr::parse(text, vars), vars);
}

MultiPoly trace_poly(const Subgroup& h, const MultiPoly& p) {
    MultiPoly r(p.vars());
    for (auto& g : h.elements()) r += p.twisted(g);
    return r;
}

}  // namespace fmd
