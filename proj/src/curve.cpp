#include "fmd/curve.hpp"

namespace fmd {

std::shared_ptr<const CurveSpec> CurveSpec::make(const std::array<CycScalar, 7>& lambda,
                                                 const std::array<std::array<int, 4>, 3>& subsets,
                                                 const std::string& name) {
    auto s = std::make_shared<CurveSpec>();
    s->lambda = lambda;
    s->subsets = subsets;
    s->name = name;
    for (int i = 0; i < 3; ++i) {
        std::vector<CycScalar> roots;
        for (int k : subsets[i]) {
            if (k < 1 || k > 7) throw DomainError("branch index out of range");
            roots.push_back(lambda[k - 1]);
        }
        s->f[i] = UPoly::from_roots(roots);
    }
    for (int m = 0; m < 8; ++m) {
        UPoly p(1);
        for (int i = 0; i < 3; ++i)
            if (m & (1 << i)) p *= s->f[i];
        s->fprod[m] = p;
    }
    return s;
}

std::shared_ptr<const CurveSpec> CurveSpec::macbeath() {
    static const std::shared_ptr<const CurveSpec> x = [] {
        std::array<CycScalar, 7> l;
        for (int k = 0; k < 7; ++k) l[k] = CycScalar::rho(k);
        return make(l, {{{1, 4, 6, 7}, {3, 5, 6, 7}, {2, 4, 5, 6}}}, "X");
    }();
    return x;
}

std::shared_ptr<const CurveSpec> CurveSpec::twisted(const GaloisElem& g, const std::string& nm) const {
    std::array<CycScalar, 7> l;
    for (int k = 0; k < 7; ++k) l[k] = g(lambda[k]);
    return make(l, subsets, nm);
}

CurveElement::CurveElement(std::shared_ptr<const CurveSpec> spec, const RatFunc& scalar) : spec_(std::move(spec)) {
    c_[0] = scalar;
}

CurveElement CurveElement::x(std::shared_ptr<const CurveSpec> spec) { return CurveElement(std::move(spec), RatFunc::x()); }

CurveElement CurveElement::y(std::shared_ptr<const CurveSpec> spec, int i) {
    if (i != 1 && i != 2 && i != 4) throw DomainError("y index must be 1, 2 or 4");
    CurveElement e;
    e.spec_ = std::move(spec);
    e.c_[i] = RatFunc(1);
    return e;
}

std::vector<CurveElement> CurveElement::generators(std::shared_ptr<const CurveSpec> spec) {
    return {x(spec), y(spec, 1), y(spec, 2), y(spec, 4)};
}

bool CurveElement::is_zero() const {
    for (auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool CurveElement::is_scalar() const {
    for (int m = 1; m < 8; ++m)
        if (!c_[m].is_zero()) return false;
    return true;
}

void CurveElement::adopt(const CurveElement& o) {
    if (!spec_) {
        spec_ = o.spec_;
    } else if (o.spec_ && o.spec_ != spec_ && o.spec_->lambda != spec_->lambda) {
        throw DomainError("function field elements on different curves");
    }
}

CurveElement CurveElement::operator-() const {
    CurveElement r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

CurveElement& CurveElement::operator+=(const CurveElement& o) {
    adopt(o);
    for (int m = 0; m < 8; ++m)
        if (!o.c_[m].is_zero()) c_[m] += o.c_[m];
    return *this;
}

CurveElement& CurveElement::operator-=(const CurveElement& o) {
    adopt(o);
    for (int m = 0; m < 8; ++m)
        if (!o.c_[m].is_zero()) c_[m] -= o.c_[m];
    return *this;
}

CurveElement operator*(const CurveElement& a, const CurveElement& b) {
    CurveElement r;
    r.spec_ = a.spec_ ? a.spec_ : b.spec_;
    r.adopt(b);
    if (b.is_scalar()) {
        for (int m = 0; m < 8; ++m)
            if (!a.c_[m].is_zero()) r.c_[m] = a.c_[m] * b.c_[0];
        return r;
    }
    if (a.is_scalar()) {
        for (int m = 0; m < 8; ++m)
            if (!b.c_[m].is_zero()) r.c_[m] = b.c_[m] * a.c_[0];
        return r;
    }
    if (!r.spec_) throw DomainError("product without a curve");
    for (int i = 0; i < 8; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; j < 8; ++j) {
            if (b.c_[j].is_zero()) continue;
            RatFunc t = a.c_[i] * b.c_[j];
            int both = i & j;
            if (both) t *= RatFunc(r.spec_->fprod[both]);
            r.c_[i ^ j] += t;
        }
    }
    return r;
}

bool CurveElement::operator==(const CurveElement& o) const {
    for (int m = 0; m < 8; ++m)
        if (c_[m] != o.c_[m]) return false;
    return true;
}

CurveElement CurveElement::sign_conjugate(int mask) const {
    CurveElement r(*this);
    for (int m = 0; m < 8; ++m)
        if (__builtin_popcount(m & mask) & 1) r.c_[m] = -r.c_[m];
    return r;
}

CurveElement CurveElement::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero function");
    if (is_scalar()) return CurveElement(spec_, c_[0].inverse());
    CurveElement n = *this;
    CurveElement cofactor(spec_, RatFunc(1));
    for (int bit : {4, 2, 1}) {
        bool uses = false;
        for (int m = 0; m < 8; ++m)
            if ((m & bit) && !n.c_[m].is_zero()) uses = true;
        if (!uses) continue;
        CurveElement conj = n.sign_conjugate(bit);
        n = n * conj;
        cofactor = cofactor * conj;
    }
    if (!n.is_scalar()) throw std::logic_error("tower norm left the base field");
    if (n.c_[0].is_zero()) throw DomainError("zero divisor in function field");
    CurveElement r = cofactor * CurveElement(spec_, n.c_[0].inverse());
    CurveElement check = *this * r;
    if (!(check == CurveElement(spec_, RatFunc(1)))) throw std::logic_error("inverse check failed");
    return r;
}

CurveElement ff_inverse(const CurveElement& a) { return a.inverse(); }

CurveElement CurveElement::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    CurveElement r(spec_, RatFunc(1)), b(*this);
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::complex<double> CurveElement::eval(const std::array<std::complex<double>, 4>& pt) const {
    std::complex<double> s = 0;
    for (int m = 0; m < 8; ++m) {
        if (c_[m].is_zero()) continue;
        std::complex<double> t = c_[m].eval(pt[0]);
        if (m & 1) t *= pt[1];
        if (m & 2) t *= pt[2];
        if (m & 4) t *= pt[3];
        s += t;
    }
    return s;
}

nlohmann::json CurveElement::to_json() const {
    static const char* names[8] = {"1", "y1", "y2", "y1*y2", "y4", "y1*y4", "y2*y4", "y1*y2*y4"};
    nlohmann::json j = nlohmann::json::array();
    for (int m = 0; m < 8; ++m)
        if (!c_[m].is_zero()) j.push_back({{"monomial", names[m]}, {"coeff", c_[m].to_text()}});
    return j;
}

std::string ModelRef::name() const {
    if (twist == 0) return base;
    return base + "^" + GaloisElem(twist).name();
}

SemiMap::SemiMap(ModelRef domain, ModelRef codomain, std::vector<std::string> domain_vars, std::vector<Expr> comps,
                 GaloisElem twist)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      vars_(std::move(domain_vars)),
      comps_(std::move(comps)),
      twist_(twist) {}

SemiMap SemiMap::parse(ModelRef domain, ModelRef codomain, const std::vector<std::string>& domain_vars,
                       const std::vector<std::string>& comps, GaloisElem twist) {
    std::vector<Expr> es;
    for (auto& c : comps) es.push_back(Expr::parse(c, domain_vars));
    return SemiMap(std::move(domain), std::move(codomain), domain_vars, std::move(es), twist);
}

SemiMap SemiMap::identity(ModelRef m, const std::vector<std::string>& vars) {
    std::vector<Expr> es;
    for (size_t i = 0; i < vars.size(); ++i) es.push_back(Expr::var(int(i)));
    return SemiMap(m, m, vars, es);
}

SemiMap SemiMap::twisted(const GaloisElem& g) const {
    std::vector<Expr> es;
    for (auto& e : comps_) es.push_back(e.twisted(g));
    return SemiMap(domain_.twisted(g), codomain_.twisted(g), vars_, std::move(es), twist_);
}

std::vector<CurveElement> interpret(const std::vector<Expr>& comps, const std::vector<CurveElement>& bindings) {
    if (bindings.empty()) throw DomainError("interpret: no bindings");
    auto spec = bindings[0].spec();
    std::function<CurveElement(const CycScalar&)> lift = [&](const CycScalar& c) { return CurveElement(spec, RatFunc(c)); };
    return Expr::fold_all<CurveElement>(comps, bindings, lift);
}

CurveElement interpret(const Expr& e, const std::vector<CurveElement>& bindings) { return interpret(std::vector<Expr>{e}, bindings)[0]; }

std::vector<CurveElement> SemiMap::interpret(const Model& m) const {
    if (m.ref != domain_.twisted(twist_)) throw DomainError("map interpreted on the wrong model: " + m.ref.name());
    return fmd::interpret(comps_, m.chart);
}

SemiMap compose(const SemiMap& outer, const SemiMap& inner) {
    if (inner.codomain() != outer.domain())
        throw DomainError("composition mismatch: " + inner.codomain().name() + " vs " + outer.domain().name());
    if (outer.domain_vars().size() != inner.components().size()) throw DomainError("composition arity mismatch");
    std::vector<Expr> twisted_inner;
    for (auto& e : inner.components()) twisted_inner.push_back(e.twisted(outer.twist()));
    std::vector<Expr> comps;
    for (auto& e : outer.components()) comps.push_back(e.substitute(twisted_inner));
    return SemiMap(inner.domain(), outer.codomain(), inner.domain_vars(), std::move(comps), outer.twist() * inner.twist());
}

nlohmann::json SemiMap::to_json() const {
    nlohmann::json comps = nlohmann::json::array();
    for (auto& e : comps_) comps.push_back(e.to_text(vars_));
    return {{"domain", domain_.name()},
            {"codomain", codomain_.name()},
            {"twist", twist_.name()},
            {"domain_vars", vars_},
            {"components", comps}};
}

SemiMap SemiMap::from_json(const nlohmann::json& j, ModelRef domain, ModelRef codomain) {
    try {
        auto vars = j.at("domain_vars").get<std::vector<std::string>>();
        auto comps = j.at("components").get<std::vector<std::string>>();
        return parse(std::move(domain), std::move(codomain), vars, comps, GaloisElem::parse(j.at("twist").get<std::string>()));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("map json: ") + ex.what());
    }
}

std::vector<std::complex<double>> SemiMap::apply(const std::vector<std::complex<double>>& pt) const {
    std::vector<std::complex<double>> p = pt;
    if (twist_.k == 3) {
        for (auto& v : p) v = std::conj(v);
    } else if (twist_.k != 0) {
        throw DomainError("twist " + twist_.name() + " has no numeric action");
    }
    std::vector<std::complex<double>> out;
    for (auto& e : comps_) out.push_back(e.eval(p));
    return out;
}

bool maps_equal(const SemiMap& a, const SemiMap& b, const ModelProvider& models) {
    if (a.twist() != b.twist() || a.domain() != b.domain() || a.codomain() != b.codomain()) return false;
    if (a.components().size() != b.components().size()) return false;
    Model m = models(a.domain().twisted(a.twist()));
    return a.interpret(m) == b.interpret(m);
}

std::vector<CurveElement> map_preserves_curve(const SemiMap& m, const ModelProvider& models) {
    Model dom = models(m.domain().twisted(m.twist()));
    Model cod = models(m.codomain());
    auto vals = m.interpret(dom);
    if (vals.size() != cod.vars.size()) throw DomainError("map arity does not match the codomain");
    std::vector<CurveElement> bad;
    auto spec = dom.curve;
    for (auto& rel : cod.relations) {
        CurveElement r = rel.substitute<CurveElement>(
            vals, [&] { return CurveElement(spec, RatFunc(1)); }, [&](const CycScalar& c) { return CurveElement(spec, RatFunc(c)); });
        if (!r.is_zero()) bad.push_back(r);
    }
    return bad;
}

bool is_identity(const SemiMap& m, const ModelProvider& models) {
    if (m.twist().k != 0 || m.domain() != m.codomain()) return false;
    Model dom = models(m.domain());
    return m.interpret(dom) == dom.chart;
}

std::optional<int> resolve_conjugation_relation(const SemiMap& j, const SemiMap& b, int maxorder,
                                                const ModelProvider& models) {
    SemiMap lhs = compose(j, b);
    SemiMap pw = b;
    for (int k = 1; k <= maxorder; ++k) {
        if (maps_equal(lhs, compose(pw, j), models)) return k;
        pw = compose(b, pw);
    }
    return std::nullopt;
}

std::optional<int> map_order(const SemiMap& m, int maxorder, const ModelProvider& models) {
    SemiMap pw = m;
    for (int n = 1; n <= maxorder; ++n) {
        if (pw.twist().k == 0 && pw.domain() == pw.codomain() && is_identity(pw, models)) return n;
        pw = compose(m, pw);
    }
    return std::nullopt;
}

}  // namespace fmd
