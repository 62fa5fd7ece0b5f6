#include "fmd/descent.hpp"

#include <mutex>
#include <random>

#include "fmd/catalog.hpp"

namespace fmd {

namespace {

std::shared_ptr<const CurveSpec> x_spec(int k) {
    static const std::array<std::shared_ptr<const CurveSpec>, 6> specs = [] {
        std::array<std::shared_ptr<const CurveSpec>, 6> s;
        s[0] = CurveSpec::macbeath();
        for (int i = 1; i < 6; ++i) s[i] = s[0]->twisted(GaloisElem(i), ModelRef{"X", i}.name());
        return s;
    }();
    return specs[((k % 6) + 6) % 6];
}

std::vector<MultiPoly> curve_relations(const CurveSpec& s) {
    const auto& v = catalog::curve_vars();
    std::vector<MultiPoly> r;
    for (int i = 0; i < 3; ++i) {
        r.push_back(MultiPoly::variable(v, i + 1).pow(2) - MultiPoly::from_upoly(v, 0, s.f[i]));
    }
    return r;
}

MultiPoly drop_last_var(const MultiPoly& p) {
    std::vector<std::string> vars(p.vars().begin(), p.vars().end() - 1);
    MultiPoly r(vars);
    for (auto& [e, c] : p.terms()) {
        if (e.back() != 0) throw DomainError("variable still present");
        r.add_term(Exponent(e.begin(), e.end() - 1), c);
    }
    return r;
}

UPoly common_factor(const CurveSpec& s) {
    std::vector<CycScalar> roots;
    for (int a : s.subsets[1])
        for (int b : s.subsets[2])
            if (a == b) roots.push_back(s.lambda[a - 1]);
    return UPoly::from_roots(roots);
}

}  // namespace

const std::vector<std::string>& curve_coordinates() { return catalog::curve_vars(); }
const std::vector<std::string>& z2_coordinates() { return catalog::z2_vars(); }

SemiMap catalog_map(const ModelRef& dom, const ModelRef& cod, const std::vector<std::string>& comps, GaloisElem twist) {
    const auto& vars = dom.base == "Z2" ? catalog::z2_vars() : catalog::curve_vars();
    return SemiMap::parse(dom, cod, vars, comps, twist);
}

SemiMap l1_star_map() {
    static const SemiMap m = catalog_map({"X", 0}, {"Z2", 0}, catalog::l1_star());
    return m;
}

ModelProvider make_models(std::vector<MultiPoly> z2_relations) {
    struct Cache {
        std::mutex mu;
        std::map<std::pair<std::string, int>, Model> models;
        std::vector<MultiPoly> z2;
    };
    auto cache = std::make_shared<Cache>();
    cache->z2 = std::move(z2_relations);
    auto weak = std::make_shared<ModelProvider>();
    *weak = [cache, weak](const ModelRef& ref) -> Model {
        {
            std::lock_guard<std::mutex> lk(cache->mu);
            auto it = cache->models.find({ref.base, ref.twist});
            if (it != cache->models.end()) return it->second;
        }
        Model m;
        m.ref = ref;
        if (ref.base == "X") {
            m.vars = catalog::curve_vars();
            m.curve = x_spec(ref.twist);
            m.chart = CurveElement::generators(m.curve);
            m.relations = curve_relations(*m.curve);
        } else if (ref.base == "Z2") {
            Model x = (*weak)({"X", ref.twist});
            m.vars = catalog::z2_vars();
            m.curve = x.curve;
            m.chart = l1_star_map().twisted(GaloisElem(ref.twist)).interpret(x);
            for (auto& r : cache->z2) m.relations.push_back(r.twisted(GaloisElem(ref.twist)));
        } else if (ref.base == "P1") {
            m.vars = {"u"};
        } else {
            throw DomainError("unknown model " + ref.base);
        }
        std::lock_guard<std::mutex> lk(cache->mu);
        cache->models.emplace(std::make_pair(ref.base, ref.twist), m);
        return m;
    };
    return [weak](const ModelRef& r) { return (*weak)(r); };
}

const SemiMap& WeilDatum::at(const GaloisElem& g) const {
    auto it = maps.find(g.k);
    if (it == maps.end()) throw DomainError("datum has no map for " + g.name());
    return it->second;
}

WeilDatum listed_datum() {
    WeilDatum d;
    for (int k = 0; k < 6; ++k) d.group.emplace_back(k);
    d.maps.emplace(0, SemiMap::identity({"X", 0}, catalog::curve_vars()));
    for (int k = 1; k < 6; ++k) d.maps.emplace(k, catalog_map({"X", 0}, {"X", k}, catalog::weil_map(k)));
    return d;
}

WeilDatum generate_datum(const SemiMap& f_generator, const std::vector<GaloisElem>& group) {
    if (group.empty() || group[0].k != 0) throw DomainError("group must list the identity first");
    GaloisElem g = group.size() > 1 ? group[1] : group[0];
    for (size_t j = 0; j < group.size(); ++j) {
        GaloisElem e(int(j) * g.k);
        if (group[j] != e) throw DomainError("group list must be successive powers of one generator");
    }
    if (GaloisElem(int(group.size()) * g.k).k != 0) throw DomainError("group list does not close");
    if (f_generator.domain() != ModelRef{"X", 0} || f_generator.codomain() != ModelRef{"X", g.k})
        throw DomainError("generator map must go from X to X^g");
    WeilDatum d;
    d.group = group;
    SemiMap cur = SemiMap::identity({"X", 0}, catalog::curve_vars());
    for (size_t j = 0; j < group.size(); ++j) {
        d.maps.emplace(group[j].k, cur);
        cur = compose(f_generator.twisted(group[j]), cur);
    }
    d.closing = cur;
    return d;
}

std::vector<CocycleResult> cocycle_check(const WeilDatum& datum, const ModelProvider& models) {
    std::vector<CocycleResult> out;
    for (auto& a : datum.group) {
        for (auto& b : datum.group) {
            CocycleResult r;
            r.a = a;
            r.b = b;
            GaloisElem ab = a * b;
            bool closed = false;
            for (auto& g : datum.group) closed = closed || g == ab;
            if (!closed) throw DomainError("group list is not closed");
            SemiMap lhs = datum.at(ab);
            SemiMap rhs = compose(datum.at(b).twisted(a), datum.at(a));
            Model m = models(lhs.domain().twisted(lhs.twist()));
            auto l = lhs.interpret(m), rr = rhs.interpret(m);
            r.ok = lhs.codomain() == rhs.codomain() && lhs.twist() == rhs.twist();
            for (size_t i = 0; i < l.size(); ++i) {
                CurveElement diff = l[i] - rr[i];
                if (!diff.is_zero()) r.ok = false;
                r.residual.push_back(diff);
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<std::string> PermAction::var_names() const {
    std::vector<std::string> v;
    for (auto& b : block_prefixes)
        for (auto& p : position_labels) v.push_back(b + p);
    return v;
}

MultiPoly PermAction::act(const MultiPoly& p, int power) const {
    int n = blocks(), m = block_size();
    if (p.nvars() != n * m) throw DomainError("polynomial is not over the action's variables");
    MultiPoly r(p.vars());
    for (auto& [e, c] : p.terms()) {
        Exponent ne(e.size(), 0);
        for (int b = 0; b < n; ++b)
            for (int q = 0; q < m; ++q) ne[index(((b + power) % n + n) % n, q)] = e[index(b, q)];
        r.add_term(ne, c);
    }
    return r;
}

std::vector<std::complex<double>> PermAction::act(const std::vector<std::complex<double>>& v, int power) const {
    int n = blocks(), m = block_size();
    std::vector<std::complex<double>> r(v.size());
    for (int b = 0; b < n; ++b)
        for (int q = 0; q < m; ++q) r[index(b, q)] = v[index(((b + power) % n + n) % n, q)];
    return r;
}

bool is_invariant(const MultiPoly& p, const PermAction& action) { return action.act(p) == p; }

InvariantSet power_sum_invariants(const PermAction& action, int maxdeg, const std::string& prefix) {
    InvariantSet s;
    s.action = action;
    auto vars = action.var_names();
    int k = 1;
    for (int d = 1; d <= maxdeg; ++d) {
        for (int q = 0; q < action.block_size(); ++q) {
            MultiPoly p(vars);
            for (int b = 0; b < action.blocks(); ++b) p += MultiPoly::variable(vars, action.index(b, q)).pow(d);
            if (!is_invariant(p, action)) throw std::logic_error("power sum not invariant");
            s.polys.push_back(p);
            s.names.push_back(prefix + std::to_string(k++));
        }
    }
    return s;
}

std::vector<Expr> pushforward_exprs(const std::vector<SemiMap>& block_maps, const InvariantSet& inv) {
    if (int(block_maps.size()) != inv.action.blocks()) throw DomainError("one map per block required");
    std::vector<Expr> stacked;
    for (auto& m : block_maps) {
        if (int(m.components().size()) != inv.action.block_size()) throw DomainError("block size mismatch");
        for (auto& c : m.components()) stacked.push_back(c);
    }
    std::vector<Expr> out;
    for (auto& p : inv.polys) out.push_back(to_expr(p).substitute(stacked));
    return out;
}

std::vector<CurveElement> build_pushforward(const Model& x, const std::vector<SemiMap>& block_maps,
                                            const InvariantSet& inv) {
    if (int(block_maps.size()) != inv.action.blocks()) throw DomainError("one map per block required");
    std::vector<CurveElement> stacked;
    for (auto& m : block_maps) {
        auto v = m.interpret(x);
        stacked.insert(stacked.end(), v.begin(), v.end());
    }
    auto spec = x.curve;
    std::vector<CurveElement> out;
    for (auto& p : inv.polys) {
        out.push_back(p.substitute<CurveElement>(
            stacked, [&] { return CurveElement(spec, RatFunc(1)); },
            [&](const CycScalar& c) { return CurveElement(spec, RatFunc(c)); }));
    }
    return out;
}

Step1Inverse solve_inverse_step1(const CurveSpec& spec) {
    std::vector<std::string> V = catalog::z2_vars();
    V.push_back("X3");
    const int iX3 = 5;
    CycScalar third = CycScalar(mpq_class(1, 3));
    auto in_t1 = [&](const UPoly& u) { return MultiPoly::from_upoly(V, 0, u.scaled_arg(third)); };
    UPoly dU = common_factor(spec);
    MultiPoly D = in_t1(dU), F2 = in_t1(spec.f[1]), F4 = in_t1(spec.f[2]);
    MultiPoly X3 = MultiPoly::variable(V, iX3), t3 = MultiPoly::variable(V, "t3"), t11 = MultiPoly::variable(V, "t11");
    MultiPoly D3 = D.pow(3);
    MultiPoly E = (t3 - X3) * D * F4 * (X3 * F2 + D3) - (t11 - X3 * F2) * D3 * (X3 + D);
    // x3^2 = f2(x1) on the curve
    MultiPoly c0(V), c1(V);
    for (auto& [e, c] : E.terms()) {
        Exponent b = e;
        int k = b[iX3];
        b[iX3] = 0;
        MultiPoly t(V);
        t.add_term(b, c);
        t = t * F2.pow(k / 2);
        if (k % 2) c1 += t;
        else c0 += t;
    }
    UPoly dT = dU.scaled_arg(third);
    MultiPoly q0, q1;
    while (c0.divides_by(dT, 0, q0) && c1.divides_by(dT, 0, q1)) {
        c0 = q0;
        c1 = q1;
    }
    if (c1.is_zero()) throw DomainError("elimination degenerated");
    Step1Inverse r;
    MultiPoly num = drop_last_var(-c0), den = drop_last_var(c1);
    MultiPoly Dz = drop_last_var(D), t3z = MultiPoly::variable(catalog::z2_vars(), "t3");
    r.x3_num = num;
    r.x3_den = den;
    r.x4_num = (t3z * den - num) * Dz;
    r.x4_den = num + Dz * den;
    const auto& zv = catalog::z2_vars();
    std::vector<Expr> comps{Expr::var(0) / Expr(3), Expr::var(1) / Expr(3), to_expr(r.x3_num) / to_expr(r.x3_den),
                            to_expr(r.x4_num) / to_expr(r.x4_den)};
    r.inverse = SemiMap({"Z2", 0}, {"X", 0}, zv, comps);
    return r;
}

ModelPolys derive_model_polys(const CurveSpec& spec, const Step1Inverse& inv) {
    const auto& V = catalog::z2_vars();
    CycScalar third = CycScalar(mpq_class(1, 3));
    auto in_t1 = [&](const UPoly& u) { return MultiPoly::from_upoly(V, 0, u.scaled_arg(third)); };
    UPoly dT = common_factor(spec).scaled_arg(third);
    MultiPoly D = in_t1(common_factor(spec)), F1 = in_t1(spec.f[0]), F2 = in_t1(spec.f[1]), F4 = in_t1(spec.f[2]);
    MultiPoly t2 = MultiPoly::variable(V, "t2"), t7 = MultiPoly::variable(V, "t7");
    ModelPolys m;
    m.p1 = (t2 * t2 * CycScalar(mpq_class(1, 9)) - F1) * CycScalar(81);
    MultiPoly r2 = F4 * (F2 + D * D) - (t7 - F2) * D * D, q;
    while (r2.divides_by(dT, 0, q)) r2 = q;
    m.p2 = r2.primitive_integral();
    m.p3 = (inv.x3_num * inv.x3_num - F2 * inv.x3_den * inv.x3_den).primitive_integral();
    m.p4 = (inv.x4_num * inv.x4_num - F4 * inv.x4_den * inv.x4_den).primitive_integral();
    return m;
}

std::vector<MultiPoly> descend_relation(const MultiPoly& p, const Subgroup& h) {
    std::vector<MultiPoly> out;
    for (int i = 0; i < 3; ++i) out.push_back(trace_poly(h, p * CycScalar::rho(i)));
    return out;
}

std::vector<MultiPoly> descend_relations(const ModelPolys& polys, const Subgroup& h) {
    std::vector<MultiPoly> out{polys.p1, polys.p2};
    for (auto* p : {&polys.p3, &polys.p4})
        for (auto& q : descend_relation(*p, h)) out.push_back(q);
    return out;
}

Step2 step2_construct(const Step1Inverse& inv) {
    Step2 s;
    GaloisElem c = GaloisElem::conj();
    s.j = catalog_map({"X", 0}, {"X", 0}, catalog::involution_j(), c);
    s.l1s = l1_star_map();
    s.l1s_inv = inv.inverse;
    s.t = compose(s.l1s, compose(s.j, s.l1s_inv));
    const auto& zv = catalog::z2_vars();
    std::vector<Expr> id;
    for (size_t i = 0; i < zv.size(); ++i) id.push_back(Expr::var(int(i)));
    s.s = SemiMap({"Z2", 0}, {"Z2", 3}, zv, id, c);
    s.g_eta = compose(s.s, s.t);
    return s;
}

std::vector<bool> twisted_relations_vanish(const std::vector<MultiPoly>& z2, const GaloisElem& g,
                                           const ModelProvider& models) {
    Model m = models({"Z2", 0});
    auto spec = m.curve;
    std::vector<bool> out;
    for (auto& r : z2) {
        CurveElement v = r.twisted(g).substitute<CurveElement>(
            m.chart, [&] { return CurveElement(spec, RatFunc(1)); },
            [&](const CycScalar& c) { return CurveElement(spec, RatFunc(c)); });
        out.push_back(v.is_zero());
    }
    return out;
}

PolyComparison compare_polys(const MultiPoly& derived, const MultiPoly& listed) {
    PolyComparison pc;
    pc.derived_terms = int(derived.size());
    pc.listed_terms = int(listed.size());
    std::map<CycScalar, int> votes;
    for (auto& [e, c] : derived.terms()) {
        CycScalar l = listed.coeff(e);
        if (!l.is_zero()) votes[l / c]++;
    }
    int best = 0;
    for (auto& [s, n] : votes)
        if (n > best) {
            best = n;
            pc.scale = s;
        }
    if (best == 0) pc.scale = CycScalar(1);
    std::map<Exponent, bool, GrlexLess> all;
    for (auto& [e, c] : derived.terms()) all[e] = true;
    for (auto& [e, c] : listed.terms()) all[e] = true;
    for (auto& [e, _] : all) {
        CycScalar d = derived.coeff(e), l = listed.coeff(e);
        if (pc.scale * d == l) {
            pc.agreeing++;
        } else {
            pc.mismatches.push_back({e, d, l, l / pc.scale});
        }
    }
    pc.equal_up_to_scale = pc.mismatches.empty();
    return pc;
}

SeparationReport separation_test(const InvariantSet& inv, uint64_t seed, int points) {
    SeparationReport rep;
    rep.points = points;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    int nv = inv.action.blocks() * inv.action.block_size();
    auto values = [&](const std::vector<std::complex<double>>& v) {
        std::vector<std::complex<double>> r;
        for (auto& p : inv.polys) r.push_back(p.eval(v));
        return r;
    };
    auto dist = [](const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
        double m = 0;
        for (size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::abs(a[i] - b[i]) / std::max({1.0, std::abs(a[i]), std::abs(b[i])}));
        return m;
    };
    std::vector<std::vector<std::complex<double>>> pts, vals;
    for (int i = 0; i < points; ++i) {
        std::vector<std::complex<double>> v(nv);
        for (auto& c : v) {
            double re = nd(rng), im = nd(rng);
            c = {re, im};
        }
        pts.push_back(v);
        vals.push_back(values(v));
        for (int k = 1; k < inv.action.blocks(); ++k) {
            double d = dist(vals.back(), values(inv.action.act(v, k)));
            rep.orbit_max_residual = std::max(rep.orbit_max_residual, d);
        }
    }
    rep.orbit_consistent = rep.orbit_max_residual < 1e-9;
    rep.min_separation = points > 1 ? 1e300 : 0;
    for (int i = 0; i < points; ++i)
        for (int j = i + 1; j < points; ++j) rep.min_separation = std::min(rep.min_separation, dist(vals[i], vals[j]));
    rep.random_points_separated = points < 2 || rep.min_separation > 1e-6;
    if (inv.action.blocks() >= 2 && inv.action.block_size() >= 2) {
        for (int i = 0; i < points && !rep.adversarial_collision; ++i) {
            auto w = pts[i];
            for (int b = 0; b < inv.action.blocks(); ++b)
                w[inv.action.index(b, 0)] = pts[i][inv.action.index((b + 1) % inv.action.blocks(), 0)];
            bool in_orbit = false;
            for (int k = 0; k < inv.action.blocks(); ++k)
                if (dist(w, inv.action.act(pts[i], k)) < 1e-12) in_orbit = true;
            if (!in_orbit && dist(values(w), vals[i]) < 1e-9) rep.adversarial_collision = true;
        }
    }
    if (!rep.orbit_consistent) rep.verdict = "not invariant";
    else if (!rep.random_points_separated) rep.verdict = "does not separate random orbits";
    else if (rep.adversarial_collision) rep.verdict = "not separating: a shuffled point outside the orbit has the same invariants";
    else rep.verdict = "separating on tested points";
    return rep;
}

}  // namespace fmd
