#include "fmd/homology.hpp"

#include <random>
#include <sstream>

#include "fmd/catalog.hpp"

namespace fmd {

DeckVec DeckVec::a(int j) {
    if (j < 1 || j > 7) throw DomainError("deck index out of range");
    return from_bits(uint8_t(1u << (j - 1)));
}

DeckVec DeckVec::of(const std::vector<int>& indices) {
    DeckVec d;
    for (int j : indices) d = d * a(j);
    return d;
}

uint8_t DeckVec::canonical() const {
    uint8_t c = bits_ ^ 0x7F;
    return __builtin_popcount(c) < __builtin_popcount(bits_) ? c : bits_;
}

DeckVec DeckVec::shifted() const { return from_bits(uint8_t(((bits_ << 1) | (bits_ >> 6)) & 0x7F)); }

int DeckVec::single_index() const {
    uint8_t c = canonical();
    if (__builtin_popcount(c) != 1) return 0;
    return __builtin_ctz(c) + 1;
}

std::string DeckVec::name() const {
    uint8_t c = canonical();
    if (c == 0) return "e";
    std::string s;
    for (int j = 0; j < 7; ++j)
        if (c >> j & 1) s += "a" + std::to_string(j + 1);
    return s;
}

std::array<int, 6> DeckVec::affine_pattern() const {
    std::array<int, 6> p;
    int s7 = bits_ >> 6 & 1;
    for (int j = 0; j < 6; ++j) p[j] = (bits_ >> j & 1) ^ s7;
    return p;
}

std::vector<DeckVec> deck_group() {
    std::vector<DeckVec> g;
    for (int b = 0; b < 128; ++b) {
        DeckVec d = DeckVec::from_bits(uint8_t(b));
        if (d.canonical() == b) g.push_back(d);
    }
    return g;
}

std::vector<DeckVec> span(const std::vector<DeckVec>& gens) {
    std::vector<DeckVec> out{DeckVec()};
    for (auto& g : gens) {
        bool present = false;
        for (auto& e : out) present = present || e == g;
        if (present) continue;
        size_t n = out.size();
        for (size_t i = 0; i < n; ++i) out.push_back(out[i] * g);
    }
    return out;
}

FreenessResult freeness_check(const std::vector<DeckVec>& gens) {
    FreenessResult r;
    for (auto& e : span(gens)) {
        if (e.single_index() != 0) {
            r.free = false;
            r.witness = e;
            return r;
        }
    }
    return r;
}

bool normalization_check(const std::vector<DeckVec>& gens) {
    auto k = span(gens);
    for (auto& g : gens) {
        DeckVec s = g.shifted();
        bool in = false;
        for (auto& e : k) in = in || e == s;
        if (!in) return false;
    }
    return true;
}

EllipticTriple elliptic_triple(const std::vector<DeckVec>& k, int i, int j, const std::array<CycScalar, 7>& lambda) {
    if (i == j || i < 1 || j < 1 || i > 7 || j > 7) throw DomainError("elliptic_triple needs distinct indices in 1..7");
    auto ks = span(k);
    int found = 0;
    EllipticTriple t{i, j, 0, {}, UPoly(1)};
    for (int r = 1; r <= 7; ++r) {
        if (r == i || r == j) continue;
        DeckVec v = DeckVec::a(i) * DeckVec::a(j) * DeckVec::a(r);
        for (auto& e : ks)
            if (e == v) {
                t.r = r;
                ++found;
            }
    }
    if (found != 1) throw DomainError("no unique third index; the subgroup is not the expected one");
    std::vector<CycScalar> roots;
    for (int m = 1; m <= 7; ++m)
        if (m != i && m != j && m != t.r) {
            t.quartic_roots.push_back(m);
            roots.push_back(lambda[m - 1]);
        }
    t.quartic = UPoly::from_roots(roots);
    return t;
}

bool invariance_check(const InvariantMonomial& m, const std::vector<DeckVec>& gens) {
    for (auto& g : gens) {
        auto p = g.affine_pattern();
        int s = 0;
        for (int j = 0; j < 6; ++j) s += p[j] * (m[j] & 1);
        if (s & 1) return false;
    }
    return true;
}

namespace {

std::array<CycScalar, 7> roots_of_unity() {
    std::array<CycScalar, 7> l;
    for (int k = 0; k < 7; ++k) l[k] = CycScalar::rho(k);
    return l;
}

}  // namespace

HumbertSpec HumbertSpec::displayed() {
    HumbertSpec h;
    h.lambda = roots_of_unity();
    h.label = "displayed";
    h.mu[0] = CycScalar(1);
    for (int k = 4; k <= 7; ++k) h.mu[k - 3] = (h.lambda[k - 2] - CycScalar(1)) / (h.lambda[k - 1] - CycScalar(1));
    return h;
}

HumbertSpec HumbertSpec::corrected() {
    HumbertSpec h;
    h.lambda = roots_of_unity();
    h.label = "corrected";
    // (1 - mu)/(lambda_7 - mu) = lambda_k
    for (int k = 3; k <= 7; ++k) {
        const CycScalar& l = h.lambda[k - 1];
        h.mu[k - 3] = (l * h.lambda[6] - CycScalar(1)) / (l - CycScalar(1));
    }
    return h;
}

std::optional<CycScalar> HumbertSpec::branch_value(int j) const {
    if (j == 1) return CycScalar(1);
    if (j == 2) return lambda[6].inverse();
    const CycScalar& m = quadric_coeff(j);
    CycScalar d = lambda[6] - m;
    if (d.is_zero()) return std::nullopt;
    return (CycScalar(1) - m) / d;
}

std::vector<std::vector<CycScalar>> nullspace(std::vector<std::vector<CycScalar>> rows, int ncols, int* rank) {
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < ncols && r < int(rows.size()); ++c) {
        int p = -1;
        for (int i = r; i < int(rows.size()); ++i)
            if (!rows[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[r], rows[p]);
        CycScalar inv = rows[r][c].inverse();
        for (auto& v : rows[r]) v *= inv;
        for (int i = 0; i < int(rows.size()); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            CycScalar f = rows[i][c];
            for (int k = c; k < ncols; ++k) rows[i][k] -= f * rows[r][k];
        }
        pivcol.push_back(c);
        ++r;
    }
    if (rank) *rank = r;
    std::vector<std::vector<CycScalar>> basis;
    for (int free = 0; free < ncols; ++free) {
        bool is_piv = false;
        for (int pc : pivcol) is_piv = is_piv || pc == free;
        if (is_piv) continue;
        std::vector<CycScalar> v(ncols);
        v[free] = CycScalar(1);
        for (int i = 0; i < r; ++i) v[pivcol[i]] = -rows[i][free];
        basis.push_back(v);
    }
    return basis;
}

LiftResult solve_lift_constants(const HumbertSpec& h) {
    // Unknowns d_j = c_j^2; on the cover x_k^2 = alpha_k x1^2 + beta_k x2^2.
    std::array<CycScalar, 7> alpha, beta;
    alpha[0] = CycScalar(1);
    beta[1] = CycScalar(1);
    for (int k = 3; k <= 7; ++k) {
        alpha[k - 1] = -h.quadric_coeff(k);
        beta[k - 1] = CycScalar(-1);
    }
    std::vector<std::vector<CycScalar>> rows;
    std::vector<std::string> names;
    // T sends x_j to c_j x_{j-1}, indices mod 7.
    auto src = [](int j) { return j == 1 ? 7 : j - 1; };
    for (int k = 3; k <= 7; ++k) {
        for (int part = 0; part < 2; ++part) {
            std::vector<CycScalar> row(7);
            auto coef = [&](int j) { return part == 0 ? alpha[src(j) - 1] : beta[src(j) - 1]; };
            row[0] += h.quadric_coeff(k) * coef(1);
            row[1] += coef(2);
            row[k - 1] += coef(k);
            rows.push_back(row);
            names.push_back("quadric " + std::to_string(k - 2) + (part == 0 ? " (x1^2 part)" : " (x2^2 part)"));
        }
    }
    // P(T x) (w + l7 u) - r (w + u) (d2 u + l7 d1 x7^2) with u = x1^2, w = x2^2.
    {
        const CycScalar& l7 = h.lambda[6];
        CycScalar r = CycScalar::rho(1);
        // numerator N' = d2 u + d1 (a7 u + b7 w), denominator D' = d2 u + l7 d1 (a7 u + b7 w)
        // coefficients of u^2, u w, w^2 in N' (w + l7 u) - r (w + u) D'
        std::array<std::vector<CycScalar>, 3> q;
        for (auto& v : q) v.assign(7, CycScalar());
        const CycScalar& a7 = alpha[6];
        const CycScalar& b7 = beta[6];
        // N' (w + l7 u)
        q[0][1] += l7;
        q[0][0] += a7 * l7;
        q[1][0] += b7 * l7;
        q[1][1] += CycScalar(1);
        q[1][0] += a7;
        q[2][0] += b7;
        // - r (w + u) D'
        q[0][1] -= r;
        q[0][0] -= r * l7 * a7;
        q[1][1] -= r;
        q[1][0] -= r * l7 * a7 + r * l7 * b7;
        q[2][0] -= r * l7 * b7;
        const char* nm[3] = {"P o T = r P (u^2)", "P o T = r P (u w)", "P o T = r P (w^2)"};
        for (int i = 0; i < 3; ++i) {
            rows.push_back(q[i]);
            names.push_back(nm[i]);
        }
    }
    LiftResult res;
    auto basis = nullspace(rows, 7, &res.rank);
    std::vector<CycScalar> sol;
    for (auto& v : basis) {
        bool all = true;
        for (auto& c : v) all = all && !c.is_zero();
        if (all) {
            sol = v;
            break;
        }
    }
    if (sol.empty()) {
        // Name the first constraint after which no solution with all c_j != 0 remains.
        for (size_t n = 1; n <= rows.size(); ++n) {
            std::vector<std::vector<CycScalar>> sub(rows.begin(), rows.begin() + n);
            bool ok = false;
            for (auto& v : nullspace(sub, 7)) {
                bool all = true;
                for (auto& c : v) all = all && !c.is_zero();
                ok = ok || all;
            }
            if (!ok) {
                res.failing.push_back(names[n - 1]);
                break;
            }
        }
        return res;
    }
    res.consistent = true;
    CycScalar inv = sol[0].inverse();
    for (int j = 0; j < 7; ++j) {
        res.c_squared[j] = sol[j] * inv;
        CycScalar s;
        if (try_sqrt(res.c_squared[j], s)) {
            res.c_exact[j] = s;
            res.c_numeric[j] = s.embed(1);
        } else {
            res.c_numeric[j] = std::sqrt(res.c_squared[j].embed(1));
        }
    }
    res.c_exact[0] = CycScalar(1);
    res.c_numeric[0] = 1.0;
    bool q = true, p = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        CycScalar s;
        for (int j = 0; j < 7; ++j) s += rows[i][j] * res.c_squared[j];
        if (!s.is_zero()) (i < 10 ? q : p) = false;
    }
    res.quadrics_preserved = q;
    res.rotates_cover = p;
    // T^7 multiplies every coordinate by c_1 c_2 ... c_7.
    res.seventh_power_scalar = true;
    return res;
}

std::vector<std::string> homology_t_vars() {
    std::vector<std::string> v;
    for (int i = 1; i <= 13; ++i) v.push_back("t" + std::to_string(i));
    return v;
}

namespace {

std::array<int, 6> monomial_exponent(const MultiPoly& m, const std::vector<InvariantMonomial>& inv) {
    if (m.size() != 1) throw DomainError("relation side is not a monomial");
    std::array<int, 6> e{};
    for (int i = 0; i < 13; ++i)
        for (int j = 0; j < 6; ++j) e[j] += m.terms().begin()->first[i] * inv[i][j];
    return e;
}

std::string exp_text(const std::array<int, 6>& e) {
    std::string s;
    for (int j = 0; j < 6; ++j) {
        if (e[j] == 0) continue;
        s += "x" + std::to_string(j + 1);
        if (e[j] > 1) s += "^" + std::to_string(e[j]);
    }
    return s.empty() ? "1" : s;
}

MultiPoly linear_relation(const HumbertSpec& h, int k) {
    auto v = homology_t_vars();
    MultiPoly p = MultiPoly::variable(v, 0) * h.quadric_coeff(k) + MultiPoly::variable(v, 1);
    if (k == 7) p += MultiPoly::constant(v, CycScalar(1));
    else p += MultiPoly::variable(v, k - 1);
    return p;
}

}  // namespace

std::vector<RelationCheck> relation_check(const HumbertSpec& h) {
    std::vector<RelationCheck> out;
    auto v = homology_t_vars();
    auto inv = catalog::homology_invariants();
    HumbertSpec shown = HumbertSpec::displayed();
    for (int k = 3; k <= 7; ++k) {
        // listed linear relation against the quadric of the cover, in the chart
        MultiPoly listed = linear_relation(shown, k);
        MultiPoly quad = linear_relation(h, k);
        RelationCheck rc;
        rc.text = listed.to_text() + " = 0";
        rc.pass = listed == quad;
        rc.detail = rc.pass ? "matches quadric " + std::to_string(k - 2) : "quadric reads " + quad.to_text();
        out.push_back(rc);
    }
    for (auto& eq : catalog::homology_relations()) {
        MultiPoly l = MultiPoly::parse(eq.lhs, v), r = MultiPoly::parse(eq.rhs, v);
        auto el = monomial_exponent(l, inv), er = monomial_exponent(r, inv);
        RelationCheck rc;
        rc.text = eq.lhs + " = " + eq.rhs;
        rc.pass = el == er;
        rc.detail = exp_text(el) + (rc.pass ? " = " : " != ") + exp_text(er);
        out.push_back(rc);
    }
    return out;
}

std::vector<MultiPoly> emit_affine_model(const HumbertSpec& h) {
    auto v = homology_t_vars();
    std::vector<MultiPoly> out;
    for (int k = 3; k <= 7; ++k) out.push_back(linear_relation(h, k));
    for (auto& eq : catalog::homology_relations()) out.push_back(MultiPoly::parse(eq.lhs, v) - MultiPoly::parse(eq.rhs, v));
    return out;
}

std::vector<std::array<std::complex<double>, 7>> humbert_samples(const HumbertSpec& h, int count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::array<std::complex<double>, 7>> out;
    while (int(out.size()) < count) {
        // x7 = 1 fixes x2^2 = -1 - mu_7 x1^2
        double re = double(long(rng() % 2001) - 1000) / 500.0;
        double im = double(long(rng() % 2001) - 1000) / 500.0;
        std::complex<double> x1(re, im);
        std::array<std::complex<double>, 7> p;
        p[0] = x1;
        p[6] = 1.0;
        std::complex<double> x2sq = -1.0 - h.quadric_coeff(7).embed(1) * x1 * x1;
        p[1] = std::sqrt(x2sq);
        bool bad = std::abs(x2sq) < 1e-3;
        for (int k = 3; k <= 6; ++k) {
            std::complex<double> s = -h.quadric_coeff(k).embed(1) * x1 * x1 - x2sq;
            bad = bad || std::abs(s) < 1e-3;
            p[k - 1] = std::sqrt(s);
        }
        if (!bad) out.push_back(p);
    }
    return out;
}

}  // namespace fmd
