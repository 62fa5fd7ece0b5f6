#include "fmd/numerics.hpp"

#include <cmath>
#include <random>
#include <set>

namespace fmd {

cplx embed(const CycScalar& a) { return a.embed(1); }

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::vector<EmbeddedPoint> sample_points(const CurveSpec& spec, int count, uint64_t seed) {
    if (count < 1) throw DomainError("sample count must be positive");
    std::mt19937_64 rng(seed);
    std::vector<EmbeddedPoint> out;
    std::set<mpq_class> used;
    int made = 0;
    while (made < count) {
        long p = long(rng() % 61) - 30;
        long q = long(rng() % 12) + 1;
        mpq_class xq(p, q);
        xq.canonicalize();
        double x = xq.get_d();
        bool degenerate = std::abs(x) < 0.05;
        for (auto& l : spec.lambda) degenerate = degenerate || std::abs(cplx(x) - l.embed(1)) < 0.05;
        if (degenerate || !used.insert(xq).second) continue;
        std::array<cplx, 3> y;
        for (int i = 0; i < 3; ++i) y[i] = std::sqrt(spec.f[i].eval(cplx(x)));
        for (int b = 0; b < 8; ++b) {
            EmbeddedPoint ep;
            ep.branch = b;
            ep.x_text = xq.get_str();
            ep.coords[0] = x;
            for (int i = 0; i < 3; ++i) ep.coords[i + 1] = (b >> i & 1) ? -y[i] : y[i];
            out.push_back(ep);
        }
        ++made;
    }
    return out;
}

double curve_residual(const CurveSpec& spec, const EmbeddedPoint& p) {
    double m = 0;
    for (int i = 0; i < 3; ++i) m = std::max(m, rel_diff(p.coords[i + 1] * p.coords[i + 1], spec.f[i].eval(p.coords[0])));
    return m;
}

double rel_diff(cplx a, cplx b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) return INFINITY;
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, rel_diff(a[i], b[i]));
    return m;
}

double poly_residual(const MultiPoly& p, const std::vector<cplx>& v) {
    auto [val, scale] = p.eval_with_scale(v);
    if (scale == 0) return val;
    return val / scale;
}

ClaimResult verify_numeric(const std::string& id, const Claim& claim, const std::vector<EmbeddedPoint>& points,
                           double tolerance) {
    ClaimResult r;
    r.id = id;
    for (auto& p : points) {
        std::optional<double> v;
        try {
            v = claim(p);
        } catch (const DomainError&) {
            v.reset();
        }
        if (!v || !std::isfinite(*v)) {
            r.skipped++;
            continue;
        }
        r.evaluated++;
        r.max_residual = std::max(r.max_residual, *v);
    }
    r.pass = r.evaluated > 0 && r.max_residual < tolerance;
    return r;
}

std::optional<std::vector<cplx>> apply_map(const SemiMap& m, const std::vector<cplx>& v) {
    auto out = m.apply(v);
    for (auto& z : out)
        if (!finite(z) || std::abs(z) > 1e150) return std::nullopt;
    return out;
}

}  // namespace fmd
