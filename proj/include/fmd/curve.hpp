#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fmd/expr.hpp"

namespace fmd {

// Fiber product of three genus-one curves y_i^2 = f_i(x), each f_i the
// product of (x - lambda_k) over a 4-subset of seven branch values.
struct CurveSpec {
    std::array<CycScalar, 7> lambda;
    std::array<std::array<int, 4>, 3> subsets;  // 1-based indices into lambda
    std::array<UPoly, 3> f;
    std::array<UPoly, 8> fprod;  // product of f_i over the bits of a mask
    std::string name;

    static std::shared_ptr<const CurveSpec> make(const std::array<CycScalar, 7>& lambda,
                                                 const std::array<std::array<int, 4>, 3>& subsets,
                                                 const std::string& name);
    // Branch values r^0..r^6 with subsets {1,4,6,7}, {3,5,6,7}, {2,4,5,6}.
    static std::shared_ptr<const CurveSpec> macbeath();
    std::shared_ptr<const CurveSpec> twisted(const GaloisElem& g, const std::string& name) const;
    std::vector<std::string> vars() const { return {"x", "y1", "y2", "y4"}; }
};

// Function field element sum_m c_m(x) y1^a y2^b y4^c with mask m = a + 2b + 4c.
class CurveElement {
public:
    CurveElement() = default;
    CurveElement(std::shared_ptr<const CurveSpec> spec, const RatFunc& scalar);
    static CurveElement x(std::shared_ptr<const CurveSpec> spec);
    // i in {1, 2, 4}
    static CurveElement y(std::shared_ptr<const CurveSpec> spec, int i);
    static std::vector<CurveElement> generators(std::shared_ptr<const CurveSpec> spec);

    const std::shared_ptr<const CurveSpec>& spec() const { return spec_; }
    const RatFunc& slot(int m) const { return c_[m]; }
    RatFunc& slot(int m) { return c_[m]; }
    bool is_zero() const;
    bool is_scalar() const;

    CurveElement operator-() const;
    CurveElement& operator+=(const CurveElement& o);
    CurveElement& operator-=(const CurveElement& o);
    friend CurveElement operator+(CurveElement a, const CurveElement& b) { return a += b; }
    friend CurveElement operator-(CurveElement a, const CurveElement& b) { return a -= b; }
    friend CurveElement operator*(const CurveElement& a, const CurveElement& b);
    friend CurveElement operator/(const CurveElement& a, const CurveElement& b) { return a * b.inverse(); }
    bool operator==(const CurveElement& o) const;
    bool operator!=(const CurveElement& o) const { return !(*this == o); }

    // Sign conjugate negating y_i for every bit i of mask.
    CurveElement sign_conjugate(int mask) const;
    // Inverse through the tower norm; result verified against a * a^-1 = 1.
    CurveElement inverse() const;
    CurveElement pow(int e) const;

    std::complex<double> eval(const std::array<std::complex<double>, 4>& pt) const;
    nlohmann::json to_json() const;

private:
    void adopt(const CurveElement& o);
    std::shared_ptr<const CurveSpec> spec_;
    std::array<RatFunc, 8> c_;
};

CurveElement ff_inverse(const CurveElement& a);

// Names a model and its twist by sigma^twist.
struct ModelRef {
    std::string base;
    int twist = 0;
    ModelRef twisted(const GaloisElem& g) const { return {base, (twist + g.k) % 6}; }
    bool operator==(const ModelRef& o) const { return base == o.base && twist == o.twist; }
    bool operator!=(const ModelRef& o) const { return !(*this == o); }
    std::string name() const;
};

// A concrete model: coordinate names, coordinate functions pulled back to a
// curve, and defining relations.
struct Model {
    ModelRef ref;
    std::vector<std::string> vars;
    std::shared_ptr<const CurveSpec> curve;
    std::vector<CurveElement> chart;
    std::vector<MultiPoly> relations;
};
using ModelProvider = std::function<Model(const ModelRef&)>;

// A o kappa_twist with A given by expressions in the domain coordinates.
class SemiMap {
public:
    SemiMap() = default;
    SemiMap(ModelRef domain, ModelRef codomain, std::vector<std::string> domain_vars, std::vector<Expr> comps,
            GaloisElem twist = GaloisElem());
    static SemiMap parse(ModelRef domain, ModelRef codomain, const std::vector<std::string>& domain_vars,
                         const std::vector<std::string>& comps, GaloisElem twist = GaloisElem());
    static SemiMap identity(ModelRef m, const std::vector<std::string>& vars);

    const ModelRef& domain() const { return domain_; }
    const ModelRef& codomain() const { return codomain_; }
    const std::vector<std::string>& domain_vars() const { return vars_; }
    const std::vector<Expr>& components() const { return comps_; }
    GaloisElem twist() const { return twist_; }

    // Conjugate of the map by g: algebraic part twisted, models twisted.
    SemiMap twisted(const GaloisElem& g) const;
    std::vector<CurveElement> interpret(const Model& algebraic_domain) const;

    nlohmann::json to_json() const;
    static SemiMap from_json(const nlohmann::json& j, ModelRef domain, ModelRef codomain);

    // Numeric image; only twists fixing the real embedding pairing are supported.
    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& pt) const;

private:
    ModelRef domain_, codomain_;
    std::vector<std::string> vars_;
    std::vector<Expr> comps_;
    GaloisElem twist_;
};

// (A o kappa_g) o (B o kappa_h) = (A o B^g) o kappa_gh
SemiMap compose(const SemiMap& outer, const SemiMap& inner);

std::vector<CurveElement> interpret(const std::vector<Expr>& comps, const std::vector<CurveElement>& bindings);
CurveElement interpret(const Expr& e, const std::vector<CurveElement>& bindings);

bool maps_equal(const SemiMap& a, const SemiMap& b, const ModelProvider& models);
// Residuals of the codomain relations under the map; empty when preserved.
std::vector<CurveElement> map_preserves_curve(const SemiMap& m, const ModelProvider& models);
bool is_identity(const SemiMap& m, const ModelProvider& models);
// Smallest k in 1..maxorder with j o b = b^k o j.
std::optional<int> resolve_conjugation_relation(const SemiMap& j, const SemiMap& b, int maxorder,
                                                const ModelProvider& models);
// Smallest n in 1..maxorder with m^n = id.
std::optional<int> map_order(const SemiMap& m, int maxorder, const ModelProvider& models);

}  // namespace fmd
