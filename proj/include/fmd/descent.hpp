#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmd/curve.hpp"

namespace fmd {

// Models X^{sigma^k} (curve coordinates) and Z2^{sigma^k} (coordinates
// pulled back through the twisted pushforward). Z2 relations are optional.
ModelProvider make_models(std::vector<MultiPoly> z2_relations = {});
const std::vector<std::string>& curve_coordinates();
const std::vector<std::string>& z2_coordinates();

SemiMap catalog_map(const ModelRef& dom, const ModelRef& cod, const std::vector<std::string>& comps,
                    GaloisElem twist = GaloisElem());
SemiMap l1_star_map();

struct WeilDatum {
    std::vector<GaloisElem> group;
    std::map<int, SemiMap> maps;
    // f_{g^n} from generate_datum, expected to be the identity
    std::optional<SemiMap> closing;
    const SemiMap& at(const GaloisElem& g) const;
};

WeilDatum listed_datum();
// f_{g^{j+1}} = f_g^{g^j} o f_{g^j} from f_e = id; group lists g^0, g^1, ...
WeilDatum generate_datum(const SemiMap& f_generator, const std::vector<GaloisElem>& group);

struct CocycleResult {
    GaloisElem a, b;
    bool ok = false;
    std::vector<CurveElement> residual;
};
std::vector<CocycleResult> cocycle_check(const WeilDatum& datum, const ModelProvider& models);

// Cyclic block permutation: Theta(v_0, ..., v_{n-1}) = (v_1, ..., v_{n-1}, v_0).
struct PermAction {
    std::vector<std::string> block_prefixes;
    std::vector<std::string> position_labels;
    int blocks() const { return int(block_prefixes.size()); }
    int block_size() const { return int(position_labels.size()); }
    std::vector<std::string> var_names() const;
    int index(int block, int pos) const { return block * block_size() + pos; }
    // p o Theta^power
    MultiPoly act(const MultiPoly& p, int power = 1) const;
    std::vector<std::complex<double>> act(const std::vector<std::complex<double>>& v, int power = 1) const;
};

struct InvariantSet {
    PermAction action;
    std::vector<std::string> names;
    std::vector<MultiPoly> polys;
};

bool is_invariant(const MultiPoly& p, const PermAction& action);
// Degree d power sums for each position, d = 1..maxdeg, degree-major order.
InvariantSet power_sum_invariants(const PermAction& action, int maxdeg, const std::string& prefix);

// Components of Psi o Phi where Phi stacks the block maps.
std::vector<Expr> pushforward_exprs(const std::vector<SemiMap>& block_maps, const InvariantSet& inv);
std::vector<CurveElement> build_pushforward(const Model& x, const std::vector<SemiMap>& block_maps,
                                            const InvariantSet& inv);

struct Step1Inverse {
    MultiPoly x3_num, x3_den, x4_num, x4_den;
    SemiMap inverse;  // Z2 -> X
};
// Eliminates x3 from t3 = x3 + x4 + x3 x4 / D and the cubic power sum.
Step1Inverse solve_inverse_step1(const CurveSpec& spec);

struct ModelPolys {
    MultiPoly p1, p2, p3, p4;
};
ModelPolys derive_model_polys(const CurveSpec& spec, const Step1Inverse& inv);

// [Tr(P), Tr(r P), Tr(r^2 P)] over the subgroup.
std::vector<MultiPoly> descend_relation(const MultiPoly& p, const Subgroup& h);
// P1, P2 and the traces of P3, P4.
std::vector<MultiPoly> descend_relations(const ModelPolys& polys, const Subgroup& h);

struct Step2 {
    SemiMap j, l1s, l1s_inv, t, s, g_eta;
};
Step2 step2_construct(const Step1Inverse& inv);

// Residual of each twisted relation on Z2; a nonzero entry shows the
// twisted model differs, so the stabilizer of the stacked image is trivial.
std::vector<bool> twisted_relations_vanish(const std::vector<MultiPoly>& z2, const GaloisElem& g,
                                           const ModelProvider& models);

struct MonomialDiff {
    Exponent exp;
    CycScalar derived, listed, scaled_listed;
};
struct PolyComparison {
    bool equal_up_to_scale = false;
    CycScalar scale;  // listed = scale * derived on the agreeing monomials
    int derived_terms = 0, listed_terms = 0, agreeing = 0;
    std::vector<MonomialDiff> mismatches;
};
PolyComparison compare_polys(const MultiPoly& derived, const MultiPoly& listed);

struct SeparationReport {
    int points = 0;
    bool orbit_consistent = true;
    bool random_points_separated = true;
    bool adversarial_collision = false;
    double orbit_max_residual = 0;
    double min_separation = 0;
    std::string verdict;
};
// Random points of the ambient space: invariants must agree on orbits; a
// per-position block shuffle outside the orbit is tested for collision.
SeparationReport separation_test(const InvariantSet& inv, uint64_t seed, int points);

}  // namespace fmd
