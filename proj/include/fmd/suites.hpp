#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fmd/descent.hpp"
#include "fmd/homology.hpp"
#include "fmd/numerics.hpp"

namespace fmd {

using ojson = nlohmann::ordered_json;

struct RunConfig {
    uint64_t seed = 0;
    double tolerance = 1e-9;
    int points = 20;
};

enum class CheckKind { Exact, Numeric, Finding };
std::string kind_tag(CheckKind k);

struct Check {
    std::string id;
    CheckKind kind = CheckKind::Exact;
    bool pass = false;
    ojson detail = ojson::object();
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;
    double seconds = 0;
    // Exact and numeric checks all pass; findings do not gate.
    bool ok() const;
    const Check* find(const std::string& id) const;
};

// Derived artifacts shared by the suites, computed on first use.
class Context {
public:
    explicit Context(RunConfig cfg = {});
    const RunConfig& config() const { return cfg_; }
    std::shared_ptr<const CurveSpec> curve() const { return curve_; }
    const ModelProvider& base_models() const { return base_; }
    const Step1Inverse& inverse();
    const ModelPolys& polys();
    const std::vector<MultiPoly>& z2_relations();
    const ModelProvider& models();
    const Step2& step2();
    const std::vector<EmbeddedPoint>& points();
    double derivation_seconds() const { return derive_seconds_; }

private:
    RunConfig cfg_;
    std::shared_ptr<const CurveSpec> curve_;
    ModelProvider base_;
    std::optional<Step1Inverse> inverse_;
    std::optional<ModelPolys> polys_;
    std::optional<std::vector<MultiPoly>> z2_;
    std::optional<ModelProvider> models_;
    std::optional<Step2> step2_;
    std::optional<std::vector<EmbeddedPoint>> points_;
    double derive_seconds_ = 0;
};

using Progress = std::function<void(const std::string& suite, const Check&)>;

// cocycle, automorphisms, step1, appendix, descent, step2, homology
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, Context& ctx, const Progress& progress = {});

ojson descent_report(const std::vector<SuiteResult>& results, const RunConfig& cfg);
ojson numeric_report(const std::vector<SuiteResult>& results, const RunConfig& cfg);
ojson homology_model();

struct EmittedModel {
    std::string name;
    std::string field_level;
    std::vector<std::string> vars;
    std::vector<MultiPoly> relations;
    std::vector<std::string> notes;
};
// x, z1, z2, homology
const std::vector<std::string>& model_names();
EmittedModel emit_model(const std::string& name, Context& ctx);
ojson model_json(const EmittedModel& m);
std::string model_text(const EmittedModel& m);
EmittedModel model_from_json(const ojson& j);
EmittedModel model_from_text(const std::string& text);
std::string join_field_levels(const std::vector<MultiPoly>& polys);

}  // namespace fmd
