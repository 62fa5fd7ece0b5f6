// One PASS/FAIL line per acceptance criterion; exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "fmd/suites.hpp"

using namespace fmd;

namespace {

struct Criterion {
    Criterion(int n, std::string t) : number(n), title(std::move(t)) {}
    int number;
    std::string title;
    bool pass = true;
    std::vector<std::string> missing;
};

class Gate {
public:
    explicit Gate(Criterion& c, const SuiteResult& r) : c_(c), r_(r) {}
    // Gating check: must exist and pass.
    void require(const std::string& id) {
        const Check* k = r_.find(id);
        if (!k || !k->pass) fail(id);
    }
    // Recorded outcome: must exist, either verdict accepted.
    void recorded(const std::string& id) {
        if (!r_.find(id)) fail(id + " (not recorded)");
    }
    void all_numeric() {
        for (auto& k : r_.checks)
            if (k.kind == CheckKind::Numeric && !k.pass) fail(k.id);
    }
    void condition(bool ok, const std::string& what) {
        if (!ok) fail(what);
    }

private:
    void fail(const std::string& what) {
        c_.pass = false;
        c_.missing.push_back(what);
    }
    Criterion& c_;
    const SuiteResult& r_;
};

void print(const Criterion& c, double seconds) {
    std::printf("criterion %d (%s): %s [%.2f s]\n", c.number, c.title.c_str(), c.pass ? "PASS" : "FAIL", seconds);
    for (auto& m : c.missing) std::printf("    failed: %s\n", m.c_str());
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    using clk = std::chrono::steady_clock;
    RunConfig cfg;
    Context ctx(cfg);
    std::map<std::string, SuiteResult> res;
    auto t_all = clk::now();
    for (auto& n : suite_names()) res[n] = run_suite(n, ctx);
    double all_seconds = since(t_all);

    std::vector<std::pair<Criterion, double>> out;
    auto add = [&](Criterion c, double s) { out.emplace_back(std::move(c), s); };

    {
        Criterion c{1, "cocycle"};
        auto& r = res["cocycle"];
        Gate g(c, r);
        g.require("cocycle pairs passing");
        for (auto& a : {0, 1, 2, 3, 4, 5})
            for (auto& b : {0, 1, 2, 3, 4, 5})
                g.require("cocycle (" + GaloisElem(a).name() + "," + GaloisElem(b).name() + ")");
        g.condition(r.seconds < 60, "runtime under 60 s");
        add(c, r.seconds);
    }
    {
        Criterion c{2, "automorphisms"};
        auto& r = res["automorphisms"];
        Gate g(c, r);
        for (auto id : {"A1 preserves X", "A2 preserves X", "A4 preserves X", "B preserves X", "B has order 7",
                        "J o J = id", "J A1 J = A1^k with k = 1", "J A2 J = A2^k with k = 1",
                        "J A4 J = A4^k with k = 1"})
            g.require(id);
        g.recorded("relation between J and B");
        add(c, r.seconds);
    }
    {
        Criterion c{3, "first descent step"};
        auto& r = res["step1"];
        Gate g(c, r);
        for (auto id : {"L1* equals the projected pushforward", "redundant relation t4 = t3",
                        "redundant relation 3*t5 = t1^2", "redundant relation 3*t6 = t2^2",
                        "redundant relation 9*t9 = t1^3", "redundant relation 9*t10 = t2^3",
                        "redundant relation t12 = t11", "round trip (L1*)^-1 o L1* = id",
                        "derived P1 equals the listing", "derived P2 equals the listing"})
            g.require(id);
        add(c, r.seconds);
    }
    {
        Criterion c{4, "appendix polynomials"};
        auto& r = res["appendix"];
        Gate g(c, r);
        for (auto p : {"P3", "P4"}) {
            std::string n = p;
            g.require("derived " + n + " vanishes on Z2");
            g.recorded("transcribed " + n + " equals the derived " + n);
            g.require("transcription differences of " + n + " localized");
        }
        add(c, r.seconds);
    }
    {
        Criterion c{5, "descent to Q(sqrt(-7))"};
        auto& r = res["descent"];
        Gate g(c, r);
        g.require("eight Z2 relations");
        for (std::string n : {"P1", "P2", "Tr(P3)", "Tr(rho P3)", "Tr(rho^2 P3)", "Tr(P4)", "Tr(rho P4)", "Tr(rho^2 P4)"}) {
            g.require(n + " has coefficients in Q(sqrt(-7))");
            g.require(n + " vanishes on Z2");
        }
        add(c, r.seconds);
    }
    {
        Criterion c{6, "second descent step"};
        auto& r = res["step2"];
        Gate g(c, r);
        g.require("g_eta^eta o g_eta = id");
        g.recorded("stabilizer of the stacked image is trivial");
        g.require("numeric distinct points give distinct q-vectors");
        g.require("numeric g_eta-paired points share q-vectors");
        g.condition(cfg.points == 20, "20 sample points");
        add(c, r.seconds);
    }
    {
        Criterion c{7, "homology cover"};
        auto& r = res["homology"];
        Gate g(c, r);
        for (auto id : {"K* acts freely", "K* is normalized by the shift", "elliptic triples for all 21 pairs",
                        "elliptic triple (2,3) -> 5", "elliptic triple (1,2) -> 4", "elliptic triple (1,3) -> 7",
                        "quartic of (2,3) equals the curve quartic y1", "quartic of (1,2) equals the curve quartic y2",
                        "quartic of (1,3) equals the curve quartic y4", "monomial relations are exponent identities",
                        "all 13 invariants are K*-invariant"})
            g.require(id);
        add(c, r.seconds);
    }
    {
        Criterion c{8, "numeric mirror and reproducibility"};
        auto t0 = clk::now();
        double max_residual = 0;
        int numeric = 0;
        std::vector<SuiteResult> first;
        for (auto& n : suite_names()) {
            Gate g(c, res[n]);
            g.all_numeric();
            for (auto& k : res[n].checks)
                if (k.kind == CheckKind::Numeric) {
                    ++numeric;
                    if (k.detail.contains("max_residual") && k.detail["max_residual"].is_number())
                        max_residual = std::max(max_residual, k.detail["max_residual"].get<double>());
                }
            first.push_back(res[n]);
        }
        Context again(cfg);
        std::vector<SuiteResult> second;
        for (auto& n : suite_names()) second.push_back(run_suite(n, again));
        bool same = descent_report(first, cfg).dump(2) == descent_report(second, cfg).dump(2) &&
                    numeric_report(first, cfg).dump(2) == numeric_report(second, cfg).dump(2);
        Gate g(c, res["cocycle"]);
        g.condition(numeric > 0, "numeric checks present");
        g.condition(max_residual < cfg.tolerance, "max numeric residual below tolerance");
        g.condition(same, "rerun reports byte-identical");
        char buf[64];
        std::snprintf(buf, sizeof buf, ", max residual %.2e over %d numeric checks", max_residual, numeric);
        c.title += buf;
        add(c, since(t0));
    }
    {
        Criterion c{9, "performance envelope"};
        Gate g(c, res["cocycle"]);
        g.condition(all_seconds < 900, "all suites under 15 minutes");
        g.condition(ctx.derivation_seconds() < 600, "appendix derivation under 10 minutes");
        char buf[96];
        std::snprintf(buf, sizeof buf, ", all suites %.1f s, derivation %.3f s", all_seconds, ctx.derivation_seconds());
        c.title += buf;
        add(c, all_seconds);
    }

    bool ok = true;
    for (auto& [c, s] : out) {
        print(c, s);
        ok &= c.pass;
    }
    std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return ok ? 0 : 1;
}
