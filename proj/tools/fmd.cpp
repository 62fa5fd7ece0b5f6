#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fmd/suites.hpp"

namespace fs = std::filesystem;
using namespace fmd;

namespace {

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

void print_check(const std::string& suite, const Check& c) {
    std::string status;
    if (c.kind == CheckKind::Finding) status = c.pass ? "NOTE holds" : "NOTE does not hold";
    else status = c.pass ? "PASS" : "FAIL";
    std::cout << "[" << suite << ": " << c.id << "] " << status << std::endl;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, const fs::path& out, const std::string& format) {
    std::vector<std::string> names;
    if (suite == "all") names = suite_names();
    else names = {suite};
    fs::create_directories(out);
    Context ctx(cfg);
    std::vector<SuiteResult> results;
    auto t0 = std::chrono::steady_clock::now();
    for (auto& n : names) results.push_back(run_suite(n, ctx, print_check));
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ojson desc = descent_report(results, cfg), num = numeric_report(results, cfg);
    write_file(out / "descent_report.json", dump(desc));
    write_file(out / "numeric_report.json", dump(num));
    bool homology = false;
    for (auto& n : names) homology = homology || n == "homology";
    if (homology) write_file(out / "model_homology.json", dump(homology_model()));

    bool ok = desc["ok"].get<bool>() && num["ok"].get<bool>();
    if (format == "json") {
        ojson s;
        s["ok"] = ok;
        ojson per = ojson::array();
        for (auto& r : results) {
            int failed = 0;
            for (auto& c : r.checks) failed += c.kind != CheckKind::Finding && !c.pass;
            per.push_back({{"suite", r.name}, {"checks", r.checks.size()}, {"failed", failed}, {"seconds", r.seconds}});
        }
        s["suites"] = per;
        s["seconds"] = total;
        std::cout << s.dump(2) << std::endl;
    } else {
        for (auto& r : results) {
            int failed = 0, findings = 0;
            for (auto& c : r.checks) {
                failed += c.kind != CheckKind::Finding && !c.pass;
                findings += c.kind == CheckKind::Finding;
            }
            std::cout << r.name << ": " << r.checks.size() << " checks, " << failed << " failed, " << findings
                      << " findings, " << r.seconds << " s" << std::endl;
        }
        std::cout << (ok ? "OK" : "FAILED") << " in " << total << " s; reports in " << out.string() << std::endl;
    }
    return ok ? 0 : 1;
}

int cmd_emit(const std::string& model, const fs::path& out, const std::string& format) {
    fs::create_directories(out);
    Context ctx;
    EmittedModel m = emit_model(model, ctx);
    fs::path file;
    if (format == "json") {
        ojson j = model == "homology" ? homology_model() : model_json(m);
        file = out / ("model_" + model + ".json");
        write_file(file, dump(j));
    } else {
        file = out / ("model_" + model + ".txt");
        write_file(file, model_text(m));
    }
    std::cout << "wrote " << m.relations.size() << " relations (field_level " << m.field_level << ") to " << file.string()
              << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of explicit models of the Fricke-Macbeath curve"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string out = ".", format = "text", suite, model;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    std::string positional;
    verify->add_option("name", positional, "suite name")->check(CLI::IsMember(suites));
    verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suites));
    verify->add_option("--seed", cfg.seed, "sampling seed");
    verify->add_option("--tolerance", cfg.tolerance, "relative numeric tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--points", cfg.points, "sampled abscissae (8 branches each)")->check(CLI::PositiveNumber);
    verify->add_option("--out", out, "output directory");
    verify->add_option("--format", format, "summary format")->check(CLI::IsMember({"json", "text"}));

    auto* emit = app.add_subcommand("emit", "write a model");
    emit->add_option("model", model, "model name")->required()->check(CLI::IsMember(model_names()));
    emit->add_option("--out", out, "output directory");
    emit->add_option("--format", format, "file format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*verify) {
            if (suite.empty()) suite = positional;
            if (suite.empty()) {
                std::cerr << "verify: a suite name is required" << std::endl;
                return 2;
            }
            return cmd_verify(suite, cfg, out, format);
        }
        return cmd_emit(model, out, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
