#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stringlab/scenario.hpp"

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

void report(const std::string& stage, const char* type, const std::string& msg) {
    std::fprintf(stderr, "{\"stage\": \"%s\", \"type\": \"%s\", \"message\": \"%s\"}\n",
                 json_escape(stage).c_str(), type, json_escape(msg).c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stringlab: soliton-driven planar string laboratory"};
    app.require_subcommand(1);
    app.fallthrough(); // accept the global options after the subcommand too

    std::string scenario_path;
    unsigned threads = 0;
    double gamma_override = -1.0, kappa_override = -1.0;
    bool have_beta = false;
    double beta_override = 0.0;
    std::vector<std::string> output_overrides;

    app.add_option("--threads", threads, "worker threads (0 = all cores)");
    app.add_option("--gamma", gamma_override, "override scenario gamma");
    app.add_option("--kappa", kappa_override, "override scenario kappa");
    app.add_option("--beta", beta_override, "override scenario beta")
        ->each([&](const std::string&) { have_beta = true; });
    app.add_option("--output", output_overrides,
                   "override/add an output as name=path (repeatable)");

    const std::vector<std::string> names = {"synth",   "spectrum", "worldsheet", "charges",
                                            "cusps",   "braid",    "pipeline"};
    for (const auto& n : names) {
        CLI::App* sub = app.add_subcommand(n);
        sub->add_option("scenario", scenario_path, "scenario JSON file")->required();
    }

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    std::string stage = "load";
    try {
        stringlab::Scenario sc = stringlab::load_scenario(scenario_path);
        if (gamma_override > 0.0) sc.gamma = gamma_override;
        if (kappa_override > 0.0) sc.ext.kappa = kappa_override;
        if (have_beta) sc.ext.beta = beta_override;
        for (const std::string& ov : output_overrides) {
            const std::size_t eq = ov.find('=');
            if (eq == std::string::npos || eq == 0)
                throw stringlab::ValidationError("--output needs name=path: " + ov);
            sc.outputs[ov.substr(0, eq)] = ov.substr(eq + 1);
        }

        if (cmd == "synth")
            stringlab::run_synth(sc, stage, threads);
        else if (cmd == "spectrum")
            stringlab::run_spectrum(sc, stage, threads);
        else if (cmd == "worldsheet")
            stringlab::run_worldsheet(sc, stage, threads);
        else if (cmd == "charges")
            stringlab::run_charges(sc, stage, threads);
        else if (cmd == "cusps")
            stringlab::run_cusps(sc, stage, threads);
        else if (cmd == "braid")
            stringlab::run_braid(sc, stage, threads);
        else
            stringlab::run_pipeline(sc, stage, threads);
    } catch (const stringlab::ValidationError& e) {
        report(stage, "validation", e.what());
        return 2;
    } catch (const stringlab::NumericalError& e) {
        report(stage, "numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        report(stage, "numerical", e.what());
        return 3;
    }
    return 0;
}
