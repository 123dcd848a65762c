#pragma once

#include <map>
#include <optional>
#include <string>

#include "stringlab/io.hpp"

namespace stringlab {

// One self-contained run description, loaded from a versioned JSON file.
// The chiral fields come from exactly one source: "solitons" (list of
// {a, c, chirality}), "spectra" (list of {re, im, c, chirality}), "fields"
// (CSV paths), or none of these (vacuum).
struct Scenario {
    GridSpec grid;
    double xi0_min = -5.0, xi0_max = 5.0, xi0_step = 0.05;
    std::vector<DiscreteSpectrum> spectra; // [0]: plus, [1]: minus
    std::string field_plus_path, field_minus_path;
    bool from_files = false;
    ExternalVariables ext;
    double gamma = 1.0;
    Tolerances tol;
    double xi1_min = -8.0, xi1_max = 8.0;
    std::size_t sheet_n0 = 40, sheet_n1 = 160;
    double lambda_min = -5.0, lambda_max = 5.0;
    std::size_t lambda_count = 101;
    std::map<std::string, std::string> outputs;
};

Scenario load_scenario(const std::string& path);

struct FieldPair {
    ChiralField plus, minus;
};

FieldPair make_fields(const Scenario& sc);

// Pipeline steps. `stage` is updated as work progresses so a caller can tag
// any propagated error with the step it came from.
void run_synth(const Scenario& sc, std::string& stage, unsigned threads);
void run_spectrum(const Scenario& sc, std::string& stage, unsigned threads);
void run_worldsheet(const Scenario& sc, std::string& stage, unsigned threads);
void run_charges(const Scenario& sc, std::string& stage, unsigned threads);
void run_cusps(const Scenario& sc, std::string& stage, unsigned threads);
void run_braid(const Scenario& sc, std::string& stage, unsigned threads);
void run_pipeline(const Scenario& sc, std::string& stage, unsigned threads);

} // namespace stringlab
