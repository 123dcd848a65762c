#include "stringlab/scenario.hpp"

#include <fstream>

#include <json.hpp>

namespace stringlab {

namespace {

using nlohmann::json;

double num_field(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ValidationError(std::string("scenario: '") + key +
                                                   "' must be a number");
    return j[key].get<double>();
}

void parse_soliton_list(const json& list, Scenario& sc) {
    DiscreteSpectrum plus, minus;
    plus.chirality = Chirality::plus;
    minus.chirality = Chirality::minus;
    for (const auto& rec : list) {
        if (!rec.is_object() || !rec.contains("a") || !rec.contains("c") ||
            !rec.contains("chirality"))
            throw ValidationError("scenario: soliton record needs a, c, chirality");
        const std::string chi = rec["chirality"].get<std::string>();
        if (chi != "plus" && chi != "minus")
            throw ValidationError("scenario: chirality must be 'plus' or 'minus'");
        DiscreteSpectrum& dst = chi == "plus" ? plus : minus;
        dst.eigenvalues.emplace_back(0.0, rec["a"].get<double>());
        dst.norming_constants.emplace_back(rec["c"].get<double>(), 0.0);
    }
    sc.spectra = {std::move(plus), std::move(minus)};
}

void parse_spectra_list(const json& list, Scenario& sc) {
    DiscreteSpectrum plus, minus;
    plus.chirality = Chirality::plus;
    minus.chirality = Chirality::minus;
    for (const auto& rec : list) {
        if (!rec.is_object() || !rec.contains("re") || !rec.contains("im") ||
            !rec.contains("c") || !rec.contains("chirality"))
            throw ValidationError("scenario: spectrum record needs re, im, c, chirality");
        const std::string chi = rec["chirality"].get<std::string>();
        if (chi != "plus" && chi != "minus")
            throw ValidationError("scenario: chirality must be 'plus' or 'minus'");
        DiscreteSpectrum& dst = chi == "plus" ? plus : minus;
        dst.eigenvalues.emplace_back(rec["re"].get<double>(), rec["im"].get<double>());
        if (rec["c"].is_array()) {
            if (rec["c"].size() != 2)
                throw ValidationError("scenario: complex c needs [re, im]");
            dst.norming_constants.emplace_back(rec["c"][0].get<double>(),
                                               rec["c"][1].get<double>());
        } else {
            dst.norming_constants.emplace_back(rec["c"].get<double>(), 0.0);
        }
    }
    sc.spectra = {std::move(plus), std::move(minus)};
}

} // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open scenario: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    if (!j.is_object()) throw ValidationError(path + ": scenario must be a JSON object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != 1)
        throw ValidationError(path + ": missing or unsupported schema_version (need 1)");

    Scenario sc;
    if (j.contains("grid")) {
        const json& g = j["grid"];
        sc.grid.L = num_field(g, "L", sc.grid.L);
        if (g.contains("N")) {
            if (!g["N"].is_number_integer() || g["N"].get<long long>() <= 0)
                throw ValidationError("scenario: grid.N must be a positive integer");
            sc.grid.n = g["N"].get<std::size_t>();
        }
        sc.xi0_min = num_field(g, "xi0_min", sc.xi0_min);
        sc.xi0_max = num_field(g, "xi0_max", sc.xi0_max);
        sc.xi0_step = num_field(g, "xi0_step", sc.xi0_step);
    }
    sc.grid.validate();
    if (!(sc.xi0_max > sc.xi0_min) || sc.xi0_step <= 0.0)
        throw ValidationError("scenario: need xi0_min < xi0_max and positive xi0_step");

    int sources = 0;
    if (j.contains("solitons")) {
        if (!j["solitons"].is_array()) throw ValidationError("scenario: solitons must be a list");
        parse_soliton_list(j["solitons"], sc);
        ++sources;
    }
    if (j.contains("spectra")) {
        if (!j["spectra"].is_array()) throw ValidationError("scenario: spectra must be a list");
        parse_spectra_list(j["spectra"], sc);
        ++sources;
    }
    if (j.contains("fields")) {
        const json& f = j["fields"];
        if (!f.is_object() || !f.contains("plus") || !f.contains("minus"))
            throw ValidationError("scenario: fields needs 'plus' and 'minus' CSV paths");
        sc.field_plus_path = f["plus"].get<std::string>();
        sc.field_minus_path = f["minus"].get<std::string>();
        sc.from_files = true;
        ++sources;
    }
    if (sources > 1)
        throw ValidationError("scenario: give at most one of solitons / spectra / fields");
    if (sources == 0) {
        DiscreteSpectrum plus, minus;
        plus.chirality = Chirality::plus;
        minus.chirality = Chirality::minus;
        sc.spectra = {plus, minus}; // vacuum
    }

    if (j.contains("externals")) {
        const json& e = j["externals"];
        sc.ext.kappa = num_field(e, "kappa", sc.ext.kappa);
        sc.ext.beta = num_field(e, "beta", sc.ext.beta);
        sc.ext.Z1 = num_field(e, "Z1", sc.ext.Z1);
        sc.ext.Z3 = num_field(e, "Z3", sc.ext.Z3);
    }
    sc.ext.validate();
    sc.gamma = num_field(j, "gamma", sc.gamma);
    if (sc.gamma <= 0.0) throw ValidationError("scenario: gamma must be positive");

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        sc.tol.eps_decay = num_field(t, "eps_decay", sc.tol.eps_decay);
        sc.tol.eps_topo = num_field(t, "eps_topo", sc.tol.eps_topo);
        sc.tol.eps_cusp = num_field(t, "eps_cusp", sc.tol.eps_cusp);
        sc.tol.eps_root = num_field(t, "eps_root", sc.tol.eps_root);
        sc.tol.eps_braid = num_field(t, "eps_braid", sc.tol.eps_braid);
        sc.tol.eps_geom = num_field(t, "eps_geom", sc.tol.eps_geom);
    }

    if (j.contains("sheet_window")) {
        const json& w = j["sheet_window"];
        sc.xi1_min = num_field(w, "xi1_min", sc.xi1_min);
        sc.xi1_max = num_field(w, "xi1_max", sc.xi1_max);
        if (w.contains("n0")) sc.sheet_n0 = w["n0"].get<std::size_t>();
        if (w.contains("n1")) sc.sheet_n1 = w["n1"].get<std::size_t>();
    }
    if (j.contains("lambda_scan")) {
        const json& l = j["lambda_scan"];
        sc.lambda_min = num_field(l, "min", sc.lambda_min);
        sc.lambda_max = num_field(l, "max", sc.lambda_max);
        if (l.contains("count")) sc.lambda_count = l["count"].get<std::size_t>();
        if (sc.lambda_count < 2 || !(sc.lambda_max > sc.lambda_min))
            throw ValidationError("scenario: bad lambda_scan range");
    }
    if (j.contains("outputs")) {
        if (!j["outputs"].is_object())
            throw ValidationError("scenario: outputs must be an object of name -> path");
        for (const auto& [k, v] : j["outputs"].items()) {
            if (!v.is_string()) throw ValidationError("scenario: output path must be a string");
            sc.outputs[k] = v.get<std::string>();
        }
    }
    return sc;
}

FieldPair make_fields(const Scenario& sc) {
    if (sc.from_files)
        return {read_field_csv(sc.field_plus_path, Chirality::plus, sc.tol),
                read_field_csv(sc.field_minus_path, Chirality::minus, sc.tol)};
    const DiscreteSpectrum& sp = sc.spectra.at(0);
    const DiscreteSpectrum& sm = sc.spectra.at(1);
    ChiralField plus = sp.eigenvalues.empty()
                           ? ChiralField::zero(Chirality::plus, sc.grid, sc.tol)
                           : synth_nsoliton(sp, sc.grid, sc.tol);
    ChiralField minus = sm.eigenvalues.empty()
                            ? ChiralField::zero(Chirality::minus, sc.grid, sc.tol)
                            : synth_nsoliton(sm, sc.grid, sc.tol);
    return {std::move(plus), std::move(minus)};
}

namespace {

std::optional<std::string> out_path(const Scenario& sc, const char* key) {
    const auto it = sc.outputs.find(key);
    if (it == sc.outputs.end()) return std::nullopt;
    return it->second;
}

void write_summary(const Scenario& sc, const FieldPair& f) {
    if (const auto p = out_path(sc, "summary")) {
        std::ofstream out(*p, std::ios::binary);
        if (!out) throw ValidationError("cannot open for writing: " + *p);
        out << "{\n  \"n_plus\": " << f.plus.topological_charge()
            << ",\n  \"n_minus\": " << f.minus.topological_charge() << "\n}\n";
        if (!out.flush()) throw ValidationError("write failed: " + *p);
    }
}

SheetWindow sheet_window_of(const Scenario& sc) {
    SheetWindow w;
    w.xi0_min = sc.xi0_min;
    w.xi0_max = sc.xi0_max;
    w.n0 = sc.sheet_n0;
    w.xi1_min = sc.xi1_min;
    w.xi1_max = sc.xi1_max;
    w.n1 = sc.sheet_n1;
    return w;
}

} // namespace

void run_synth(const Scenario& sc, std::string& stage, unsigned threads) {
    (void)threads;
    stage = "synth";
    const FieldPair f = make_fields(sc);
    if (const auto p = out_path(sc, "field_plus")) write_field_csv(*p, f.plus);
    if (const auto p = out_path(sc, "field_minus")) write_field_csv(*p, f.minus);
    write_summary(sc, f);
}

void run_spectrum(const Scenario& sc, std::string& stage, unsigned threads) {
    stage = "spectrum";
    const FieldPair f = make_fields(sc);
    SearchSpec search;
    search.threads = threads;
    std::vector<DiscreteSpectrum> found;
    found.push_back(f.plus.topological_charge() == 0 && !f.plus.spectral()
                        ? DiscreteSpectrum{Chirality::plus, {}, {}}
                        : find_eigenvalues(f.plus, search));
    found.push_back(f.minus.topological_charge() == 0 && !f.minus.spectral()
                        ? DiscreteSpectrum{Chirality::minus, {}, {}}
                        : find_eigenvalues(f.minus, search));
    if (const auto p = out_path(sc, "spectrum")) write_spectrum_json(*p, found);
    if (const auto p = out_path(sc, "monodromy")) {
        std::vector<double> lams(sc.lambda_count);
        for (std::size_t i = 0; i < lams.size(); ++i)
            lams[i] = sc.lambda_min + (sc.lambda_max - sc.lambda_min) * static_cast<double>(i) /
                                          static_cast<double>(lams.size() - 1);
        write_monodromy_csv(*p, monodromy_scan(f.plus, lams, threads));
    }
}

void run_worldsheet(const Scenario& sc, std::string& stage, unsigned threads) {
    stage = "worldsheet";
    const FieldPair f = make_fields(sc);
    const SheetEvaluator sheet(f.plus, f.minus, sc.ext);
    const WorldSheet ws = sheet.reconstruct(sheet_window_of(sc), threads);
    if (const auto p = out_path(sc, "worldsheet")) write_worldsheet_csv(*p, ws);
    if (const auto p = out_path(sc, "string_svg")) write_string_svg(*p, ws, ws.window.n0 / 2);
}

void run_charges(const Scenario& sc, std::string& stage, unsigned threads) {
    (void)threads;
    stage = "charges";
    const FieldPair f = make_fields(sc);
    const ChargeSet c = compute_charges(f.plus, f.minus, sc.ext, sc.gamma);
    if (const auto p = out_path(sc, "charges")) write_charges_json(*p, c);
}

void run_cusps(const Scenario& sc, std::string& stage, unsigned threads) {
    stage = "cusps";
    const FieldPair f = make_fields(sc);
    const SheetEvaluator sheet(f.plus, f.minus, sc.ext);
    const CuspTrack track = track_cusps(sheet, sc.xi0_min, sc.xi0_max, sc.xi0_step, threads);
    if (const auto p = out_path(sc, "cusps")) write_cusps_csv(*p, track);
    if (const auto p = out_path(sc, "events")) write_events_json(*p, track.events);
}

void run_braid(const Scenario& sc, std::string& stage, unsigned threads) {
    stage = "braid";
    const FieldPair f = make_fields(sc);
    const SheetEvaluator sheet(f.plus, f.minus, sc.ext);
    const CuspTrack track = track_cusps(sheet, sc.xi0_min, sc.xi0_max, sc.xi0_step, threads);
    const BraidWord word = braid_word(track);
    if (const auto p = out_path(sc, "braid")) write_braid_json(*p, word);
    if (const auto p = out_path(sc, "braid_svg")) write_braid_svg(*p, track);
}

void run_pipeline(const Scenario& sc, std::string& stage, unsigned threads) {
    stage = "synth";
    const FieldPair f = make_fields(sc);
    if (const auto p = out_path(sc, "field_plus")) write_field_csv(*p, f.plus);
    if (const auto p = out_path(sc, "field_minus")) write_field_csv(*p, f.minus);
    write_summary(sc, f);

    if (sc.outputs.count("spectrum") || sc.outputs.count("monodromy"))
        run_spectrum(sc, stage, threads);

    stage = "worldsheet";
    const SheetEvaluator sheet(f.plus, f.minus, sc.ext);
    const WorldSheet ws = sheet.reconstruct(sheet_window_of(sc), threads);
    if (const auto p = out_path(sc, "worldsheet")) write_worldsheet_csv(*p, ws);
    if (const auto p = out_path(sc, "string_svg")) write_string_svg(*p, ws, ws.window.n0 / 2);

    stage = "charges";
    const ChargeSet c = compute_charges(f.plus, f.minus, sc.ext, sc.gamma);
    if (const auto p = out_path(sc, "charges")) write_charges_json(*p, c);

    stage = "cusps";
    const CuspTrack track = track_cusps(sheet, sc.xi0_min, sc.xi0_max, sc.xi0_step, threads);
    if (const auto p = out_path(sc, "cusps")) write_cusps_csv(*p, track);
    if (const auto p = out_path(sc, "events")) write_events_json(*p, track.events);

    stage = "braid";
    const BraidWord word = braid_word(track);
    if (const auto p = out_path(sc, "braid")) write_braid_json(*p, word);
    if (const auto p = out_path(sc, "braid_svg")) write_braid_svg(*p, track);
}

} // namespace stringlab
