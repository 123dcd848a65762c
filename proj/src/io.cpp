#include "stringlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stringlab {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: '\n' stays '\n'
    if (!out) throw ValidationError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open for reading: " + path);
    return in;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw ValidationError("write failed: " + path);
}

double parse_double(const std::string& s, const std::string& path, std::size_t line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty())
        throw ValidationError(path + ":" + std::to_string(line) + ": not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string jnum(double v) { return format_double(v); }

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(const std::string& path, const ChiralField& field) {
    std::ofstream out = open_out(path);
    out << "xi,rho\n";
    const GridSpec& g = field.grid();
    for (std::size_t i = 0; i < g.points(); ++i)
        out << format_double(g.x(i)) << ',' << format_double(field.samples()[i]) << '\n';
    finish(out, path);
}

ChiralField read_field_csv(const std::string& path, Chirality chi, Tolerances tol) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || split_csv(line) != std::vector<std::string>{"xi", "rho"})
        throw ValidationError(path + ": expected header 'xi,rho'");
    std::vector<double> xi, rho;
    std::size_t ln = 1;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        const auto cols = split_csv(line);
        if (cols.size() != 2)
            throw ValidationError(path + ":" + std::to_string(ln) + ": expected 2 columns");
        xi.push_back(parse_double(cols[0], path, ln));
        rho.push_back(parse_double(cols[1], path, ln));
    }
    if (xi.size() < 17) throw ValidationError(path + ": too few samples");
    GridSpec g;
    g.L = -xi.front();
    g.n = xi.size() - 1;
    g.validate();
    for (std::size_t i = 0; i < xi.size(); ++i)
        if (std::abs(xi[i] - g.x(i)) > 1e-9 * std::max(1.0, g.L))
            throw ValidationError(path + ": xi column is not the uniform grid [-L, L]");
    return ChiralField::from_samples(chi, g, std::move(rho), tol);
}

void write_spectrum_json(const std::string& path, const std::vector<DiscreteSpectrum>& spectra) {
    std::ofstream out = open_out(path);
    out << "[\n";
    bool first = true;
    for (const DiscreteSpectrum& s : spectra) {
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
            if (!first) out << ",\n";
            first = false;
            const cplx lam = s.eigenvalues[i], c = s.norming_constants[i];
            out << "  {\"re\": " << jnum(lam.real()) << ", \"im\": " << jnum(lam.imag())
                << ", \"c\": ";
            if (c.imag() == 0.0)
                out << jnum(c.real());
            else
                out << '[' << jnum(c.real()) << ", " << jnum(c.imag()) << ']';
            out << ", \"chirality\": \"" << chirality_name(s.chirality) << "\"}";
        }
    }
    out << "\n]\n";
    finish(out, path);
}

std::vector<DiscreteSpectrum> read_spectrum_json(const std::string& path) {
    std::ifstream in = open_in(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    if (!j.is_array()) throw ValidationError(path + ": expected a JSON list");
    DiscreteSpectrum plus, minus;
    plus.chirality = Chirality::plus;
    minus.chirality = Chirality::minus;
    for (const auto& rec : j) {
        if (!rec.is_object() || !rec.contains("re") || !rec.contains("im") ||
            !rec.contains("c") || !rec.contains("chirality"))
            throw ValidationError(path + ": record needs re, im, c, chirality");
        cplx c;
        if (rec["c"].is_array()) {
            if (rec["c"].size() != 2) throw ValidationError(path + ": complex c needs [re, im]");
            c = cplx(rec["c"][0].get<double>(), rec["c"][1].get<double>());
        } else {
            c = cplx(rec["c"].get<double>(), 0.0);
        }
        const std::string chi = rec["chirality"].get<std::string>();
        DiscreteSpectrum& dst = chi == "plus" ? plus : minus;
        if (chi != "plus" && chi != "minus")
            throw ValidationError(path + ": chirality must be 'plus' or 'minus'");
        dst.eigenvalues.emplace_back(rec["re"].get<double>(), rec["im"].get<double>());
        dst.norming_constants.push_back(c);
    }
    std::vector<DiscreteSpectrum> out;
    out.push_back(std::move(plus));
    out.push_back(std::move(minus));
    return out;
}

void write_monodromy_csv(const std::string& path, const MonodromyData& data) {
    std::ofstream out = open_out(path);
    out << "lambda,re_a,im_a,re_b,im_b\n";
    for (std::size_t i = 0; i < data.lambda_grid.size(); ++i)
        out << format_double(data.lambda_grid[i]) << ',' << format_double(data.a_values[i].real())
            << ',' << format_double(data.a_values[i].imag()) << ','
            << format_double(data.b_values[i].real()) << ','
            << format_double(data.b_values[i].imag()) << '\n';
    finish(out, path);
}

void write_worldsheet_csv(const std::string& path, const WorldSheet& sheet) {
    std::ofstream out = open_out(path);
    out << "xi0,xi1,X0,X1,X3,phi_or_CUSP\n";
    const SheetWindow& w = sheet.window;
    for (std::size_t i = 0; i <= w.n0; ++i) {
        for (std::size_t j = 0; j <= w.n1; ++j) {
            const std::size_t k = i * (w.n1 + 1) + j;
            out << format_double(w.xi0(i)) << ',' << format_double(w.xi1(j)) << ','
                << format_double(sheet.X[k].t) << ',' << format_double(sheet.X[k].x) << ','
                << format_double(sheet.X[k].y) << ',';
            if (sheet.cusp[k])
                out << "CUSP\n";
            else
                out << format_double(sheet.phi[k]) << '\n';
        }
    }
    finish(out, path);
}

void write_cusps_csv(const std::string& path, const CuspTrack& track) {
    std::ofstream out = open_out(path);
    out << "line_id,branch_k,xi0,xi1,X0,X1,X3\n";
    for (const CuspLine& l : track.lines)
        for (const CuspSample& p : l.points)
            out << l.id << ',' << l.branch_k << ',' << format_double(p.xi0) << ','
                << format_double(p.xi1) << ',' << format_double(p.X.t) << ','
                << format_double(p.X.x) << ',' << format_double(p.X.y) << '\n';
    finish(out, path);
}

void write_events_json(const std::string& path, const std::vector<CuspEvent>& events) {
    std::ofstream out = open_out(path);
    out << "[\n";
    for (std::size_t i = 0; i < events.size(); ++i) {
        out << "  {\"type\": \"" << events[i].type << "\", \"xi0\": " << jnum(events[i].xi0)
            << ", \"line_ids\": [";
        for (std::size_t k = 0; k < events[i].line_ids.size(); ++k)
            out << (k ? ", " : "") << events[i].line_ids[k];
        out << "]}" << (i + 1 < events.size() ? "," : "") << '\n';
    }
    out << "]\n";
    finish(out, path);
}

void write_braid_json(const std::string& path, const BraidWord& word) {
    std::ofstream out = open_out(path);
    out << "{\n  \"n_strands\": " << word.n_strands << ",\n  \"word\": [";
    for (std::size_t i = 0; i < word.word.size(); ++i)
        out << (i ? ", " : "") << "{\"i\": " << word.word[i].i << ", \"sign\": "
            << word.word[i].sign << ", \"xi0\": " << jnum(word.word[i].xi0) << '}';
    out << "],\n  \"permutation\": [";
    for (std::size_t i = 0; i < word.permutation.size(); ++i)
        out << (i ? ", " : "") << word.permutation[i];
    out << "],\n  \"writhe\": " << word.writhe << ",\n  \"degeneracies\": [";
    for (std::size_t i = 0; i < word.degeneracies.size(); ++i)
        out << (i ? ", " : "") << "{\"i\": " << word.degeneracies[i].i << ", \"xi0\": "
            << jnum(word.degeneracies[i].xi0) << ", \"gap\": " << jnum(word.degeneracies[i].gap)
            << '}';
    out << "],\n  \"tangle\": " << (word.tangle ? "true" : "false") << ",\n  \"events\": [";
    for (std::size_t i = 0; i < word.events.size(); ++i) {
        out << (i ? ", " : "") << "{\"type\": \"" << word.events[i].type << "\", \"xi0\": "
            << jnum(word.events[i].xi0) << ", \"line_ids\": [";
        for (std::size_t k = 0; k < word.events[i].line_ids.size(); ++k)
            out << (k ? ", " : "") << word.events[i].line_ids[k];
        out << "]}";
    }
    out << "]\n}\n";
    finish(out, path);
}

void write_charges_json(const std::string& path, const ChargeSet& c) {
    std::ofstream out = open_out(path);
    out << "{\n";
    out << "  \"P1\": " << jnum(c.P1) << ",\n  \"P3\": " << jnum(c.P3) << ",\n";
    out << "  \"J\": " << jnum(c.J) << ",\n  \"M\": " << jnum(c.M) << ",\n";
    out << "  \"H\": " << jnum(c.H) << ",\n  \"F_P\": " << jnum(c.F_P) << ",\n";
    out << "  \"F_J\": " << jnum(c.F_J) << ",\n  \"Omega\": " << jnum(c.Omega) << ",\n";
    out << "  \"Phi_residual\": " << jnum(c.Phi_residual) << ",\n";
    out << "  \"n_plus\": " << c.n_plus << ",\n  \"n_minus\": " << c.n_minus << "\n}\n";
    finish(out, path);
}

namespace {

struct SvgBox {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    void grow(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
};

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

void write_string_svg(const std::string& path, const WorldSheet& sheet, std::size_t row) {
    const SheetWindow& w = sheet.window;
    if (row > w.n0) throw ValidationError("string svg: row index out of range");
    std::ofstream out = open_out(path);
    SvgBox box;
    box.xmin = box.ymin = 1e300;
    box.xmax = box.ymax = -1e300;
    for (std::size_t j = 0; j <= w.n1; ++j) {
        const Vec3& p = sheet.X[row * (w.n1 + 1) + j];
        box.grow(p.x, p.y);
    }
    const double padx = 0.05 * (box.xmax - box.xmin) + 1e-3;
    const double pady = 0.05 * (box.ymax - box.ymin) + 1e-3;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << svg_num(box.xmin - padx)
        << ' ' << svg_num(-(box.ymax + pady)) << ' '
        << svg_num(box.xmax - box.xmin + 2 * padx) << ' '
        << svg_num(box.ymax - box.ymin + 2 * pady) << "\">\n";
    out << "<!-- string snapshot at xi0 = " << svg_num(w.xi0(row))
        << "; X1 horizontal, X3 vertical (up) -->\n";
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\""
        << svg_num(0.004 * (box.xmax - box.xmin + 2 * padx)) << "\" points=\"";
    for (std::size_t j = 0; j <= w.n1; ++j) {
        const Vec3& p = sheet.X[row * (w.n1 + 1) + j];
        out << svg_num(p.x) << ',' << svg_num(-p.y) << ' ';
    }
    out << "\"/>\n";
    for (std::size_t j = 0; j <= w.n1; ++j) {
        const std::size_t k = row * (w.n1 + 1) + j;
        if (!sheet.cusp[k]) continue;
        out << "<circle cx=\"" << svg_num(sheet.X[k].x) << "\" cy=\"" << svg_num(-sheet.X[k].y)
            << "\" r=\"" << svg_num(0.01 * (box.xmax - box.xmin + 2 * padx))
            << "\" fill=\"red\"/>\n";
    }
    out << "</svg>\n";
    finish(out, path);
}

void write_braid_svg(const std::string& path, const CuspTrack& track) {
    std::ofstream out = open_out(path);
    SvgBox box;
    box.xmin = box.ymin = 1e300;
    box.xmax = box.ymax = -1e300;
    for (const CuspLine& l : track.lines)
        for (const CuspSample& p : l.points) box.grow(p.X.x, p.X.t);
    if (track.lines.empty()) box = {0, 1, 0, 1};
    const double padx = 0.05 * (box.xmax - box.xmin) + 1e-3;
    const double pady = 0.05 * (box.ymax - box.ymin) + 1e-3;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << svg_num(box.xmin - padx)
        << ' ' << svg_num(-(box.ymax + pady)) << ' '
        << svg_num(box.xmax - box.xmin + 2 * padx) << ' '
        << svg_num(box.ymax - box.ymin + 2 * pady) << "\">\n";
    out << "<!-- cusp world-lines: X1 horizontal, X0 vertical (up) -->\n";
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    for (const CuspLine& l : track.lines) {
        out << "<polyline fill=\"none\" stroke=\""
            << palette[static_cast<std::size_t>(l.id) % 6] << "\" stroke-width=\""
            << svg_num(0.004 * (box.xmax - box.xmin + 2 * padx)) << "\" points=\"";
        for (const CuspSample& p : l.points) out << svg_num(p.X.x) << ',' << svg_num(-p.X.t) << ' ';
        out << "\"/>\n";
    }
    out << "</svg>\n";
    finish(out, path);
}

} // namespace stringlab
