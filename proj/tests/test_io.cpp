#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stringlab/io.hpp"

using namespace stringlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("stringlab-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("doubles are written with full round-trip precision") {
    const double pi = 3.14159265358979323846;
    CHECK(std::stod(format_double(pi)) == pi);
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_double(0.0) == "0");
}

TEST_CASE("field CSV round-trips bit-exactly") {
    TempDir tmp;
    GridSpec g{48.0, 1024};
    auto ref = ChiralField::soliton(0.5, 1.0, Chirality::plus, g);
    const std::string p = tmp.file("field.csv");
    write_field_csv(p, ref);
    auto back = read_field_csv(p, Chirality::plus);
    CHECK(back.grid() == ref.grid());
    REQUIRE(back.samples().size() == ref.samples().size());
    for (std::size_t i = 0; i < ref.samples().size(); ++i)
        CHECK(back.samples()[i] == ref.samples()[i]);

    // Determinism: writing the same field twice gives identical bytes.
    const std::string p2 = tmp.file("field2.csv");
    write_field_csv(p2, ref);
    CHECK(slurp(p) == slurp(p2));
}

TEST_CASE("malformed field CSV is reported with validation errors") {
    TempDir tmp;
    const std::string p = tmp.file("bad.csv");
    {
        std::ofstream out(p);
        out << "wrong,header\n0,0\n";
    }
    CHECK_THROWS_AS(read_field_csv(p, Chirality::plus), ValidationError);
    {
        std::ofstream out(p);
        out << "xi,rho\n0.0,not-a-number\n";
    }
    CHECK_THROWS_AS(read_field_csv(p, Chirality::plus), ValidationError);
    CHECK_THROWS_AS(read_field_csv(tmp.file("absent.csv"), Chirality::plus), ValidationError);
}

TEST_CASE("spectrum JSON round-trips both axes and complex couplings") {
    TempDir tmp;
    DiscreteSpectrum plus;
    plus.chirality = Chirality::plus;
    plus.eigenvalues = {cplx(-0.4, 0.5), cplx(0.4, 0.5), cplx(0.0, 0.9)};
    plus.norming_constants = {cplx(1.0, -0.5), cplx(1.0, 0.5), cplx(2.0, 0.0)};
    DiscreteSpectrum minus;
    minus.chirality = Chirality::minus;
    minus.eigenvalues = {cplx(0.0, 0.3)};
    minus.norming_constants = {cplx(-1.5, 0.0)};

    const std::string p = tmp.file("spec.json");
    write_spectrum_json(p, {plus, minus});
    auto back = read_spectrum_json(p);
    REQUIRE(back.size() == 2);
    CHECK(back[0].chirality == Chirality::plus);
    CHECK(back[1].chirality == Chirality::minus);
    REQUIRE(back[0].eigenvalues.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[0].eigenvalues[i] == plus.eigenvalues[i]);
        CHECK(back[0].norming_constants[i] == plus.norming_constants[i]);
    }
    CHECK(back[1].eigenvalues[0] == minus.eigenvalues[0]);
}

TEST_CASE("worldsheet CSV marks cusp nodes") {
    TempDir tmp;
    WorldSheet sheet;
    sheet.window = {0.0, 1.0, 1, 0.0, 1.0, 1};
    sheet.X = {Vec3{0, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 0, 0}, Vec3{1, 1, 1}};
    sheet.phi = {0.5, 0.25, 0.125, 99.0};
    sheet.cusp = {0, 0, 0, 1};
    const std::string p = tmp.file("sheet.csv");
    write_worldsheet_csv(p, sheet);
    const std::string text = slurp(p);
    CHECK(text.find("xi0,xi1,X0,X1,X3,phi") != std::string::npos);
    CHECK(text.find("CUSP") != std::string::npos);
    CHECK(text.find("99") == std::string::npos); // phi suppressed at cusp nodes
}

TEST_CASE("charges JSON carries the full set under stable keys") {
    TempDir tmp;
    ChargeSet c;
    c.P1 = 1.5;
    c.P3 = -0.25;
    c.J = 2.0;
    c.M = 2.5;
    c.H = 3.0;
    c.F_P = 0.5;
    c.F_J = 0.25;
    c.Omega = 2.0;
    c.Phi_residual = 1e-15;
    c.n_plus = -1;
    c.n_minus = -2;
    const std::string p = tmp.file("charges.json");
    write_charges_json(p, c);
    const json j = json::parse(slurp(p));
    CHECK(j["P1"].get<double>() == 1.5);
    CHECK(j["P3"].get<double>() == -0.25);
    CHECK(j["J"].get<double>() == 2.0);
    CHECK(j["M"].get<double>() == 2.5);
    CHECK(j["H"].get<double>() == 3.0);
    CHECK(j["Omega"].get<double>() == 2.0);
    CHECK(j["n_plus"].get<int>() == -1);
    CHECK(j["n_minus"].get<int>() == -2);
}

TEST_CASE("braid and event JSON expose word, permutation and events") {
    TempDir tmp;
    BraidWord w;
    w.n_strands = 2;
    w.word = {{1, -1, 0.25}};
    w.permutation = {1, 0};
    w.writhe = -1;
    const std::string p = tmp.file("braid.json");
    write_braid_json(p, w);
    const json j = json::parse(slurp(p));
    CHECK(j["n_strands"].get<int>() == 2);
    REQUIRE(j["word"].size() == 1);
    CHECK(j["word"][0]["i"].get<int>() == 1);
    CHECK(j["word"][0]["sign"].get<int>() == -1);
    CHECK(j["permutation"].get<std::vector<int>>() == std::vector<int>{1, 0});
    CHECK(j["writhe"].get<int>() == -1);
    CHECK(j["tangle"].get<bool>() == false);

    const std::string pe = tmp.file("events.json");
    write_events_json(pe, {{"birth", 0.5, {2}}, {"death", 1.5, {2}}});
    const json je = json::parse(slurp(pe));
    REQUIRE(je.size() == 2);
    CHECK(je[0]["type"].get<std::string>() == "birth");
    CHECK(je[1]["xi0"].get<double>() == 1.5);
    CHECK(je[0]["line_ids"].get<std::vector<int>>() == std::vector<int>{2});
}

TEST_CASE("cusp CSV and SVG writers emit deterministic bytes") {
    TempDir tmp;
    CuspTrack t;
    t.xi0_min = 0.0;
    t.xi0_max = 1.0;
    t.step = 0.5;
    CuspLine l;
    l.id = 0;
    l.branch_k = -1;
    l.points = {{0.0, -0.5, Vec3{0.0, -0.5, 0.1}},
                {0.5, -0.4, Vec3{0.5, -0.4, 0.2}},
                {1.0, -0.3, Vec3{1.0, -0.3, 0.3}}};
    t.lines = {l};
    const std::string p1 = tmp.file("cusps1.csv"), p2 = tmp.file("cusps2.csv");
    write_cusps_csv(p1, t);
    write_cusps_csv(p2, t);
    const std::string text = slurp(p1);
    CHECK(text == slurp(p2));
    CHECK(text.find("line_id,branch_k,xi0,xi1,X0,X1,X3") != std::string::npos);

    const std::string s1 = tmp.file("b1.svg"), s2 = tmp.file("b2.svg");
    write_braid_svg(s1, t);
    write_braid_svg(s2, t);
    CHECK(slurp(s1) == slurp(s2));
    CHECK(slurp(s1).find("<svg") != std::string::npos);
}
