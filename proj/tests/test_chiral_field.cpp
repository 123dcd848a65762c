#include <doctest.h>

#include <cmath>

#include "stringlab/chiral_field.hpp"

using namespace stringlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

double sech(double x) { return 1.0 / std::cosh(x); }

} // namespace

TEST_CASE("grid validation rejects bad parameters") {
    CHECK_THROWS_AS((GridSpec{-1.0, 8192}.validate()), ValidationError);
    CHECK_THROWS_AS((GridSpec{48.0, 1000}.validate()), ValidationError); // not a power of two
    CHECK_THROWS_AS((GridSpec{48.0, 8}.validate()), ValidationError);    // too small
    CHECK_NOTHROW((GridSpec{48.0, 8192}.validate()));
}

TEST_CASE("zero field is flat") {
    GridSpec g;
    auto f = ChiralField::zero(Chirality::plus, g);
    CHECK(f.topological_charge() == 0);
    CHECK(f.I_total() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(f.rho(0.3) == 0.0);
    CHECK(f.I(1.7) == 0.0);
}

TEST_CASE("one-soliton profile matches the sech closed form") {
    GridSpec g;
    const double a = 0.5, c = 1.5;
    auto f = ChiralField::soliton(a, c, Chirality::plus, g);
    double worst_rho = 0, worst_I = 0;
    for (int i = -200; i <= 200; ++i) {
        const double x = 0.05 * i;
        const double rho = -2.0 * a * sech(2.0 * a * x + std::log(std::abs(c)));
        const double I = -2.0 * std::atan(c * std::exp(2.0 * a * x));
        worst_rho = std::max(worst_rho, std::abs(f.rho(x) - rho));
        worst_I = std::max(worst_I, std::abs(f.I(x) - I));
    }
    CHECK(worst_rho < 1e-11);
    CHECK(worst_I < 1e-11);
    CHECK(f.topological_charge() == -1);
    CHECK(std::abs(f.I_total() + kPi) < 1e-10);
}

TEST_CASE("negative coupling flips the winding sign") {
    GridSpec g;
    auto f = ChiralField::soliton(0.5, -1.0, Chirality::minus, g);
    CHECK(f.topological_charge() == 1);
    CHECK(f.rho(0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("same-sign multi-soliton winding counts solitons") {
    GridSpec g;
    for (int N : {2, 3}) {
        SpectralForm form;
        for (int k = 0; k < N; ++k) {
            const cplx kap(0.3 + 0.3 * k, 0.0);
            form.kappa.push_back(kap);
            form.gamma.push_back(2.0 * kap * cplx(1.0, 0.0));
        }
        auto f = ChiralField::from_spectral(Chirality::plus, g, form);
        CHECK(f.topological_charge() == -N);
        CHECK(std::abs(f.I_total() + kPi * N) < 1e-9);
    }
}

TEST_CASE("sampled round trip preserves the profile") {
    GridSpec g;
    auto ref = ChiralField::soliton(0.7, 2.0, Chirality::plus, g);
    auto f = ChiralField::from_samples(Chirality::plus, g, ref.samples());
    CHECK(f.topological_charge() == ref.topological_charge());
    // Off-node queries go through the sampled interpolant, so the agreement
    // is limited by its O(h^4) error rather than by round-off.
    for (double x : {-3.0, -0.4, 0.0, 1.3, 5.9})
        CHECK(f.rho(x) == doctest::Approx(ref.rho(x)).epsilon(1e-7));
    CHECK(f.I(2.0) == doctest::Approx(ref.I(2.0)).epsilon(1e-9));
}

TEST_CASE("profiles that reach the grid edge are rejected") {
    GridSpec g{10.0, 1024};
    CHECK_THROWS_AS(ChiralField::soliton(0.5, 1.0, Chirality::plus, g), ValidationError);
}

TEST_CASE("evolution shifts the profile chirally") {
    GridSpec g;
    const double a = 0.5, c = 1.0, t = 1.7;
    auto plus = ChiralField::soliton(a, c, Chirality::plus, g).evolve(t);
    auto minus = ChiralField::soliton(a, c, Chirality::minus, g).evolve(t);
    auto ref = ChiralField::soliton(a, c, Chirality::plus, g);
    for (double x : {-2.0, 0.0, 0.8, 3.1}) {
        CHECK(plus.rho(x) == doctest::Approx(ref.rho(x + t)).epsilon(1e-12));
        CHECK(minus.rho(x) == doctest::Approx(ref.rho(x - t)).epsilon(1e-12));
    }
    CHECK(plus.topological_charge() == -1);
}

TEST_CASE("sampled evolution matches spectral evolution") {
    GridSpec g;
    auto spectral = ChiralField::soliton(0.6, 1.0, Chirality::plus, g);
    auto sampled = ChiralField::from_samples(Chirality::plus, g, spectral.samples());
    auto se = spectral.evolve(0.9);
    auto pe = sampled.evolve(0.9);
    for (double x : {-1.0, 0.2, 2.5})
        CHECK(pe.rho(x) == doctest::Approx(se.rho(x)).epsilon(1e-8));
}

TEST_CASE("symmetric eigenvalue pair gives a real zero-winding field") {
    GridSpec g;
    SpectralForm form;
    const cplx lam(0.4, 0.5);
    for (const cplx& l : {lam, -std::conj(lam)}) {
        const cplx kap = cplx(0, -1) * l;
        form.kappa.push_back(kap);
    }
    form.gamma = {2.0 * form.kappa[0] * cplx(1.0, 0.5),
                  2.0 * form.kappa[1] * cplx(1.0, -0.5)};
    auto f = ChiralField::from_spectral(Chirality::plus, g, form);
    CHECK(f.topological_charge() == 0);
    double peak = 0;
    for (double x = -5; x <= 5; x += 0.1) peak = std::max(peak, std::abs(f.rho(x)));
    CHECK(peak > 0.1); // the field is genuinely nontrivial
}

TEST_CASE("winding antiderivative is continuous") {
    GridSpec g;
    SpectralForm form;
    for (double a : {0.3, 0.9}) {
        form.kappa.emplace_back(a, 0.0);
        form.gamma.push_back(2.0 * cplx(a, 0.0));
    }
    auto f = ChiralField::from_spectral(Chirality::plus, g, form);
    double prev = f.I(-12.0);
    for (double x = -12.0; x <= 12.0; x += 0.01) {
        const double cur = f.I(x);
        CHECK(std::abs(cur - prev) < 0.1);
        prev = cur;
    }
}
