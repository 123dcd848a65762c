#include <doctest.h>

#include <cmath>

#include "stringlab/scattering.hpp"

using namespace stringlab;

namespace {

DiscreteSpectrum imag_spectrum(Chirality chi, std::vector<double> as, std::vector<double> cs) {
    DiscreteSpectrum s;
    s.chirality = chi;
    for (std::size_t i = 0; i < as.size(); ++i) {
        s.eigenvalues.emplace_back(0.0, as[i]);
        s.norming_constants.emplace_back(cs[i], 0.0);
    }
    return s;
}

} // namespace

TEST_CASE("spectrum validation enforces half-plane and pair symmetry") {
    DiscreteSpectrum bad = imag_spectrum(Chirality::plus, {-0.5}, {1.0});
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    DiscreteSpectrum lone; // off-axis eigenvalue without its mirror partner
    lone.eigenvalues = {cplx(0.4, 0.5)};
    lone.norming_constants = {cplx(1.0, 0.0)};
    CHECK_THROWS_AS(lone.validate(), ValidationError);

    DiscreteSpectrum pair;
    pair.eigenvalues = {cplx(0.4, 0.5), cplx(-0.4, 0.5)};
    pair.norming_constants = {cplx(1.0, 0.5), cplx(1.0, -0.5)};
    CHECK_NOTHROW(pair.validate());
    CHECK(pair.imaginary_count() == 0);

    pair.norming_constants[1] = cplx(2.0, 0.0); // breaks conjugation
    CHECK_THROWS_AS(pair.validate(), ValidationError);
}

TEST_CASE("frame matrix is orthogonal and chirality-signed") {
    GridSpec g;
    auto fp = ChiralField::soliton(0.5, 1.0, Chirality::plus, g);
    auto fm = ChiralField::soliton(0.5, 1.0, Chirality::minus, g);
    for (double x : {-1.0, 0.0, 0.4}) {
        const Mat2 R = rotation_matrix(fp, x);
        CHECK(std::abs(R.det() - cplx(1.0)) < 1e-12);
        CHECK(std::abs(R(0, 0) - std::cos(fp.I(x))) < 1e-12);
        CHECK(std::abs(R(0, 1) - std::sin(fp.I(x))) < 1e-12);
        const Mat2 Rm = rotation_matrix(fm, x);
        CHECK(std::abs(Rm(0, 1) + std::sin(fm.I(x))) < 1e-12);
    }
}

TEST_CASE("transition coefficient matches the one-soliton closed form") {
    GridSpec g;
    const double a = 0.5;
    auto f = ChiralField::soliton(a, 1.0, Chirality::plus, g);
    for (cplx lam : {cplx(0.7, 0.3), cplx(-1.2, 0.8), cplx(0.0, 1.4), cplx(2.0, 0.05)}) {
        const cplx expect = (lam - cplx(0, a)) / (lam + cplx(0, a));
        CHECK(std::abs(scatter_a(f, lam) - expect) < 1e-9);
    }
}

TEST_CASE("monodromy on the real axis is reflectionless and unimodular") {
    GridSpec g;
    auto f = synth_nsoliton(imag_spectrum(Chirality::plus, {0.3, 0.9}, {1.0, 1.0}), g);
    for (double lam : {-2.5, -0.6, 0.31, 1.9}) {
        const Monodromy m = forward_scatter(f, lam);
        CHECK(std::abs(m.M.det() - cplx(1.0)) < 1e-9);
        CHECK(std::abs(m.b) < 1e-6);
        const cplx expect = (cplx(lam) - cplx(0, 0.3)) / (cplx(lam) + cplx(0, 0.3)) *
                            (cplx(lam) - cplx(0, 0.9)) / (cplx(lam) + cplx(0, 0.9));
        CHECK(std::abs(m.a - expect) < 1e-8);
    }
}

TEST_CASE("zero-momentum parity equals the winding parity") {
    GridSpec g;
    auto f1 = ChiralField::soliton(0.5, 1.0, Chirality::plus, g);
    CHECK(parity_check(f1) == -1);
    auto f2 = synth_nsoliton(imag_spectrum(Chirality::plus, {0.3, 0.9}, {1.0, 1.0}), g);
    CHECK(parity_check(f2) == 1);
}

TEST_CASE("eigenvalue recovery round-trips imaginary spectra") {
    GridSpec g;
    for (Chirality chi : {Chirality::plus, Chirality::minus}) {
        auto ref = imag_spectrum(chi, {0.3, 0.9}, {1.5, -0.5});
        auto f = synth_nsoliton(ref, g);
        auto found = find_eigenvalues(f);
        REQUIRE(found.eigenvalues.size() == 2);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(std::abs(found.eigenvalues[i] - ref.eigenvalues[i]) < 1e-8);
            CHECK(std::abs(found.norming_constants[i] - ref.norming_constants[i]) < 1e-6);
        }
    }
}

TEST_CASE("norming coefficient is consistent with the recovery convention") {
    GridSpec g;
    auto ref = imag_spectrum(Chirality::plus, {0.3, 0.9}, {1.5, -0.5});
    auto f = synth_nsoliton(ref, g);
    // c_n = -s b_n prod_{m != n} (lam_n + lam_m)/(lam_n - lam_m), s = +1.
    const cplx l0 = ref.eigenvalues[0], l1 = ref.eigenvalues[1];
    const cplx b0 = norming_coefficient(f, l0);
    const cplx c0 = -b0 * (l0 + l1) / (l0 - l1);
    CHECK(std::abs(c0 - ref.norming_constants[0]) < 1e-6);
}

TEST_CASE("pair search recovers an off-axis symmetric pair") {
    GridSpec g{32.0, 4096};
    DiscreteSpectrum ref;
    ref.chirality = Chirality::plus;
    ref.eigenvalues = {cplx(0.4, 0.5), cplx(-0.4, 0.5)};
    ref.norming_constants = {cplx(1.0, 0.5), cplx(1.0, -0.5)};
    auto f = synth_nsoliton(ref, g);
    SearchSpec search;
    search.pair_search = true;
    auto found = find_eigenvalues(f, search);
    REQUIRE(found.eigenvalues.size() == 2);
    // Results come sorted by (Im, Re): the mirror partner is listed first.
    CHECK(std::abs(found.eigenvalues[0] - ref.eigenvalues[1]) < 1e-6);
    CHECK(std::abs(found.eigenvalues[1] - ref.eigenvalues[0]) < 1e-6);
    CHECK(std::abs(found.norming_constants[1] - ref.norming_constants[0]) < 1e-4);
}

TEST_CASE("monodromy scan is deterministic across thread counts") {
    GridSpec g;
    auto f = ChiralField::soliton(0.5, 1.0, Chirality::plus, g);
    std::vector<double> lams;
    for (int i = 0; i <= 20; ++i) lams.push_back(-5.0 + 0.5 * i);
    const MonodromyData one = monodromy_scan(f, lams, 1);
    const MonodromyData four = monodromy_scan(f, lams, 4);
    REQUIRE(one.a_values.size() == four.a_values.size());
    for (std::size_t i = 0; i < one.a_values.size(); ++i) {
        CHECK(one.a_values[i] == four.a_values[i]); // bitwise equal
        CHECK(one.b_values[i] == four.b_values[i]);
    }
    CHECK(one.parity == -1);
}
