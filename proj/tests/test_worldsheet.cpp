#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stringlab/worldsheet.hpp"

using namespace stringlab;

namespace {

SheetEvaluator make_sheet(double kappa = 1.3, double beta = 0.4,
                          const GridSpec& g = GridSpec{}) {
    ExternalVariables ext;
    ext.kappa = kappa;
    ext.beta = beta;
    return SheetEvaluator(ChiralField::soliton(0.5, 1.0, Chirality::plus, g),
                          ChiralField::soliton(0.7, 2.0, Chirality::minus, g), ext);
}

} // namespace

TEST_CASE("time component is linear in the evolution parameter") {
    auto ev = make_sheet();
    CHECK(ev.X(0.7, 2.1).t == doctest::Approx(1.3 * 0.7).epsilon(1e-14));
    CHECK(ev.X(-2.0, 0.0).t == doctest::Approx(-2.6).epsilon(1e-14));
}

TEST_CASE("vacuum sheet is a straight moving line") {
    GridSpec g;
    ExternalVariables ext;
    ext.kappa = 2.0;
    ext.beta = 0.3;
    ext.Z1 = 1.0;
    ext.Z3 = -0.5;
    SheetEvaluator ev(ChiralField::zero(Chirality::plus, g),
                      ChiralField::zero(Chirality::minus, g), ext);
    for (double x1 : {-3.0, 0.0, 4.2}) {
        const Vec3 p = ev.X(1.0, x1);
        CHECK(p.x == doctest::Approx(1.0 - 2.0 * std::sin(0.6) * x1).epsilon(1e-12));
        CHECK(p.y == doctest::Approx(-0.5 - 2.0 * std::cos(0.6) * x1).epsilon(1e-12));
        CHECK(ev.phi(1.0, x1) == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("closed-form tangents agree with finite differences of X") {
    auto ev = make_sheet();
    const double d = 1e-5;
    for (auto [t, x1] : {std::pair{0.3, -0.9}, std::pair{-1.1, 1.7}}) {
        // A p-shift of s moves (xi0, xi1) by (s/2, s/2); an m-shift moves it
        // by (-s/2, s/2). The stencil points below are p- (resp. m-) shifts
        // of +-d, so the centered difference spans 2d.
        const Vec3 tp_fd =
            (ev.X(t + 0.5 * d, x1 + 0.5 * d) - ev.X(t - 0.5 * d, x1 - 0.5 * d)) / (2.0 * d);
        const Vec3 tm_fd =
            (ev.X(t - 0.5 * d, x1 + 0.5 * d) - ev.X(t + 0.5 * d, x1 - 0.5 * d)) / (2.0 * d);
        const Vec3 tp = ev.tangent_plus(t, x1), tm = ev.tangent_minus(t, x1);
        for (auto [a, b] : {std::pair{tp, tp_fd}, std::pair{tm, tm_fd}}) {
            CHECK(std::abs(a.t - b.t) < 1e-7);
            CHECK(std::abs(a.x - b.x) < 1e-7);
            CHECK(std::abs(a.y - b.y) < 1e-7);
        }
    }
}

TEST_CASE("tangents are null and the mixed product follows the gauge identity") {
    auto ev = make_sheet();
    const double k2 = 1.3 * 1.3;
    for (double t = -2.0; t <= 2.0; t += 0.25) {
        for (double x1 = -4.0; x1 <= 4.0; x1 += 0.25) {
            const Vec3 tp = ev.tangent_plus(t, x1), tm = ev.tangent_minus(t, x1);
            CHECK(std::abs(msq(tp)) < 1e-12 * k2);
            CHECK(std::abs(msq(tm)) < 1e-12 * k2);
            const double c = ev.cosS(t, x1);
            CHECK(std::abs(mdot(tp, tm) + 0.5 * k2 * c * c) < 1e-12 * k2);
        }
    }
}

TEST_CASE("normal is unit space-like and orthogonal to both tangents") {
    auto ev = make_sheet();
    for (auto [t, x1] : {std::pair{0.0, 0.0}, std::pair{1.2, -2.0}, std::pair{-0.7, 0.5}}) {
        if (std::abs(ev.cosS(t, x1)) < 0.05) continue;
        const Vec3 N = ev.normal(t, x1);
        CHECK(msq(N) == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(std::abs(mdot(N, ev.tangent_plus(t, x1))) < 1e-10);
        CHECK(std::abs(mdot(N, ev.tangent_minus(t, x1))) < 1e-10);
    }
}

TEST_CASE("second form reduces to the chiral curvatures") {
    auto ev = make_sheet();
    const double k = 1.3;
    double worst = 0;
    for (double t = -1.5; t <= 1.5; t += 0.5) {
        for (double x1 = -3.0; x1 <= 3.0; x1 += 0.25) {
            if (std::abs(ev.cosS(t, x1)) < 0.05) continue;
            const FundForms f = ev.forms(t, x1);
            const double rp = ev.plus().rho(x1 + t), rm = ev.minus().rho(x1 - t);
            const double scale = k * std::max({std::abs(rp), std::abs(rm), 1e-3});
            worst = std::max({worst, std::abs(f.IIpp - k * rp) / scale,
                              std::abs(f.IImm + k * rm) / scale, std::abs(f.IIpm) / scale});
            CHECK(f.Ipp == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(f.Imm == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
    CHECK(worst < 2e-4);
}

TEST_CASE("Liouville residual shrinks at second order under grid refinement") {
    auto coarse = make_sheet(1.3, 0.4, GridSpec{48.0, 4096});
    auto fine = make_sheet(1.3, 0.4, GridSpec{48.0, 8192});
    double rc = 0, rf = 0;
    for (double t = -1.0; t <= 1.0; t += 0.5) {
        for (double x1 = -2.0; x1 <= 2.0; x1 += 0.2) {
            if (std::abs(coarse.cosS(t, x1)) < 0.2) continue;
            rc = std::max(rc, std::abs(coarse.phi_residual(t, x1)));
            rf = std::max(rf, std::abs(fine.phi_residual(t, x1)));
        }
    }
    CHECK(rc > 0.0);
    const double order = std::log2(rc / rf);
    CHECK(order > 1.8);
}

TEST_CASE("curvature window integral matches the area quadrature") {
    auto ev = make_sheet();
    SheetWindow w{-0.1, 0.1, 8, -0.25, 0.05, 32};
    const double boundary = ev.integral_curvature(w);
    const double area = ev.integral_curvature_area(w);
    CHECK(boundary == doctest::Approx(area).epsilon(1e-3));
    CHECK(std::abs(boundary) > 0.01); // nontrivial window
}

TEST_CASE("curvature evaluation refuses windows touching a cusp") {
    auto ev = make_sheet();
    SheetWindow w{-1.0, 1.0, 8, -4.0, 4.0, 32}; // contains cusp lines
    CHECK_THROWS_AS(ev.integral_curvature(w), NumericalError);
}

TEST_CASE("reconstruction is deterministic and flags cusp nodes") {
    auto ev = make_sheet();
    SheetWindow w{-1.0, 1.0, 10, -4.0, 4.0, 40};
    const WorldSheet one = ev.reconstruct(w, 1);
    const WorldSheet four = ev.reconstruct(w, 4);
    REQUIRE(one.X.size() == 11 * 41);
    bool identical = true;
    for (std::size_t i = 0; i < one.X.size(); ++i) {
        identical = identical && one.X[i].t == four.X[i].t && one.X[i].x == four.X[i].x &&
                    one.X[i].y == four.X[i].y && one.cusp[i] == four.cusp[i];
    }
    CHECK(identical);
    for (std::size_t i = 0; i < one.X.size(); ++i) {
        const std::size_t row = i / 41, col = i % 41;
        CHECK(one.cusp[i] == (ev.is_cusp(w.xi0(row), w.xi1(col)) ? 1 : 0));
    }
}

TEST_CASE("windows leaving the field grid are rejected") {
    auto ev = make_sheet();
    CHECK_THROWS_AS(ev.X(0.0, 50.0), ValidationError);
    SheetWindow w{-1.0, 1.0, 4, -49.0, 0.0, 8};
    CHECK_THROWS_AS(ev.reconstruct(w), ValidationError);
}
