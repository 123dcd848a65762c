#include "stringlab/worldsheet.hpp"

#include <cmath>

#include "stringlab/parallel.hpp"

namespace stringlab {

namespace {

// |cosS| below this makes tan/sec-based quadrature unreliable.
constexpr double kCuspGuard = 1e-3;

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

SheetEvaluator::SheetEvaluator(ChiralField plus, ChiralField minus, ExternalVariables ext)
    : plus_(std::move(plus)), minus_(std::move(minus)), ext_(ext) {
    ext_.validate();
    if (plus_.chirality() != Chirality::plus || minus_.chirality() != Chirality::minus)
        throw ValidationError("sheet: needs one '+' field and one '-' field, in that order");
    if (!(plus_.grid() == minus_.grid()))
        throw ValidationError("sheet: chiral fields must share one grid");
    const GridSpec& g = plus_.grid();
    const double b2 = 2.0 * ext_.beta;
    std::vector<double> dp1(g.points()), dp3(g.points()), dm1(g.points()), dm3(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) {
        const double x = g.x(i);
        const double Ip = plus_.I(x), Im = minus_.I(x);
        dp1[i] = -std::sin(Ip) * std::cos(Ip + b2);
        dp3[i] = std::sin(Ip) * std::sin(Ip + b2);
        dm1[i] = -std::sin(Im) * std::cos(Im - b2);
        dm3[i] = -std::sin(Im) * std::sin(Im - b2);
    }
    auto centered = [&](const std::vector<double>& f) {
        std::vector<double> G = cumulative_quartic(f, g.h());
        const double half = 0.5 * G.back();
        for (double& v : G) v -= half;
        return G;
    };
    gp1_ = centered(dp1);
    gp3_ = centered(dp3);
    gm1_ = centered(dm1);
    gm3_ = centered(dm3);
}

void SheetEvaluator::require_inside(double xi0, double xi1) const {
    const double L = plus_.grid().L;
    if (std::abs(xi1 + xi0) > L || std::abs(xi1 - xi0) > L)
        throw ValidationError("sheet: light-cone coordinate leaves the field grid; "
                              "shrink the window or widen the grid");
}

double SheetEvaluator::Gp(int comp, double p) const {
    return interp_quintic(plus_.grid(), comp == 1 ? gp1_ : gp3_, p);
}

double SheetEvaluator::Gm(int comp, double m) const {
    return interp_quintic(plus_.grid(), comp == 1 ? gm1_ : gm3_, m);
}

Vec3 SheetEvaluator::X(double xi0, double xi1) const {
    require_inside(xi0, xi1);
    const double p = xi1 + xi0, m = xi1 - xi0;
    const double k = ext_.kappa, b2 = 2.0 * ext_.beta;
    Vec3 r;
    r.t = k * xi0;
    r.x = ext_.Z1 - k * std::sin(b2) * xi1 + k * (Gp(1, p) - Gm(1, m));
    r.y = ext_.Z3 - k * std::cos(b2) * xi1 + k * (Gp(3, p) - Gm(3, m));
    return r;
}

Vec3 SheetEvaluator::tangent_plus(double xi0, double xi1) const {
    require_inside(xi0, xi1);
    const double A = 2.0 * plus_.I(xi1 + xi0) + 2.0 * ext_.beta;
    const double h = 0.5 * ext_.kappa;
    return {h, -h * std::sin(A), -h * std::cos(A)};
}

Vec3 SheetEvaluator::tangent_minus(double xi0, double xi1) const {
    require_inside(xi0, xi1);
    const double B = 2.0 * minus_.I(xi1 - xi0) - 2.0 * ext_.beta;
    const double h = -0.5 * ext_.kappa;
    return {h, -h * std::sin(B), h * std::cos(B)};
}

double SheetEvaluator::cosS(double xi0, double xi1) const {
    return std::cos(plus_.I(xi1 + xi0) + minus_.I(xi1 - xi0));
}

bool SheetEvaluator::is_cusp(double xi0, double xi1) const {
    return std::abs(cosS(xi0, xi1)) < plus_.tol().eps_cusp;
}

double SheetEvaluator::phi(double xi0, double xi1) const {
    return -2.0 * std::log(std::abs(cosS(xi0, xi1)));
}

Vec3 SheetEvaluator::normal(double xi0, double xi1) const {
    const double c = cosS(xi0, xi1);
    if (std::abs(c) < plus_.tol().eps_cusp)
        throw NumericalError("sheet: normal undefined at a cusp");
    const Vec3 v = mcross(tangent_plus(xi0, xi1), tangent_minus(xi0, xi1));
    const double n2 = -msq(v); // space-like normal direction
    if (n2 <= 0.0) throw NumericalError("sheet: degenerate tangent plane");
    return v * (-1.0 / std::sqrt(n2));
}

FundForms SheetEvaluator::forms(double xi0, double xi1, double d) const {
    // Default stencil step: a quarter grid cell balances truncation against
    // interpolation noise for the quintic-interpolated embedding.
    if (d <= 0.0) d = 0.25 * plus_.grid().h();
    // Shifting the light-cone coordinate p by t moves (xi0, xi1) by (t/2, t/2);
    // shifting m moves it by (-t/2, t/2).
    auto at = [&](double dp, double dm) {
        return X(xi0 + 0.5 * (dp - dm), xi1 + 0.5 * (dp + dm));
    };
    const Vec3 c0 = at(0, 0);
    const Vec3 xpp = (at(d, 0) - c0 * 2.0 + at(-d, 0)) / (d * d);
    const Vec3 xmm = (at(0, d) - c0 * 2.0 + at(0, -d)) / (d * d);
    const Vec3 xpm = (at(d, d) - at(d, -d) - at(-d, d) + at(-d, -d)) / (4.0 * d * d);
    const Vec3 tp = tangent_plus(xi0, xi1), tm = tangent_minus(xi0, xi1);
    const Vec3 N = normal(xi0, xi1);
    return {msq(tp), mdot(tp, tm), msq(tm), mdot(N, xpp), mdot(N, xpm), mdot(N, xmm)};
}

double SheetEvaluator::phi_residual(double xi0, double xi1, double d) const {
    if (d <= 0.0) d = 2.0 * plus_.grid().h();
    // d_p d_m = (d1^2 - d0^2)/4 on functions of (xi0, xi1).
    const double f0 = phi(xi0, xi1);
    const double d11 = (phi(xi0, xi1 + d) - 2.0 * f0 + phi(xi0, xi1 - d)) / (d * d);
    const double d00 = (phi(xi0 + d, xi1) - 2.0 * f0 + phi(xi0 - d, xi1)) / (d * d);
    const double rp = plus_.rho(xi1 + xi0), rm = minus_.rho(xi1 - xi0);
    return 0.25 * (d11 - d00) - 2.0 * rp * rm * std::exp(f0);
}

double SheetEvaluator::integral_curvature(const SheetWindow& w) const {
    w.validate();
    if (w.n0 == 0 || w.n0 % 2 != 0 || w.n1 % 2 != 0)
        throw ValidationError("curvature: window needs even, nonzero panel counts");
    // A cusp on the boundary makes tanS singular there. Guard both the node
    // magnitudes and sign changes of cosS between consecutive nodes: a sign
    // flip means a cusp line crosses the edge between quadrature points.
    double prev_c[2];
    auto tan_guard = [&](double xi0, double xi1, std::size_t node, int edge) {
        const double c = cosS(xi0, xi1);
        if (std::abs(c) < kCuspGuard || (node > 0 && (c < 0) != (prev_c[edge] < 0)))
            throw NumericalError("curvature: window boundary passes too close to a cusp");
        prev_c[edge] = c;
        return std::sin(plus_.I(xi1 + xi0) + minus_.I(xi1 - xi0)) / c;
    };
    // phi gradient in closed form: d1 phi = 2 tanS (rho_+ + rho_-),
    // d0 phi = 2 tanS (rho_+ - rho_-).
    std::vector<double> f0(w.n0 + 1), f1(w.n1 + 1);
    for (std::size_t i = 0; i <= w.n0; ++i) {
        const double t = w.xi0(i);
        auto d1phi = [&](double x1, int edge) {
            return 2.0 * tan_guard(t, x1, i, edge) * (plus_.rho(x1 + t) + minus_.rho(x1 - t));
        };
        f0[i] = d1phi(w.xi1_max, 0) - d1phi(w.xi1_min, 1);
    }
    for (std::size_t j = 0; j <= w.n1; ++j) {
        const double x1 = w.xi1(j);
        auto d0phi = [&](double t, int edge) {
            return 2.0 * tan_guard(t, x1, j, edge) * (plus_.rho(x1 + t) - minus_.rho(x1 - t));
        };
        f1[j] = d0phi(w.xi0_max, 0) - d0phi(w.xi0_min, 1);
    }
    const double h0 = (w.xi0_max - w.xi0_min) / static_cast<double>(w.n0);
    const double h1 = (w.xi1_max - w.xi1_min) / static_cast<double>(w.n1);
    return 0.25 * (simpson(f0, h0) - simpson(f1, h1));
}

double SheetEvaluator::integral_curvature_area(const SheetWindow& w) const {
    w.validate();
    if (w.n0 == 0 || w.n0 % 2 != 0 || w.n1 % 2 != 0)
        throw ValidationError("curvature: window needs even, nonzero panel counts");
    const double h0 = (w.xi0_max - w.xi0_min) / static_cast<double>(w.n0);
    const double h1 = (w.xi1_max - w.xi1_min) / static_cast<double>(w.n1);
    std::vector<double> row(w.n0 + 1);
    std::vector<double> col(w.n1 + 1);
    for (std::size_t i = 0; i <= w.n0; ++i) {
        const double t = w.xi0(i);
        for (std::size_t j = 0; j <= w.n1; ++j) {
            const double x1 = w.xi1(j);
            if (std::abs(cosS(t, x1)) < kCuspGuard)
                throw NumericalError("curvature: window interior passes too close to a cusp");
            const FundForms f = forms(t, x1);
            const double detI = f.Ipp * f.Imm - f.Ipm * f.Ipm;
            const double detII = f.IIpp * f.IImm - f.IIpm * f.IIpm;
            // (det II / det I) sqrt|det I| per unit dp dm; dp dm = 2 dxi0 dxi1.
            col[j] = detII / detI * std::sqrt(std::abs(detI));
        }
        row[i] = simpson(col, h1);
    }
    return simpson(row, h0);
}

WorldSheet SheetEvaluator::reconstruct(const SheetWindow& w, unsigned threads) const {
    w.validate();
    require_inside(w.xi0_min, w.xi1_min);
    require_inside(w.xi0_min, w.xi1_max);
    require_inside(w.xi0_max, w.xi1_min);
    require_inside(w.xi0_max, w.xi1_max);
    WorldSheet sheet;
    sheet.window = w;
    const std::size_t cols = w.n1 + 1, rows = w.n0 + 1;
    sheet.X.resize(rows * cols);
    sheet.phi.resize(rows * cols);
    sheet.cusp.resize(rows * cols);
    parallel_for(rows, resolve_threads(threads), [&](std::size_t i) {
        const double t = w.xi0(i);
        for (std::size_t j = 0; j < cols; ++j) {
            const double x1 = w.xi1(j);
            const std::size_t k = i * cols + j;
            sheet.X[k] = X(t, x1);
            sheet.cusp[k] = is_cusp(t, x1) ? 1 : 0;
            sheet.phi[k] = phi(t, x1);
        }
    });
    return sheet;
}

} // namespace stringlab
