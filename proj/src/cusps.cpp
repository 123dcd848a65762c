#include "stringlab/cusps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "stringlab/parallel.hpp"

namespace stringlab {

namespace {

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct SliceScan {
    std::vector<CuspPoint> roots;
    std::vector<double> tangency_xi1; // grazing contacts, no sign change
};

double theta_of(const ChiralField& plus, const ChiralField& minus, double xi0, double xi1) {
    return plus.I(xi1 + xi0) + minus.I(xi1 - xi0);
}

SliceScan scan_slice(const ChiralField& plus, const ChiralField& minus, double xi0,
                     bool with_tangencies) {
    const GridSpec& g = plus.grid();
    if (std::abs(xi0) >= g.L)
        throw ValidationError("cusps: slice time outside the field grid");
    const double lo = -(g.L - std::abs(xi0)), hi = g.L - std::abs(xi0);
    const std::size_t m = static_cast<std::size_t>(std::ceil((hi - lo) / g.h()));
    const double dx = (hi - lo) / static_cast<double>(m);
    const Tolerances& tol = plus.tol();

    std::vector<double> c(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        c[i] = std::cos(theta_of(plus, minus, xi0, lo + dx * static_cast<double>(i)));
    if (std::abs(c.front()) < tol.eps_cusp || std::abs(c.back()) < tol.eps_cusp)
        throw NumericalError("cusps: root at the grid edge; the field support escaped");

    SliceScan out;
    auto theta = [&](double x) { return theta_of(plus, minus, xi0, x); };
    for (std::size_t i = 0; i < m; ++i) {
        if ((c[i] < 0) == (c[i + 1] < 0) && c[i] != 0.0) continue;
        if (c[i + 1] == 0.0) continue; // owned by the next interval
        double a = lo + dx * static_cast<double>(i), b = a + dx;
        double fa = c[i];
        while (b - a > tol.eps_root) {
            const double mid = 0.5 * (a + b);
            const double fm = std::cos(theta(mid));
            if (fm == 0.0) {
                a = b = mid;
                break;
            }
            if ((fm < 0) == (fa < 0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        double root = 0.5 * (a + b);
        // Newton polish: d(cos theta)/dxi1 = -sin(theta) (rho_+ + rho_-).
        for (int it = 0; it < 2; ++it) {
            const double th = theta(root);
            const double slope = std::sin(th) * (plus.rho(root + xi0) + minus.rho(root - xi0));
            if (std::abs(slope) < 1e-12) break;
            root += std::cos(th) / slope;
        }
        const double th = theta(root);
        CuspPoint p;
        p.xi1 = root;
        p.branch_k = static_cast<int>(std::lround((th - 0.5 * std::numbers::pi) /
                                                  std::numbers::pi));
        out.roots.push_back(p);
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const CuspPoint& x, const CuspPoint& y) { return x.xi1 < y.xi1; });

    if (with_tangencies) {
        for (std::size_t i = 1; i < m; ++i) {
            const double v = std::abs(c[i]);
            if (v >= 10.0 * tol.eps_cusp) continue;
            if (v > std::abs(c[i - 1]) || v > std::abs(c[i + 1])) continue;
            if ((c[i - 1] < 0) != (c[i + 1] < 0)) continue; // sign change: a real root
            out.tangency_xi1.push_back(lo + dx * static_cast<double>(i));
        }
    }
    return out;
}

} // namespace

std::vector<CuspPoint> cusp_positions(const ChiralField& plus, const ChiralField& minus,
                                      double xi0) {
    if (plus.chirality() != Chirality::plus || minus.chirality() != Chirality::minus)
        throw ValidationError("cusps: needs one '+' field and one '-' field, in that order");
    if (!(plus.grid() == minus.grid()))
        throw ValidationError("cusps: chiral fields must share one grid");
    return scan_slice(plus, minus, xi0, false).roots;
}

CuspTrack track_cusps(const SheetEvaluator& sheet, double xi0_min, double xi0_max, double step,
                      unsigned threads) {
    if (!(xi0_max > xi0_min) || step <= 0.0)
        throw ValidationError("cusp track: need xi0_max > xi0_min and a positive step");
    const ChiralField& plus = sheet.plus();
    const ChiralField& minus = sheet.minus();
    const unsigned nt = resolve_threads(threads);

    // One continuation attempt at a fixed slice spacing; empty result means an
    // ambiguous matching that wants a finer spacing.
    auto attempt = [&](double dt) -> std::optional<CuspTrack> {
        const std::size_t m = static_cast<std::size_t>(std::ceil((xi0_max - xi0_min) / dt));
        const double h0 = (xi0_max - xi0_min) / static_cast<double>(m);
        std::vector<SliceScan> slices(m + 1);
        parallel_for(m + 1, nt, [&](std::size_t i) {
            slices[i] = scan_slice(plus, minus, xi0_min + h0 * static_cast<double>(i), true);
        });

        CuspTrack track;
        track.xi0_min = xi0_min;
        track.xi0_max = xi0_max;
        track.step = h0;

        struct Active {
            int line = -1;
            int branch_k = 0;
            double xi1 = 0;
            double last_disp = -1.0; // <0: no displacement observed yet
        };
        std::vector<Active> active;
        bool ambiguous = false;

        auto add_point = [&](int line, double t, double x1) {
            track.lines[static_cast<std::size_t>(line)].points.push_back(
                {t, x1, sheet.X(t, x1)});
        };
        auto new_line = [&](double t, const CuspPoint& p, bool initial) {
            CuspLine l;
            l.id = static_cast<int>(track.lines.size());
            l.branch_k = p.branch_k;
            track.lines.push_back(l);
            active.push_back({l.id, p.branch_k, p.xi1, -1.0});
            add_point(l.id, t, p.xi1);
            if (!initial) track.events.push_back({"birth", t, {l.id}});
            return l.id;
        };

        for (std::size_t i = 0; i <= m && !ambiguous; ++i) {
            const double t = xi0_min + h0 * static_cast<double>(i);
            const SliceScan& sl = slices[i];
            for (std::size_t q = 0; q < sl.tangency_xi1.size(); ++q)
                track.events.push_back({"tangency", t, {}});
            if (i == 0) {
                for (const CuspPoint& p : sl.roots) new_line(t, p, true);
                continue;
            }
            std::vector<int> claimed(sl.roots.size(), -1);
            std::vector<Active> next;
            for (Active& a : active) {
                const double radius =
                    a.last_disp >= 0.0 ? 3.0 * a.last_disp + 2.0 * h0 : 10.0 * h0;
                int best = -1, second = -1;
                for (std::size_t r = 0; r < sl.roots.size(); ++r) {
                    if (sl.roots[r].branch_k != a.branch_k || claimed[r] >= 0) continue;
                    const double d = std::abs(sl.roots[r].xi1 - a.xi1);
                    if (d > radius) continue;
                    if (best < 0 || d < std::abs(sl.roots[static_cast<std::size_t>(best)].xi1 -
                                                 a.xi1)) {
                        second = best;
                        best = static_cast<int>(r);
                    } else if (second < 0) {
                        second = static_cast<int>(r);
                    }
                }
                if (best >= 0 && second >= 0) {
                    const double d1 =
                        std::abs(sl.roots[static_cast<std::size_t>(best)].xi1 - a.xi1);
                    const double d2 =
                        std::abs(sl.roots[static_cast<std::size_t>(second)].xi1 - a.xi1);
                    if (d2 - d1 < h0) {
                        ambiguous = true;
                        break;
                    }
                }
                if (best < 0) {
                    track.events.push_back({"death", t, {a.line}});
                    continue;
                }
                claimed[static_cast<std::size_t>(best)] = a.line;
                Active n = a;
                n.last_disp = std::abs(sl.roots[static_cast<std::size_t>(best)].xi1 - a.xi1);
                n.xi1 = sl.roots[static_cast<std::size_t>(best)].xi1;
                next.push_back(n);
                add_point(a.line, t, n.xi1);
            }
            if (ambiguous) break;
            active = std::move(next);
            for (std::size_t r = 0; r < sl.roots.size(); ++r)
                if (claimed[r] < 0) new_line(t, sl.roots[r], false);
        }
        if (ambiguous) return std::nullopt;
        std::sort(track.events.begin(), track.events.end(),
                  [](const CuspEvent& x, const CuspEvent& y) { return x.xi0 < y.xi0; });
        return track;
    };

    double dt = step;
    for (int tries = 0; tries < 5; ++tries, dt *= 0.5)
        if (auto t = attempt(dt)) return *t;
    throw NumericalError("cusp track: matching stayed ambiguous down to step " +
                         std::to_string(dt * 2.0) + "; lines pass too close");
}

} // namespace stringlab
