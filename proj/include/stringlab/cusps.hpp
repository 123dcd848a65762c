#pragma once

#include <string>
#include <vector>

#include "stringlab/worldsheet.hpp"

namespace stringlab {

// Root of cos(theta) on a fixed time slice, theta = I_+(xi1+xi0) + I_-(xi1-xi0);
// branch_k is the integer with theta = pi/2 + pi k at the root.
struct CuspPoint {
    double xi1 = 0;
    int branch_k = 0;
};

struct CuspSample {
    double xi0 = 0, xi1 = 0;
    Vec3 X;
};

struct CuspLine {
    int id = 0;
    int branch_k = 0;
    std::vector<CuspSample> points;
};

// type: "birth", "death" (line count changes) or "tangency" (grazing contact
// of theta with a branch level, no sign change).
struct CuspEvent {
    std::string type;
    double xi0 = 0;
    std::vector<int> line_ids;
};

struct CuspTrack {
    std::vector<CuspLine> lines;
    std::vector<CuspEvent> events;
    double xi0_min = 0, xi0_max = 0, step = 0;
};

// All cusps on the slice, ordered by xi1. Roots are bisected to eps_root and
// polished with one Newton step using theta' = rho_+ + rho_-.
std::vector<CuspPoint> cusp_positions(const ChiralField& plus, const ChiralField& minus,
                                      double xi0);

// Continue slice roots into world-lines over [xi0_min, xi0_max] with the given
// slice spacing. Ambiguous matchings trigger automatic step refinement.
CuspTrack track_cusps(const SheetEvaluator& sheet, double xi0_min, double xi0_max, double step,
                      unsigned threads = 0);

} // namespace stringlab
