#pragma once

#include <cstdint>
#include <vector>

#include "stringlab/chiral_field.hpp"

namespace stringlab {

// Parameters of the embedding that are not fixed by the chiral fields: the
// overall scale kappa, the asymptotic direction angle beta, and the transverse
// offset (Z1, Z3).
struct ExternalVariables {
    double kappa = 1.0;
    double beta = 0.0;
    double Z1 = 0.0;
    double Z3 = 0.0;

    void validate() const {
        if (kappa <= 0.0) throw ValidationError("external variables: kappa must be positive");
    }
};

// Rectangular window in the (xi0, xi1) parameter plane, sampled on an
// (n0+1) x (n1+1) lattice.
struct SheetWindow {
    double xi0_min = 0.0, xi0_max = 0.0;
    std::size_t n0 = 0;
    double xi1_min = 0.0, xi1_max = 0.0;
    std::size_t n1 = 0;

    void validate() const {
        if (!(xi0_max >= xi0_min) || !(xi1_max > xi1_min))
            throw ValidationError("sheet window: empty parameter range");
        if (n1 == 0) throw ValidationError("sheet window: n1 must be positive");
    }
    double xi0(std::size_t i) const {
        return n0 == 0 ? xi0_min
                       : xi0_min + (xi0_max - xi0_min) * static_cast<double>(i) /
                                       static_cast<double>(n0);
    }
    double xi1(std::size_t j) const {
        return xi1_min + (xi1_max - xi1_min) * static_cast<double>(j) / static_cast<double>(n1);
    }
};

struct WorldSheet {
    SheetWindow window;
    std::vector<Vec3> X;             // row-major, index i*(n1+1)+j
    std::vector<double> phi;         // Liouville field; meaningless at cusp nodes
    std::vector<std::uint8_t> cusp;  // 1 where |cos(I_+ + I_-)| < eps_cusp
};

// Fundamental forms in light-cone parameters (p = xi1+xi0, m = xi1-xi0).
struct FundForms {
    double Ipp, Ipm, Imm;
    double IIpp, IIpm, IImm;
};

// Embedding of the string world-sheet driven by a pair of chiral fields.
// X0 = kappa xi0; the transverse part combines a straight asymptotic line
// along n(beta) = (sin 2beta, cos 2beta) with centered antiderivatives of the
// chiral frame deviations.
class SheetEvaluator {
public:
    SheetEvaluator(ChiralField plus, ChiralField minus, ExternalVariables ext);

    Vec3 X(double xi0, double xi1) const;
    Vec3 tangent_plus(double xi0, double xi1) const;  // dX/dp, null
    Vec3 tangent_minus(double xi0, double xi1) const; // dX/dm, null

    double cosS(double xi0, double xi1) const; // cos(I_+(p) + I_-(m))
    bool is_cusp(double xi0, double xi1) const;
    double phi(double xi0, double xi1) const;  // -2 ln|cosS|

    // Unit space-like normal; undefined at cusps (throws NumericalError).
    Vec3 normal(double xi0, double xi1) const;

    // First form from the closed-form tangents, second form from 5-point
    // stencils of the embedding with step d (default: a quarter grid cell).
    FundForms forms(double xi0, double xi1, double d = 0.0) const;

    // Liouville equation residual d_p d_m phi - 2 rho_+ rho_- e^phi from
    // stencils of phi; a pointwise consistency diagnostic.
    double phi_residual(double xi0, double xi1, double d = 0.0) const;

    // Curvature integral 𝒦 = ∫∫ rho_+ rho_- e^phi dp dm over the window,
    // evaluated as a boundary line integral of the exact phi gradient.
    // Requires a cusp-free closure of the window.
    double integral_curvature(const SheetWindow& w) const;
    // Same quantity from an area quadrature of (det II / det I) sqrt|det I|
    // built out of embedding stencils: an independent cross-check.
    double integral_curvature_area(const SheetWindow& w) const;

    WorldSheet reconstruct(const SheetWindow& w, unsigned threads = 0) const;

    const ChiralField& plus() const { return plus_; }
    const ChiralField& minus() const { return minus_; }
    const ExternalVariables& ext() const { return ext_; }

private:
    void require_inside(double xi0, double xi1) const;
    double Gp(int comp, double p) const; // centered antiderivative, '+' frame
    double Gm(int comp, double m) const;

    ChiralField plus_, minus_;
    ExternalVariables ext_;
    std::vector<double> gp1_, gp3_, gm1_, gm3_;
};

} // namespace stringlab
