#pragma once

#include <utility>

#include "stringlab/worldsheet.hpp"

namespace stringlab {

// Conserved quantities of a field pair plus the shape functionals they factor
// through. Phi_residual is the numerical value of the constraint
// P^2 - gamma J Omega, which vanishes identically in exact arithmetic.
struct ChargeSet {
    double P1 = 0, P3 = 0;
    double J = 0, M = 0, H = 0;
    double F_P = 0, F_J = 0, Omega = 0;
    double Phi_residual = 0;
    int n_plus = 0, n_minus = 0;
};

// Spatial momentum (P1, P3) at coupling gamma.
std::pair<double, double> momentum(const ChiralField& plus, const ChiralField& minus,
                                   const ExternalVariables& ext, double gamma);

// Scale-free shape functionals entering J and the constraint.
double shape_F_P(const ChiralField& plus, const ChiralField& minus);
double shape_F_J(const ChiralField& plus, const ChiralField& minus);

// Field energy: H = 1/2 ∫ (rho_+^2 + rho_-^2).
double hamiltonian(const ChiralField& plus, const ChiralField& minus);

ChargeSet compute_charges(const ChiralField& plus, const ChiralField& minus,
                          const ExternalVariables& ext, double gamma);

} // namespace stringlab
