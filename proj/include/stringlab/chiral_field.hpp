#pragma once

#include <optional>
#include <vector>

#include "stringlab/numerics.hpp"

namespace stringlab {

enum class Chirality { plus, minus };

inline double chirality_sign(Chirality c) { return c == Chirality::plus ? 1.0 : -1.0; }
inline const char* chirality_name(Chirality c) { return c == Chirality::plus ? "plus" : "minus"; }

struct Tolerances {
    double eps_decay = 1e-10; // Schwartz-class proxy at the grid edges
    double eps_topo = 1e-6;   // quantization of the total integral, in pi units
    double eps_cusp = 1e-7;   // |cos(I_+ + I_-)| below which a node is a cusp
    double eps_root = 1e-10;  // cusp root refinement in xi^1
    double eps_braid = 1e-6;  // degeneracy gap in embedding units
    double eps_geom = 1e-8;   // light-likeness / gauge identity, relative to kappa^2
};

// Exact reflectionless potential built from discrete scattering data
// {lambda_n, c_n}: with k_n = -i lambda_n (Re k_n > 0) and g_n = 2 k_n c_n,
//
//   A(x)  = I + i G(x),  G_nm = g_n e^{(k_n+k_m)x} / (k_n + k_m),
//   I(x)  = -2 arg det A(x)   (continuous branch),
//   rho   = I'(x) = -2 Im tr[A^{-1} i G'],  G'_nm = g_n e^{(k_n+k_m)x}.
//
// For a single purely imaginary eigenvalue i*a this reduces to
// rho = -2 a sgn(c) sech(2 a x + ln|c|), I = -2 atan(c e^{2 a x}).
struct SpectralForm {
    std::vector<cplx> kappa; // -i * eigenvalue, Re > 0
    std::vector<cplx> gamma; // 2 * kappa_n * c_n

    double rho(double x) const;
    // det(I + iG); |.| and principal arg feed the antiderivative evaluation
    cplx det_a(double x) const;
};

class ChiralField {
public:
    static ChiralField zero(Chirality chi, const GridSpec& g, Tolerances tol = {});
    // rho(x) = -2 a sgn(c) sech(2 a x + ln|c|), the one-soliton profile.
    static ChiralField soliton(double a, double c, Chirality chi, const GridSpec& g,
                               Tolerances tol = {});
    static ChiralField from_samples(Chirality chi, const GridSpec& g, std::vector<double> rho,
                                    Tolerances tol = {});
    static ChiralField from_spectral(Chirality chi, const GridSpec& g, SpectralForm form,
                                     Tolerances tol = {});

    double rho(double xi) const;   // exact where a spectral form exists, else cubic; 0 outside
    double I(double xi) const;     // antiderivative from -L, plateau-clamped outside
    double I_total() const { return icum_.back(); }

    // Nearest integer n with I(+L) ~ pi n; throws NumericalError when the
    // total integral is not quantized within eps_topo.
    int topological_charge() const;

    // Profile advanced to evolution parameter xi0: the argument shifts by
    // +xi0 for '+' chirality and -xi0 for '-'.
    ChiralField evolve(double xi0) const;

    Chirality chirality() const { return chi_; }
    const GridSpec& grid() const { return grid_; }
    const Tolerances& tol() const { return tol_; }
    const std::vector<double>& samples() const { return rho_; }
    const std::vector<double>& I_samples() const { return icum_; }
    const std::optional<SpectralForm>& spectral() const { return form_; }

private:
    ChiralField(Chirality chi, const GridSpec& g, Tolerances tol) : chi_(chi), grid_(g), tol_(tol) {}
    void finalize(); // sample, integrate, check decay

    Chirality chi_;
    GridSpec grid_;
    Tolerances tol_;
    std::optional<SpectralForm> form_;
    std::vector<double> rho_;
    std::vector<double> icum_;
};

} // namespace stringlab
