#include "stringlab/charges.hpp"

#include <cmath>
#include <tuple>

namespace stringlab {

namespace {

void require_pair(const ChiralField& plus, const ChiralField& minus) {
    if (plus.chirality() != Chirality::plus || minus.chirality() != Chirality::minus)
        throw ValidationError("charges: needs one '+' field and one '-' field, in that order");
    if (!(plus.grid() == minus.grid()))
        throw ValidationError("charges: chiral fields must share one grid");
}

struct Angles {
    std::vector<double> Ip, Im;
};

Angles sample_angles(const ChiralField& plus, const ChiralField& minus) {
    const GridSpec& g = plus.grid();
    Angles a;
    a.Ip.resize(g.points());
    a.Im.resize(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) {
        a.Ip[i] = plus.I(g.x(i));
        a.Im[i] = minus.I(g.x(i));
    }
    return a;
}

} // namespace

std::pair<double, double> momentum(const ChiralField& plus, const ChiralField& minus,
                                   const ExternalVariables& ext, double gamma) {
    require_pair(plus, minus);
    ext.validate();
    const GridSpec& g = plus.grid();
    const Angles an = sample_angles(plus, minus);
    const double b2 = 2.0 * ext.beta;
    std::vector<double> f1(g.points()), f3(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) {
        f1[i] = std::sin(2.0 * an.Ip[i] + b2) + std::sin(2.0 * an.Im[i] - b2);
        f3[i] = std::cos(2.0 * an.Ip[i] + b2) - std::cos(2.0 * an.Im[i] - b2);
    }
    const double gk = gamma * ext.kappa;
    return {-gk * simpson(f1, g.h()), -gk * simpson(f3, g.h())};
}

double shape_F_P(const ChiralField& plus, const ChiralField& minus) {
    require_pair(plus, minus);
    const GridSpec& g = plus.grid();
    const Angles an = sample_angles(plus, minus);
    std::vector<double> f1(g.points()), f3(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) {
        // beta-independent: the two integrals rotate into each other.
        f1[i] = std::sin(2.0 * an.Ip[i]) + std::sin(2.0 * an.Im[i]);
        f3[i] = std::cos(2.0 * an.Ip[i]) - std::cos(2.0 * an.Im[i]);
    }
    const double s1 = simpson(f1, g.h()), s3 = simpson(f3, g.h());
    return s1 * s1 + s3 * s3;
}

double shape_F_J(const ChiralField& plus, const ChiralField& minus) {
    require_pair(plus, minus);
    const GridSpec& g = plus.grid();
    const Angles an = sample_angles(plus, minus);
    const std::size_t n = g.points();
    // F_J = ∫∫ sign(x - y) [f1(x) g1(y) + f2(x) g2(y)] dx dy with
    //   f1 = sin I_+ cos I_+, g1 = sin I_- sin I_+,
    //   f2 = sin I_+ cos I_-, g2 = sin I_- sin I_-;
    // the inner sign-weighted integral is 2 B(x) - B(inf) for prefix B.
    std::vector<double> f1(n), f2(n), g1(n), g2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sp = std::sin(an.Ip[i]), cp = std::cos(an.Ip[i]);
        const double sm = std::sin(an.Im[i]), cm = std::cos(an.Im[i]);
        f1[i] = sp * cp;
        g1[i] = sm * sp;
        f2[i] = sp * cm;
        g2[i] = sm * sm;
    }
    const std::vector<double> B1 = cumulative_quartic(g1, g.h());
    const std::vector<double> B2 = cumulative_quartic(g2, g.h());
    std::vector<double> outer(n);
    for (std::size_t i = 0; i < n; ++i)
        outer[i] = f1[i] * (2.0 * B1[i] - B1.back()) + f2[i] * (2.0 * B2[i] - B2.back());
    return simpson(outer, g.h());
}

double hamiltonian(const ChiralField& plus, const ChiralField& minus) {
    require_pair(plus, minus);
    const GridSpec& g = plus.grid();
    std::vector<double> f(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) {
        const double rp = plus.samples()[i], rm = minus.samples()[i];
        f[i] = rp * rp + rm * rm;
    }
    return 0.5 * simpson(f, g.h());
}

ChargeSet compute_charges(const ChiralField& plus, const ChiralField& minus,
                          const ExternalVariables& ext, double gamma) {
    require_pair(plus, minus);
    ext.validate();
    if (gamma <= 0.0) throw ValidationError("charges: gamma must be positive");
    ChargeSet c;
    std::tie(c.P1, c.P3) = momentum(plus, minus, ext, gamma);
    c.F_P = shape_F_P(plus, minus);
    c.F_J = shape_F_J(plus, minus);
    c.J = gamma * ext.kappa * ext.kappa * c.F_J;
    c.M = ext.Z1 * c.P3 - ext.Z3 * c.P1 + c.J;
    c.H = hamiltonian(plus, minus);
    if (std::abs(c.F_J) < 1e-14) {
        // A vacuum pair has no shape at all: every functional vanishes and the
        // ratio Omega is conventionally zero. A genuinely degenerate F_J with
        // nonzero momentum shape is a numerical failure.
        if (std::abs(c.F_P) > 1e-10)
            throw NumericalError("charges: F_J vanishes, the constraint ratio Omega is undefined");
        c.Omega = 0.0;
    } else {
        c.Omega = c.F_P / c.F_J;
    }
    c.Phi_residual = c.P1 * c.P1 + c.P3 * c.P3 - gamma * c.J * c.Omega;
    c.n_plus = plus.topological_charge();
    c.n_minus = minus.topological_charge();
    return c;
}

} // namespace stringlab
