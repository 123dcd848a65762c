#include "stringlab/chiral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stringlab {

namespace {

// Solve (I + iG) Y = B in-place for small n; plain Gaussian elimination with
// partial pivoting is plenty at n <= 8.
void solve_small(std::vector<cplx>& A, std::vector<cplx>& B, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (std::abs(A[piv * n + col]) == 0.0)
            throw NumericalError("spectral form: singular reconstruction system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(A[col * n + c], A[piv * n + c]);
            for (std::size_t c = 0; c < n; ++c) std::swap(B[col * n + c], B[piv * n + c]);
        }
        const cplx d = A[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = A[r * n + col] / d;
            if (f == cplx(0)) continue;
            for (std::size_t c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
            for (std::size_t c = 0; c < n; ++c) B[r * n + c] -= f * B[col * n + c];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        const cplx d = A[col * n + col];
        for (std::size_t c = 0; c < n; ++c) {
            cplx s = B[col * n + c];
            for (std::size_t k = col + 1; k < n; ++k) s -= A[col * n + k] * B[k * n + c];
            B[col * n + c] = s / d;
        }
    }
}

void fill_matrices(const SpectralForm& f, double x, std::vector<cplx>& A, std::vector<cplx>& Gp) {
    const std::size_t n = f.kappa.size();
    A.assign(n * n, cplx(0));
    Gp.assign(n * n, cplx(0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const cplx ks = f.kappa[r] + f.kappa[c];
            const cplx e = std::exp(ks * x);
            Gp[r * n + c] = f.gamma[r] * e;
            A[r * n + c] = cplx(0, 1) * f.gamma[r] * e / ks;
        }
        A[r * n + r] += 1.0;
    }
}

// Beyond this, e^{(k_n+k_m)x} is saturated and the profile is flat zero.
bool in_tail(const SpectralForm& f, double x, int sign_dir) {
    double kmin = 1e300;
    for (const auto& k : f.kappa) kmin = std::min(kmin, k.real());
    return sign_dir > 0 ? 2.0 * kmin * x > 320.0 : 2.0 * kmin * x < -320.0;
}

} // namespace

double SpectralForm::rho(double x) const {
    const std::size_t n = kappa.size();
    if (n == 0) return 0.0;
    if (in_tail(*this, x, +1) || in_tail(*this, x, -1)) return 0.0;
    std::vector<cplx> A, Gp;
    fill_matrices(*this, x, A, Gp);
    solve_small(A, Gp, n); // Gp <- A^{-1} G'
    cplx tr(0);
    for (std::size_t r = 0; r < n; ++r) tr += Gp[r * n + r];
    return -2.0 * (cplx(0, 1) * tr).imag();
}

cplx SpectralForm::det_a(double x) const {
    const std::size_t n = kappa.size();
    if (n == 0) return cplx(1);
    std::vector<cplx> A, Gp;
    fill_matrices(*this, x, A, Gp);
    cplx det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(A[col * n + c], A[piv * n + c]);
            det = -det;
        }
        const cplx d = A[col * n + col];
        if (std::abs(d) == 0.0) return cplx(0);
        det *= d;
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = A[r * n + col] / d;
            for (std::size_t c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
        }
    }
    return det;
}

ChiralField ChiralField::zero(Chirality chi, const GridSpec& g, Tolerances tol) {
    g.validate();
    ChiralField f(chi, g, tol);
    f.rho_.assign(g.points(), 0.0);
    f.icum_.assign(g.points(), 0.0);
    return f;
}

ChiralField ChiralField::soliton(double a, double c, Chirality chi, const GridSpec& g,
                                 Tolerances tol) {
    if (a <= 0.0) throw ValidationError("soliton: amplitude parameter a must be positive");
    if (c == 0.0) throw ValidationError("soliton: norming constant c must be nonzero");
    SpectralForm form;
    form.kappa = {cplx(a, 0.0)};
    form.gamma = {cplx(2.0 * a * c, 0.0)};
    return from_spectral(chi, g, std::move(form), tol);
}

ChiralField ChiralField::from_samples(Chirality chi, const GridSpec& g, std::vector<double> rho,
                                      Tolerances tol) {
    g.validate();
    if (rho.size() != g.points())
        throw ValidationError("field samples: expected " + std::to_string(g.points()) +
                              " values, got " + std::to_string(rho.size()));
    ChiralField f(chi, g, tol);
    f.rho_ = std::move(rho);
    f.finalize();
    return f;
}

ChiralField ChiralField::from_spectral(Chirality chi, const GridSpec& g, SpectralForm form,
                                       Tolerances tol) {
    g.validate();
    if (form.kappa.size() != form.gamma.size())
        throw ValidationError("spectral form: size mismatch");
    for (const auto& k : form.kappa) {
        if (k.real() <= 0.0)
            throw ValidationError("spectral form: eigenvalues must lie in the upper half-plane");
        if (k.real() > 4.0)
            throw ValidationError("spectral form: |Im lambda| > 4 is not resolvable on the default grid");
    }
    ChiralField f(chi, g, tol);
    f.form_ = std::move(form);
    f.rho_.resize(g.points());
    for (std::size_t i = 0; i < g.points(); ++i) f.rho_[i] = f.form_->rho(g.x(i));
    f.finalize();
    return f;
}

void ChiralField::finalize() {
    if (std::abs(rho_.front()) > tol_.eps_decay || std::abs(rho_.back()) > tol_.eps_decay)
        throw ValidationError("field: |rho| at the grid edges exceeds the decay tolerance; "
                              "widen the grid");
    icum_ = cumulative_quartic(rho_, grid_.h());
}

double ChiralField::rho(double xi) const {
    if (xi < -grid_.L || xi > grid_.L) return 0.0;
    if (form_) return form_->rho(xi);
    return interp_cubic(grid_, rho_, xi);
}

double ChiralField::I(double xi) const {
    const double xc = std::clamp(xi, -grid_.L, grid_.L);
    const double approx = interp_cubic(grid_, icum_, xc);
    if (!form_) return approx;
    // Exact value is -2 arg det(I+iG) up to a 2*pi branch; the sampled
    // antiderivative is far more accurate than pi, so it picks the branch.
    const cplx d = form_->det_a(xc);
    if (std::abs(d) < 1e-12)
        throw NumericalError("spectral form: reconstruction determinant vanished");
    const double principal = -2.0 * std::arg(d);
    const double two_pi = 2.0 * std::numbers::pi;
    const double m = std::round((approx - principal) / two_pi);
    return principal + two_pi * m;
}

int ChiralField::topological_charge() const {
    const double ratio = I_total() / std::numbers::pi;
    int n = 0;
    const double err = round_to_int(ratio, n);
    if (err > tol_.eps_topo)
        throw NumericalError("field: total integral of rho is not an integer multiple of pi "
                             "(got " + std::to_string(ratio) + " pi)");
    return n;
}

ChiralField ChiralField::evolve(double xi0) const {
    const double shift = chirality_sign(chi_) * xi0; // profile argument offset
    if (xi0 == 0.0) return *this;
    ChiralField out(chi_, grid_, tol_);
    if (form_) {
        SpectralForm f = *form_;
        for (std::size_t i = 0; i < f.kappa.size(); ++i)
            f.gamma[i] *= std::exp(2.0 * f.kappa[i] * shift);
        out.form_ = std::move(f);
        out.rho_.resize(grid_.points());
        for (std::size_t i = 0; i < grid_.points(); ++i) out.rho_[i] = out.form_->rho(grid_.x(i));
    } else {
        out.rho_.resize(grid_.points());
        for (std::size_t i = 0; i < grid_.points(); ++i) {
            const double x = grid_.x(i) + shift;
            out.rho_[i] = (x < -grid_.L || x > grid_.L) ? 0.0 : interp_cubic(grid_, rho_, x);
        }
    }
    try {
        out.finalize();
    } catch (const ValidationError&) {
        throw ValidationError("evolve: shifted support escapes the grid at xi0 = " +
                              std::to_string(xi0));
    }
    return out;
}

} // namespace stringlab
