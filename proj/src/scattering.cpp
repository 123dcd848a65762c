#include "stringlab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "stringlab/parallel.hpp"

namespace stringlab {

namespace {

constexpr double kSilent = 1e-18; // potential below this contributes nothing

// Signed potential of the auxiliary linear problem, sampled at half the
// integration substep so every RK4 stage lands on a precomputed value.
struct FineSamples {
    std::vector<double> p;
    double step;   // spacing between samples
    double x0;     // coordinate of sample 0
    long active_lo; // first/last substep (pair of samples) with signal
    long active_hi;
};

FineSamples sample_potential(const ChiralField& field, int oversample) {
    if (oversample < 1 || oversample > 16)
        throw ValidationError("scattering: oversample must be in [1, 16]");
    const GridSpec& g = field.grid();
    const double s = chirality_sign(field.chirality());
    FineSamples fs;
    const std::size_t m = 2 * static_cast<std::size_t>(oversample) * g.n;
    fs.step = 2.0 * g.L / static_cast<double>(m);
    fs.x0 = -g.L;
    fs.p.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i)
        fs.p[i] = s * field.rho(fs.x0 + fs.step * static_cast<double>(i));
    const long nsub = static_cast<long>(m / 2);
    fs.active_lo = nsub;
    fs.active_hi = -1;
    for (long j = 0; j < nsub; ++j) {
        const std::size_t k = 2 * static_cast<std::size_t>(j);
        if (std::abs(fs.p[k]) > kSilent || std::abs(fs.p[k + 1]) > kSilent ||
            std::abs(fs.p[k + 2]) > kSilent) {
            fs.active_lo = std::min(fs.active_lo, j);
            fs.active_hi = std::max(fs.active_hi, j);
        }
    }
    return fs;
}

using Vec2c = std::array<cplx, 2>;

// One interaction-picture RK4 substep of w' = (diag(d1,d2) + P) w over the
// signed interval sub; the stiff diagonal part is applied exactly, RK4 only
// sees the rotated off-diagonal potential. p0/p1/p2 are the potential at the
// start, midpoint and end of the substep.
void rk4_substep(Vec2c& w, cplx d1, cplx d2, double sub, double p0, double p1, double p2) {
    const cplx dd = d2 - d1;
    if (std::abs(p0) <= kSilent && std::abs(p1) <= kSilent && std::abs(p2) <= kSilent) {
        w[0] *= std::exp(d1 * sub);
        w[1] *= std::exp(d2 * sub);
        return;
    }
    const cplx em = std::exp(dd * (0.5 * sub));
    const cplx ee = em * em;
    auto apply = [&](double p, cplx e, const Vec2c& v) -> Vec2c {
        // B(tau) v with B = [[0, p e^{(d2-d1)tau}], [-p e^{(d1-d2)tau}, 0]]
        return {p * e * v[1], -p / e * v[0]};
    };
    const Vec2c k1 = apply(p0, cplx(1), w);
    const Vec2c k2 = apply(p1, em, {w[0] + 0.5 * sub * k1[0], w[1] + 0.5 * sub * k1[1]});
    const Vec2c k3 = apply(p1, em, {w[0] + 0.5 * sub * k2[0], w[1] + 0.5 * sub * k2[1]});
    const Vec2c k4 = apply(p2, ee, {w[0] + sub * k3[0], w[1] + sub * k3[1]});
    w[0] += sub / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    w[1] += sub / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    w[0] *= std::exp(d1 * sub);
    w[1] *= std::exp(d2 * sub);
}

// Integrate w across substeps [j_begin, j_end) forward, or (j_end, j_begin]
// backward when j_begin > j_end.
void rk4_path(const FineSamples& fs, cplx d1, cplx d2, long j_begin, long j_end, Vec2c& w) {
    const double sub = 2.0 * fs.step;
    if (j_begin <= j_end) {
        for (long j = j_begin; j < j_end; ++j) {
            const std::size_t k = 2 * static_cast<std::size_t>(j);
            rk4_substep(w, d1, d2, sub, fs.p[k], fs.p[k + 1], fs.p[k + 2]);
        }
    } else {
        for (long j = j_begin; j > j_end; --j) {
            const std::size_t k = 2 * static_cast<std::size_t>(j - 1);
            rk4_substep(w, d1, d2, -sub, fs.p[k + 2], fs.p[k + 1], fs.p[k]);
        }
    }
}

// Scaled Jost columns meeting at substep index j_mid:
//   wm = (second column of the left Jost solution) * e^{+i lambda xi},
//   wp = (first column of the right Jost solution) * e^{-i lambda xi}.
// Both stay O(1) in the upper half-plane, and a = det[wp, wm] at any common
// point because the scalings cancel inside the determinant.
struct JostPair {
    Vec2c wm, wp;
};

JostPair jost_columns(const FineSamples& fs, cplx lambda) {
    const long nsub = static_cast<long>(fs.p.size() / 2);
    const long j_mid = std::clamp((fs.active_lo + fs.active_hi + 1) / 2, 0L, nsub);
    const cplx tiL = cplx(0, 2) * lambda;
    JostPair jp;
    jp.wm = {cplx(0), cplx(1)};
    jp.wp = {cplx(1), cplx(0)};
    // Silent tails leave the scaled columns exactly invariant: the lone
    // nonzero component of each sits on the zero diagonal entry.
    rk4_path(fs, tiL, cplx(0), std::min(fs.active_lo, j_mid), j_mid, jp.wm);
    rk4_path(fs, cplx(0), -tiL, std::max(fs.active_hi + 1, j_mid), j_mid, jp.wp);
    return jp;
}

cplx a_of(const JostPair& jp) {
    return jp.wp[0] * jp.wm[1] - jp.wp[1] * jp.wm[0];
}

double a_imag_axis(const FineSamples& fs, double t) {
    // a is real on the imaginary axis; the residual imaginary part is a
    // discretization check, not information.
    return a_of(jost_columns(fs, cplx(0, t))).real();
}

cplx a_complex(const FineSamples& fs, cplx lambda) {
    return a_of(jost_columns(fs, lambda));
}

double refine_imaginary_root(const FineSamples& fs, double t_lo, double t_hi, double f_lo,
                             double f_hi) {
    // Bisection for robustness, then secant for the last digits.
    for (int it = 0; it < 60 && t_hi - t_lo > 1e-5; ++it) {
        const double tm = 0.5 * (t_lo + t_hi);
        const double fm = a_imag_axis(fs, tm);
        if (fm == 0.0) return tm;
        if ((fm < 0) == (f_lo < 0)) {
            t_lo = tm;
            f_lo = fm;
        } else {
            t_hi = tm;
            f_hi = fm;
        }
    }
    double x0 = t_lo, x1 = t_hi, f0 = f_lo, f1 = f_hi;
    for (int it = 0; it < 40; ++it) {
        if (f1 == f0) break;
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 > t_lo - 1e-3 && x2 < t_hi + 1e-3)) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = a_imag_axis(fs, x1);
        if (std::abs(x1 - x0) < 1e-13) break;
    }
    return x1;
}

cplx refine_complex_root(const FineSamples& fs, cplx seed, double spread) {
    cplx x0 = seed, x1 = seed + cplx(spread, spread);
    cplx f0 = a_complex(fs, x0), f1 = a_complex(fs, x1);
    for (int it = 0; it < 60; ++it) {
        if (f1 == f0) break;
        const cplx x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = a_complex(fs, x1);
        if (std::abs(x1 - x0) < 1e-13) break;
    }
    return x1;
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

void DiscreteSpectrum::validate() const {
    if (eigenvalues.size() != norming_constants.size())
        throw ValidationError("spectrum: eigenvalue / norming constant count mismatch");
    const std::size_t n = eigenvalues.size();
    std::vector<bool> paired(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx lam = eigenvalues[i];
        if (lam.imag() <= 0.0)
            throw ValidationError("spectrum: eigenvalues must lie in the open upper half-plane");
        if (norming_constants[i] == cplx(0))
            throw ValidationError("spectrum: norming constants must be nonzero");
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(eigenvalues[j] - lam) < 1e-12)
                throw ValidationError("spectrum: eigenvalues must be distinct");
        if (std::abs(lam.real()) < 1e-12) {
            if (std::abs(norming_constants[i].imag()) > 1e-12)
                throw ValidationError("spectrum: imaginary eigenvalues need real norming constants");
            continue;
        }
        if (paired[i]) continue;
        bool found = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || paired[j]) continue;
            if (std::abs(eigenvalues[j] + std::conj(lam)) < 1e-10) {
                if (std::abs(norming_constants[j] - std::conj(norming_constants[i])) > 1e-10)
                    throw ValidationError(
                        "spectrum: paired eigenvalues need conjugate norming constants");
                paired[i] = paired[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw ValidationError("spectrum: off-axis eigenvalue lacks its mirror partner "
                                  "(-conj(lambda)); the field would be complex");
    }
}

std::size_t DiscreteSpectrum::imaginary_count() const {
    std::size_t k = 0;
    for (const auto& lam : eigenvalues)
        if (std::abs(lam.real()) < 1e-12) ++k;
    return k;
}

Mat2 rotation_matrix(const ChiralField& field, double xi) {
    const double s = chirality_sign(field.chirality());
    const double I = field.I(xi);
    Mat2 R;
    R(0, 0) = std::cos(I);
    R(0, 1) = s * std::sin(I);
    R(1, 0) = -s * std::sin(I);
    R(1, 1) = std::cos(I);
    return R;
}

Monodromy forward_scatter(const ChiralField& field, double lambda, int oversample) {
    const FineSamples fs = sample_potential(field, oversample);
    const GridSpec& g = field.grid();
    const long nsub = static_cast<long>(fs.p.size() / 2);
    const cplx iL = cplx(0, 1) * lambda;
    // Transfer matrix column by column; the silent tails reduce to exact
    // plane-wave phases inside rk4_substep.
    Vec2c c0{cplx(1), cplx(0)}, c1{cplx(0), cplx(1)};
    rk4_path(fs, iL, -iL, 0, nsub, c0);
    rk4_path(fs, iL, -iL, 0, nsub, c1);
    Mat2 T;
    T(0, 0) = c0[0];
    T(1, 0) = c0[1];
    T(0, 1) = c1[0];
    T(1, 1) = c1[1];
    const Mat2 E = Mat2::diag(std::exp(-iL * g.L), std::exp(iL * g.L));
    Monodromy out;
    out.M = E * T * E; // = U^[+](L)^{-1} U^[-](L)
    out.a = out.M(1, 1);
    out.b = out.M(1, 0);
    return out;
}

cplx scatter_a(const ChiralField& field, cplx lambda, int oversample) {
    if (lambda.imag() < 0.0)
        throw ValidationError("scatter_a: lambda must have nonnegative imaginary part");
    const FineSamples fs = sample_potential(field, oversample);
    return a_complex(fs, lambda);
}

cplx norming_coefficient(const ChiralField& field, cplx lambda, int oversample) {
    const FineSamples fs = sample_potential(field, oversample);
    const JostPair jp = jost_columns(fs, lambda);
    const cplx a = a_of(jp);
    if (std::abs(a) > 1e-4)
        throw NumericalError("norming coefficient: lambda is not a discrete eigenvalue "
                             "(|a| = " + std::to_string(std::abs(a)) + ")");
    // At a zero of a the two columns are proportional; the scalings of wp and
    // wm cancel at the (common) meeting point up to e^{2 i lambda xi_mid},
    // which both components share.
    const int k = std::abs(jp.wm[0]) > std::abs(jp.wm[1]) ? 0 : 1;
    const long nsub = static_cast<long>(fs.p.size() / 2);
    const long j_mid = std::clamp((fs.active_lo + fs.active_hi + 1) / 2, 0L, nsub);
    const double xi_mid = fs.x0 + 2.0 * fs.step * static_cast<double>(j_mid);
    const cplx phase = std::exp(cplx(0, 2) * lambda * xi_mid);
    return jp.wp[k] / jp.wm[k] * phase;
}

MonodromyData monodromy_scan(const ChiralField& field, const std::vector<double>& lambdas,
                             unsigned threads, int oversample) {
    MonodromyData out;
    out.lambda_grid = lambdas;
    out.a_values.resize(lambdas.size());
    out.b_values.resize(lambdas.size());
    parallel_for(lambdas.size(), resolve_threads(threads), [&](std::size_t i) {
        const Monodromy m = forward_scatter(field, lambdas[i], oversample);
        out.a_values[i] = m.a;
        out.b_values[i] = m.b;
    });
    out.parity = parity_check(field);
    return out;
}

DiscreteSpectrum find_eigenvalues(const ChiralField& field, const SearchSpec& search) {
    if (search.a_min <= 0.0 || search.a_max <= search.a_min)
        throw ValidationError("eigenvalue search: need 0 < a_min < a_max");
    if (search.scan_samples < 8)
        throw ValidationError("eigenvalue search: scan too coarse");
    const FineSamples fs = sample_potential(field, search.oversample);
    const unsigned nt = resolve_threads(search.threads);

    // Imaginary axis: a(it) is real with a simple sign change at each bound
    // state for the configurations handled here.
    std::vector<double> ts(search.scan_samples), as(search.scan_samples);
    for (std::size_t i = 0; i < ts.size(); ++i)
        ts[i] = search.a_min + (search.a_max - search.a_min) * static_cast<double>(i) /
                                   static_cast<double>(ts.size() - 1);
    parallel_for(ts.size(), nt, [&](std::size_t i) { as[i] = a_imag_axis(fs, ts[i]); });

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (as[i] == 0.0) {
            roots.push_back(ts[i]);
            continue;
        }
        if ((as[i] < 0) != (as[i + 1] < 0))
            roots.push_back(refine_imaginary_root(fs, ts[i], ts[i + 1], as[i], as[i + 1]));
    }

    // Each imaginary-axis bound state shifts the winding by -+1 depending on
    // the sign of its coupling, so the winding bounds the count from below
    // and fixes its parity; mixed-sign couplings make the count exceed
    // |winding| by an even number.
    const int charge = field.topological_charge();
    const std::size_t n_min = static_cast<std::size_t>(std::abs(charge));
    if (roots.size() < n_min || (roots.size() - n_min) % 2 != 0)
        throw NumericalError("eigenvalue search: found " + std::to_string(roots.size()) +
                             " imaginary-axis bound states, inconsistent with winding number " +
                             std::to_string(charge) +
                             "; widen the scan interval or refine the grid");

    DiscreteSpectrum spec;
    spec.chirality = field.chirality();
    for (const double t : roots) spec.eigenvalues.emplace_back(0.0, t);

    if (search.pair_search) {
        // Coarse |a| landscape over the open quadrant, secant refinement of
        // the local minima, then mirror each root to its -conj partner.
        const std::size_t ng = std::max<std::size_t>(search.pair_grid, 8);
        std::vector<cplx> grid_vals(ng * ng);
        const double dre = search.re_max / static_cast<double>(ng);
        const double dim = (search.a_max - search.a_min) / static_cast<double>(ng);
        parallel_for(ng * ng, nt, [&](std::size_t k) {
            const std::size_t r = k / ng, c = k % ng;
            const cplx lam(dre * (static_cast<double>(c) + 0.5),
                           search.a_min + dim * (static_cast<double>(r) + 0.5));
            grid_vals[k] = a_complex(fs, lam);
        });
        std::vector<cplx> seeds;
        for (std::size_t k = 0; k < grid_vals.size(); ++k) {
            const double v = std::abs(grid_vals[k]);
            if (v > 0.2) continue;
            const std::size_t r = k / ng, c = k % ng;
            bool is_min = true;
            for (long drr = -1; drr <= 1 && is_min; ++drr)
                for (long dcc = -1; dcc <= 1; ++dcc) {
                    const long rr = static_cast<long>(r) + drr, cc = static_cast<long>(c) + dcc;
                    if (rr < 0 || cc < 0 || rr >= static_cast<long>(ng) ||
                        cc >= static_cast<long>(ng))
                        continue;
                    if (std::abs(grid_vals[static_cast<std::size_t>(rr) * ng +
                                           static_cast<std::size_t>(cc)]) < v) {
                        is_min = false;
                        break;
                    }
                }
            if (is_min)
                seeds.emplace_back(dre * (static_cast<double>(c) + 0.5),
                                   search.a_min + dim * (static_cast<double>(r) + 0.5));
        }
        for (const cplx seed : seeds) {
            const cplx root = refine_complex_root(fs, seed, 0.25 * std::min(dre, dim));
            if (!(root.imag() > search.a_min && root.real() > 0.25 * dre)) continue;
            if (std::abs(a_complex(fs, root)) > 1e-8) continue;
            bool dup = false;
            for (const cplx known : spec.eigenvalues)
                if (std::abs(known - root) < 1e-8) dup = true;
            if (dup) continue;
            spec.eigenvalues.push_back(root);
            spec.eigenvalues.push_back(-std::conj(root));
        }
    }

    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), [](cplx x, cplx y) {
        return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
    });

    // Norming constants from the column proportionality coefficient b_n:
    //   c_n = -s b_n prod_{m != n} (l_n + l_m) / (l_n - l_m)
    // with s the chirality sign. The synthesis kernel couples eigenvalue
    // pairs through l_n + l_m, which matches the usual l_n - conj(l_m) on
    // the imaginary axis and replaces it off-axis (the mirror symmetry
    // l -> -conj(l) maps one product onto the other).
    const double s = chirality_sign(field.chirality());
    spec.norming_constants.resize(spec.eigenvalues.size());
    parallel_for(spec.eigenvalues.size(), nt, [&](std::size_t i) {
        const cplx lam = spec.eigenvalues[i];
        const JostPair jp = jost_columns(fs, lam);
        const int k = std::abs(jp.wm[0]) > std::abs(jp.wm[1]) ? 0 : 1;
        const long nsub = static_cast<long>(fs.p.size() / 2);
        const long j_mid = std::clamp((fs.active_lo + fs.active_hi + 1) / 2, 0L, nsub);
        const double xi_mid = fs.x0 + 2.0 * fs.step * static_cast<double>(j_mid);
        const cplx b = jp.wp[k] / jp.wm[k] * std::exp(cplx(0, 2) * lam * xi_mid);
        cplx prod(1);
        for (std::size_t m = 0; m < spec.eigenvalues.size(); ++m) {
            if (m == i) continue;
            prod *= (lam + spec.eigenvalues[m]) / (lam - spec.eigenvalues[m]);
        }
        cplx c = -s * b * prod;
        if (std::abs(lam.real()) < 1e-12) c = cplx(c.real(), 0.0); // exact reality
        spec.norming_constants[i] = c;
    });
    spec.validate();
    return spec;
}

ChiralField synth_nsoliton(const DiscreteSpectrum& spec, const GridSpec& grid, Tolerances tol) {
    spec.validate();
    SpectralForm form;
    form.kappa.reserve(spec.eigenvalues.size());
    form.gamma.reserve(spec.eigenvalues.size());
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        const cplx kap = cplx(0, -1) * spec.eigenvalues[i];
        form.kappa.push_back(kap);
        form.gamma.push_back(2.0 * kap * spec.norming_constants[i]);
    }
    return ChiralField::from_spectral(spec.chirality, grid, std::move(form), tol);
}

int parity_check(const ChiralField& field) {
    const Monodromy m = forward_scatter(field, 0.0);
    const double off = std::abs(m.M(0, 1)) + std::abs(m.M(1, 0));
    const double d = std::abs(m.M(0, 0) - m.M(1, 1));
    if (off > 1e-6 || d > 1e-6)
        throw NumericalError("parity check: zero-energy transfer matrix is not a multiple "
                             "of the identity");
    const double v = m.M(0, 0).real();
    if (std::abs(std::abs(v) - 1.0) > 1e-6)
        throw NumericalError("parity check: zero-energy transfer matrix is not +-identity");
    return v > 0 ? 1 : -1;
}

} // namespace stringlab
