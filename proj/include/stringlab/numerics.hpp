#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stringlab/errors.hpp"

namespace stringlab {

using cplx = std::complex<double>;

// Uniform grid on [-L, L] with n intervals (n+1 samples).
struct GridSpec {
    double L = 48.0;
    std::size_t n = 8192;

    double h() const { return 2.0 * L / static_cast<double>(n); }
    double x(std::size_t i) const { return -L + h() * static_cast<double>(i); }
    std::size_t points() const { return n + 1; }

    void validate() const {
        if (L <= 0.0) throw ValidationError("grid: L must be positive");
        if (n < 16 || (n & (n - 1)) != 0)
            throw ValidationError("grid: n must be a power of two >= 16");
    }
    bool operator==(const GridSpec&) const = default;
};

// Composite Simpson over uniformly sampled values (even interval count).
inline double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size() - 1;
    if (n % 2 != 0) throw ValidationError("simpson: need even interval count");
    double s = f[0] + f[n];
    for (std::size_t i = 1; i < n; i += 2) s += 4.0 * f[i];
    for (std::size_t i = 2; i < n; i += 2) s += 2.0 * f[i];
    return s * h / 3.0;
}

// Cumulative antiderivative, O(h^2) (trapezoid). out[0] = 0.
inline std::vector<double> cumulative_trapezoid(std::span<const double> f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i)
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
}

// Cumulative antiderivative, O(h^4) (cubic cell rule with one-sided ends).
inline std::vector<double> cumulative_quartic(std::span<const double> f, double h) {
    const std::size_t n = f.size() - 1;
    std::vector<double> out(f.size(), 0.0);
    if (n < 3) return cumulative_trapezoid(f, h);
    auto cell = [&](std::size_t i) { // integral over [x_i, x_{i+1}]
        if (i == 0)
            return h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        if (i == n - 1)
            return h / 24.0 * (9.0 * f[n] + 19.0 * f[n - 1] - 5.0 * f[n - 2] + f[n - 3]);
        return h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    };
    for (std::size_t i = 0; i < n; ++i) out[i + 1] = out[i] + cell(i);
    return out;
}

// Cubic (4-point Lagrange) interpolation on a uniform grid; clamps outside.
inline double interp_cubic(const GridSpec& g, std::span<const double> v, double x) {
    if (x <= -g.L) return v.front();
    if (x >= g.L) return v.back();
    const double t = (x + g.L) / g.h();
    std::size_t i = static_cast<std::size_t>(t);
    if (i + 1 >= g.n) i = g.n - 1;
    std::size_t i0 = (i == 0) ? 0 : i - 1;
    if (i0 + 3 > g.n) i0 = g.n - 3;
    const double s = t - static_cast<double>(i0);
    double r = 0.0;
    for (int k = 0; k < 4; ++k) {
        double w = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != k) w *= (s - m) / static_cast<double>(k - m);
        r += w * v[i0 + static_cast<std::size_t>(k)];
    }
    return r;
}

// Quintic (6-point Lagrange) interpolation on a uniform grid; clamps outside.
// Used where interpolation noise gets amplified by difference stencils.
inline double interp_quintic(const GridSpec& g, std::span<const double> v, double x) {
    if (x <= -g.L) return v.front();
    if (x >= g.L) return v.back();
    const double t = (x + g.L) / g.h();
    std::size_t i = static_cast<std::size_t>(t);
    if (i + 1 >= g.n) i = g.n - 1;
    std::size_t i0 = (i >= 2) ? i - 2 : 0;
    if (i0 + 5 > g.n) i0 = g.n - 5;
    const double s = t - static_cast<double>(i0);
    double r = 0.0;
    for (int k = 0; k < 6; ++k) {
        double w = 1.0;
        for (int m = 0; m < 6; ++m)
            if (m != k) w *= (s - m) / static_cast<double>(k - m);
        r += w * v[i0 + static_cast<std::size_t>(k)];
    }
    return r;
}

// 3-vector in E_{1,2}, metric diag(1,-1,-1), component order (X0, X1, X3).
struct Vec3 {
    double t = 0, x = 0, y = 0;

    Vec3 operator+(const Vec3& o) const { return {t + o.t, x + o.x, y + o.y}; }
    Vec3 operator-(const Vec3& o) const { return {t - o.t, x - o.x, y - o.y}; }
    Vec3 operator*(double s) const { return {t * s, x * s, y * s}; }
    Vec3 operator/(double s) const { return {t / s, x / s, y / s}; }
};

inline double mdot(const Vec3& a, const Vec3& b) { return a.t * b.t - a.x * b.x - a.y * b.y; }
inline double msq(const Vec3& a) { return mdot(a, a); }

// Minkowski cross product: orthogonal to both arguments in the mdot sense.
inline Vec3 mcross(const Vec3& a, const Vec3& b) {
    const double c_t = a.x * b.y - a.y * b.x;
    const double c_x = a.y * b.t - a.t * b.y;
    const double c_y = a.t * b.x - a.x * b.t;
    return {c_t, -c_x, -c_y};
}

// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> m{};

    cplx& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    cplx operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    static Mat2 identity() { return {{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
    static Mat2 diag(cplx a, cplx b) { return {{a, cplx(0), cplx(0), b}}; }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
        r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
        r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
        r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
        return r;
    }
    cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
    Mat2 inverse() const {
        const cplx d = det();
        return {{m[3] / d, -m[1] / d, -m[2] / d, m[0] / d}};
    }
};

inline double round_to_int(double x, int& n) {
    n = static_cast<int>(std::lround(x));
    return std::abs(x - static_cast<double>(n));
}

} // namespace stringlab
