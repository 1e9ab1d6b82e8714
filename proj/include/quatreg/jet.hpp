#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "quatreg/util.hpp"

namespace quatreg {

/// Second-order forward-mode AD scalar: a function value together with its
/// gradient and Hessian with respect to x1..x4 at one point.  The Hessian is
/// symmetric by construction (both triangles are always written from the same
/// expression), so h[i][j] == h[j][i] holds exactly.
struct Jet2 {
    double v = 0.0;
    Vec4 g{};
    Mat4 h{};

    static Jet2 constant(double value) {
        Jet2 j;
        j.v = value;
        return j;
    }

    /// The coordinate function x_axis evaluated at p, axis in 1..4.
    static Jet2 seed(const Vec4& p, int axis) {
        if (axis < 1 || axis > 4) throw std::out_of_range("jet seed axis must be 1..4");
        Jet2 j;
        j.v = p[axis - 1];
        j.g[axis - 1] = 1.0;
        return j;
    }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v + b.v;
    for (int i = 0; i < 4; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
    }
    return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v - b.v;
    for (int i = 0; i < 4; ++i) {
        r.g[i] = a.g[i] - b.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] - b.h[i][j];
    }
    return r;
}

inline Jet2 operator-(const Jet2& a) {
    Jet2 r;
    r.v = -a.v;
    for (int i = 0; i < 4; ++i) {
        r.g[i] = -a.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = -a.h[i][j];
    }
    return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v * b.v;
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double hij = a.h[i][j] * b.v + a.v * b.h[i][j] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
            r.h[i][j] = hij;
            r.h[j][i] = hij;
        }
    return r;
}

/// Composition with a scalar function given by value and first two derivatives
/// at a.v: (f o a).
inline Jet2 chain(const Jet2& a, double f, double df, double ddf) {
    Jet2 r;
    r.v = f;
    for (int i = 0; i < 4; ++i) r.g[i] = df * a.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double hij = df * a.h[i][j] + ddf * a.g[i] * a.g[j];
            r.h[i][j] = hij;
            r.h[j][i] = hij;
        }
    return r;
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v == 0.0) throw std::domain_error("division by zero");
    const double inv = 1.0 / b.v;
    return a * chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet2 operator+(const Jet2& a, double s) { return a + Jet2::constant(s); }
inline Jet2 operator+(double s, const Jet2& a) { return Jet2::constant(s) + a; }
inline Jet2 operator-(const Jet2& a, double s) { return a - Jet2::constant(s); }
inline Jet2 operator-(double s, const Jet2& a) { return Jet2::constant(s) - a; }
inline Jet2 operator*(const Jet2& a, double s) { return a * Jet2::constant(s); }
inline Jet2 operator*(double s, const Jet2& a) { return Jet2::constant(s) * a; }
inline Jet2 operator/(const Jet2& a, double s) { return a / Jet2::constant(s); }
inline Jet2 operator/(double s, const Jet2& a) { return Jet2::constant(s) / a; }

inline Jet2 sin(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, s, c, -s);
}

inline Jet2 cos(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, c, -s, -c);
}

inline Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
    if (a.v <= 0.0) throw std::domain_error("log of non-positive value " + fmt_double(a.v));
    const double inv = 1.0 / a.v;
    return chain(a, std::log(a.v), inv, -inv * inv);
}

inline Jet2 sqrt(const Jet2& a) {
    if (a.v <= 0.0) throw std::domain_error("sqrt of non-positive value " + fmt_double(a.v));
    const double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

/// a raised to an integer power; n == 0 yields the constant 1 (empty product),
/// negative n requires a.v != 0.
inline Jet2 pow_int(const Jet2& a, int n) {
    if (n == 0) return Jet2::constant(1.0);
    if (n == 1) return a;
    if (n < 0 && a.v == 0.0) throw std::domain_error("zero raised to a negative power");
    const double f = std::pow(a.v, n);
    const double df = n * std::pow(a.v, n - 1);
    const double ddf = double(n) * (n - 1) * std::pow(a.v, n - 2);
    return chain(a, f, df, ddf);
}

inline double pow_int(double v, int n) {
    if (n == 0) return 1.0;
    if (n < 0 && v == 0.0) throw std::domain_error("zero raised to a negative power");
    return std::pow(v, n);
}

}  // namespace quatreg
