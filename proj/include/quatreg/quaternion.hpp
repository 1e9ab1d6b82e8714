#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "quatreg/util.hpp"

namespace quatreg {

/// Element of the quaternion algebra H, written over the basis e1..e4 where
/// e1 is the multiplicative identity and e2, e3, e4 are the imaginary units
/// with e2*e3 = e4, e3*e4 = e2, e4*e2 = e3 and ei*ei = -e1 for i >= 2.
struct Quaternion {
    std::array<double, 4> c{};  // c[k-1] is the coefficient of e_k

    constexpr Quaternion() = default;
    constexpr Quaternion(double c1, double c2, double c3, double c4) : c{c1, c2, c3, c4} {}

    static constexpr Quaternion zero() { return {}; }
    static constexpr Quaternion real(double a) { return {a, 0.0, 0.0, 0.0}; }

    /// The basis element e_axis, axis in 1..4.
    static Quaternion unit(int axis) {
        if (axis < 1 || axis > 4) throw std::out_of_range("quaternion axis must be 1..4");
        Quaternion q;
        q.c[axis - 1] = 1.0;
        return q;
    }

    /// Coefficient of e_axis, axis in 1..4.
    double coeff(int axis) const { return c[axis - 1]; }
    double& coeff(int axis) { return c[axis - 1]; }

    Quaternion& operator+=(const Quaternion& o) {
        for (int k = 0; k < 4; ++k) c[k] += o.c[k];
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        for (int k = 0; k < 4; ++k) c[k] -= o.c[k];
        return *this;
    }
    Quaternion& operator*=(double s) {
        for (int k = 0; k < 4; ++k) c[k] *= s;
        return *this;
    }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator-(const Quaternion& a) { return {-a.c[0], -a.c[1], -a.c[2], -a.c[3]}; }
inline Quaternion operator*(Quaternion a, double s) { return a *= s; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }
inline Quaternion operator/(Quaternion a, double s) { return a *= 1.0 / s; }

/// Full quaternion product (noncommutative).
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    const double a1 = a.c[0], a2 = a.c[1], a3 = a.c[2], a4 = a.c[3];
    const double b1 = b.c[0], b2 = b.c[1], b3 = b.c[2], b4 = b.c[3];
    return {
        a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
        a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
    };
}

inline Quaternion conjugate(const Quaternion& q) { return {q.c[0], -q.c[1], -q.c[2], -q.c[3]}; }

inline double norm_squared(const Quaternion& q) {
    return q.c[0] * q.c[0] + q.c[1] * q.c[1] + q.c[2] * q.c[2] + q.c[3] * q.c[3];
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

/// Conjugate and squared norm in one call; q * conjugate(q) == norm_squared(q) * e1.
inline std::pair<Quaternion, double> conjugate_and_norm(const Quaternion& q) {
    return {conjugate(q), norm_squared(q)};
}

/// Multiplicative inverse.  Throws std::domain_error for the zero quaternion.
inline Quaternion inverse(const Quaternion& q) {
    const double n2 = norm_squared(q);
    if (n2 == 0.0) throw std::domain_error("zero quaternion has no inverse");
    return conjugate(q) / n2;
}

inline double distance(const Quaternion& a, const Quaternion& b) { return norm(a - b); }

inline double max_abs_coeff(const Quaternion& q) {
    double m = 0.0;
    for (double v : q.c) m = std::max(m, std::abs(v));
    return m;
}

inline bool approx_equal(const Quaternion& a, const Quaternion& b, double tol) {
    return within_tol(distance(a, b), tol, std::max(norm(a), norm(b)));
}

/// Renders as "a + b e2 + c e3 + d e4" with signs folded into the separators.
inline std::string to_string(const Quaternion& q) {
    std::string out = fmt_double(q.c[0]);
    for (int k = 2; k <= 4; ++k) {
        const double v = q.coeff(k);
        out += (v < 0.0 ? " - " : " + ");  // -0 renders as "+ 0"
        out += fmt_double(std::abs(v));
        out += " e" + std::to_string(k);
    }
    return out;
}

}  // namespace quatreg
