#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace quatreg {

/// A point of R^4.  Coordinates are named x1..x4 and every axis index in this
/// library is 1-based to match that naming; p[0] holds x1.
using Vec4 = std::array<double, 4>;

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Shortest decimal string that parses back to exactly the same double.
/// Negative zero is normalized to "0".
inline std::string fmt_double(double v) {
    if (v == 0.0) return "0";
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// Absolute-plus-relative comparison against a reference scale.
inline bool within_tol(double err, double tol, double scale) {
    return std::abs(err) <= tol * (1.0 + std::abs(scale));
}

inline bool approx_equal(double a, double b, double tol) {
    return within_tol(a - b, tol, std::max(std::abs(a), std::abs(b)));
}

}  // namespace quatreg
