#pragma once

// Independent reference implementations the unit and acceptance tests check
// the library against: a table-driven quaternion product built directly from
// the basis rules, central finite differences for first and second
// derivatives, and a permutation-parity wedge sign.

#include <cmath>
#include <vector>

#include "quatreg/expr.hpp"
#include "quatreg/quaternion.hpp"

namespace oracles {

using quatreg::Expr;
using quatreg::Quaternion;
using quatreg::Vec4;

/// Basis product from first principles: e1 is the identity, e_i^2 = -e1, and
/// for 2 <= i < j <= 4 the product e_i e_j is (-1)^{i+j+1} e_{9-i-j} with
/// e_j e_i its negative.
inline Quaternion basis_product(int i, int j) {
    if (i == 1) return Quaternion::unit(j);
    if (j == 1) return Quaternion::unit(i);
    if (i == j) return -Quaternion::unit(1);
    if (i < j) {
        const double sign = ((i + j + 1) % 2 == 0) ? 1.0 : -1.0;
        return sign * Quaternion::unit(9 - i - j);
    }
    return -basis_product(j, i);
}

/// Bilinear expansion over the basis table.
inline Quaternion table_mul(const Quaternion& a, const Quaternion& b) {
    Quaternion out;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) out += (a.coeff(i) * b.coeff(j)) * basis_product(i, j);
    return out;
}

/// Sign of sorting the concatenation of two strictly increasing axis tuples,
/// by explicit adjacent-transposition counting; 0 on a shared axis.
inline int permutation_wedge_sign(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> seq = a;
    seq.insert(seq.end(), b.begin(), b.end());
    int swaps = 0;
    for (std::size_t x = 0; x < seq.size(); ++x)
        for (std::size_t y = x + 1; y < seq.size(); ++y) {
            if (seq[x] == seq[y]) return 0;
            if (seq[x] > seq[y]) ++swaps;
        }
    return swaps % 2 == 0 ? 1 : -1;
}

/// Central-difference gradient of an expression.
inline Vec4 fd_gradient(const Expr& e, const Vec4& p, double h = 1e-6) {
    Vec4 g{};
    for (int axis = 0; axis < 4; ++axis) {
        Vec4 hi = p, lo = p;
        hi[axis] += h;
        lo[axis] -= h;
        g[axis] = (quatreg::eval_real(e, hi) - quatreg::eval_real(e, lo)) / (2 * h);
    }
    return g;
}

/// Central-difference Hessian of an expression.
inline quatreg::Mat4 fd_hessian(const Expr& e, const Vec4& p, double h = 1e-3) {
    quatreg::Mat4 out{};
    const double center = quatreg::eval_real(e, p);
    for (int i = 0; i < 4; ++i) {
        Vec4 hi = p, lo = p;
        hi[i] += h;
        lo[i] -= h;
        out[i][i] = (quatreg::eval_real(e, hi) - 2 * center + quatreg::eval_real(e, lo)) / (h * h);
        for (int j = i + 1; j < 4; ++j) {
            Vec4 pp = p, pm = p, mp = p, mm = p;
            pp[i] += h; pp[j] += h;
            pm[i] += h; pm[j] -= h;
            mp[i] -= h; mp[j] += h;
            mm[i] -= h; mm[j] -= h;
            const double v = (quatreg::eval_real(e, pp) - quatreg::eval_real(e, pm) -
                              quatreg::eval_real(e, mp) + quatreg::eval_real(e, mm)) /
                             (4 * h * h);
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    return out;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace oracles
