#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quatreg/regularity.hpp"

namespace quatreg {

/// Deterministic random source.  The raw engine is mt19937_64 and the
/// uint64-to-double conversion is spelled out explicitly, so the stream of
/// doubles for a given seed is identical across platforms and standard
/// libraries (std::uniform_real_distribution makes no such promise).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + int(next() % std::uint64_t(hi - lo + 1));
    }

    bool coin() { return (next() & 1u) != 0; }

private:
    std::mt19937_64 gen_;
};

inline Vec4 random_point(Rng& rng, double lo, double hi) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

/// Point with every coordinate magnitude in [lo, hi] and a random sign: stays
/// clear of coordinate hyperplanes and of the origin of the imaginary radius.
inline Vec4 random_point_off_axes(Rng& rng, double lo = 0.2, double hi = 0.9) {
    Vec4 p;
    for (double& x : p) x = (rng.coin() ? 1.0 : -1.0) * rng.uniform(lo, hi);
    return p;
}

inline Quaternion random_quaternion(Rng& rng, double lo, double hi) {
    return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

/// Uniform direction on the unit sphere of H, by rejection from the 4-cube.
inline Quaternion random_unit_quaternion(Rng& rng) {
    for (;;) {
        Quaternion q{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double n = norm(q);
        if (n >= 0.1 && n <= 1.0) return q / n;
    }
}

/// Random expression over x1..x4 that stays smooth and moderately sized on
/// [-1.5, 1.5]^4: polynomial nodes plus sin/cos/exp of damped arguments.
/// log, sqrt, division and negative powers are excluded so every sample point
/// is in-domain.
inline Expr random_expr(Rng& rng, int depth = 3) {
    if (depth <= 0) {
        switch (rng.uniform_int(0, 2)) {
            case 0: return lit(rng.uniform(-2.0, 2.0));
            default: return var(rng.uniform_int(1, 4));
        }
    }
    switch (rng.uniform_int(0, 6)) {
        case 0: return add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 1: return sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 2: return mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 3: return pow(var(rng.uniform_int(1, 4)), rng.uniform_int(2, 3));
        case 4: {
            const FuncKind f = rng.coin() ? FuncKind::Sin : FuncKind::Cos;
            return call(f, mul(lit(rng.uniform(-1.0, 1.0)), random_expr(rng, depth - 1)));
        }
        case 5: return call(FuncKind::Exp, mul(lit(rng.uniform(-0.5, 0.5)), var(rng.uniform_int(1, 4))));
        default: return neg(random_expr(rng, depth - 1));
    }
}

inline QFunction random_qfunction(Rng& rng, int depth = 3) {
    return QFunction({random_expr(rng, depth), random_expr(rng, depth), random_expr(rng, depth),
                      random_expr(rng, depth)});
}

/// Random real-coefficient (e1 only) function, for the graded commutativity
/// hypothesis.
inline QFunction random_real_qfunction(Rng& rng, int depth = 3) {
    return QFunction::real(random_expr(rng, depth));
}

/// Random form field of the given degree with random function coefficients.
inline FormField random_form_field(Rng& rng, int degree, bool real_coefficients = false, int depth = 2) {
    FormField f(degree);
    for (unsigned mask = 0; mask <= 0xF; ++mask) {
        MultiIndex idx = MultiIndex::from_mask(mask);
        if (idx.degree() != degree) continue;
        f.set(idx, real_coefficients ? random_real_qfunction(rng, depth) : random_qfunction(rng, depth));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Reference corpus.

/// Named special-shape function with its known regularity status.  For the
/// non-regular members, `witness` is a specific point where the residuals are
/// provably nonzero and the difference-quotient limit fails to exist.
struct CorpusEntry {
    std::string name;
    SpecialFunction fn;
    bool regular = false;
    Vec4 witness{};
};

/// Fixed reference corpus: seven regular members (power maps, a real-affine
/// combination of them, and a slice-function series) and six non-regular
/// members.  Non-regular residuals are bounded away from zero whenever every
/// coordinate magnitude lies in [0.2, 0.9], the range random_point_off_axes
/// draws from.
inline std::vector<CorpusEntry> reference_corpus() {
    auto F = [](const char* f0, const char* f1) {
        return SpecialFunction{parse_expr(f0), parse_expr(f1)};
    };
    std::vector<CorpusEntry> out;

    out.push_back({"constant", F("0", "5"), true, {}});
    out.push_back({"identity", F("1", "x1"), true, {}});
    out.push_back({"square", F("2*x1", "x1^2-x2^2-x3^2-x4^2"), true, {}});
    out.push_back({"cube", F("3*x1^2-(x2^2+x3^2+x4^2)", "x1^3-3*x1*(x2^2+x3^2+x4^2)"), true, {}});
    out.push_back({"fourth-power",
                   F("4*x1*(x1^2-(x2^2+x3^2+x4^2))",
                     "(x1^2-(x2^2+x3^2+x4^2))^2-4*x1^2*(x2^2+x3^2+x4^2)"),
                   true,
                   {}});
    out.push_back({"affine-combo", F("4*x1-3", "2*(x1^2-x2^2-x3^2-x4^2)-3*x1+5"), true, {}});
    out.push_back({"exp-series",
                   F("exp(x1)*sin(sqrt(x2^2+x3^2+x4^2))/sqrt(x2^2+x3^2+x4^2)",
                     "exp(x1)*cos(sqrt(x2^2+x3^2+x4^2))"),
                   true,
                   {}});

    out.push_back({"swapped-coordinate", F("x2", "0"), false, {0.0, 0.0, 1.0, 0.0}});
    out.push_back({"imaginary-linear", F("0", "x2"), false, {0.3, -0.2, 0.5, 0.1}});
    out.push_back({"offset-scalar", F("1", "x2"), false, {0.5, 0.4, -0.3, 0.2}});
    out.push_back({"mismatched-linear", F("x1", "x1"), false, {0.0, 0.3, 0.4, 0.5}});
    out.push_back({"half-shape", F("x1^2", "x1^3/3"), false, {0.5, 0.4, 0.3, -0.6}});
    out.push_back({"trig-mismatch", F("sin(x2)", "cos(x1)"), false, {0.5, 0.3, 0.7, -0.4}});
    return out;
}

}  // namespace quatreg
