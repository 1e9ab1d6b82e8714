#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatreg/forms.hpp"

namespace quatreg {

/// A function of the special shape f = f1 e1 + x2 f0 e2 + x3 f0 e3 + x4 f0 e4,
/// determined by the two real expressions f0 and f1.
struct SpecialFunction {
    Expr f0, f1;

    QFunction induced() const { return QFunction::special_shape(f0, f1); }
};

/// The seven first-order residuals whose simultaneous vanishing characterizes
/// regularity of a special-shape function:
///   main = ∂f1/∂x1 - (f0 + x2 ∂f0/∂x2 + x3 ∂f0/∂x3 + x4 ∂f0/∂x4)
///   r_i  = ∂f1/∂x_i + x_i ∂f0/∂x1                        for i = 2,3,4
///   r_ij = x_i ∂f0/∂x_j - x_j ∂f0/∂x_i                   for ij = 23,24,34
/// `scale` is the largest constituent term magnitude, for relative tolerances.
struct PdeResiduals {
    double main = 0, r2 = 0, r3 = 0, r4 = 0, r23 = 0, r24 = 0, r34 = 0;
    double scale = 0;

    double max_abs() const {
        double m = 0;
        for (double v : {main, r2, r3, r4, r23, r24, r34}) m = std::max(m, std::abs(v));
        return m;
    }
};

inline PdeResiduals pde_residuals(const SpecialFunction& F, const Vec4& c) {
    const Jet2 j0 = eval_jet(F.f0, c);
    const Jet2 j1 = eval_jet(F.f1, c);
    PdeResiduals r;
    const double radial = c[1] * j0.g[1] + c[2] * j0.g[2] + c[3] * j0.g[3];
    r.main = j1.g[0] - (j0.v + radial);
    r.r2 = j1.g[1] + c[1] * j0.g[0];
    r.r3 = j1.g[2] + c[2] * j0.g[0];
    r.r4 = j1.g[3] + c[3] * j0.g[0];
    r.r23 = c[1] * j0.g[2] - c[2] * j0.g[1];
    r.r24 = c[1] * j0.g[3] - c[3] * j0.g[1];
    r.r34 = c[2] * j0.g[3] - c[3] * j0.g[2];
    for (double t : {j0.v, j1.g[0], j1.g[1], j1.g[2], j1.g[3], c[1] * j0.g[0], c[2] * j0.g[0],
                     c[3] * j0.g[0], c[1] * j0.g[1], c[1] * j0.g[2], c[1] * j0.g[3], c[2] * j0.g[1],
                     c[2] * j0.g[2], c[2] * j0.g[3], c[3] * j0.g[1], c[3] * j0.g[2], c[3] * j0.g[3]})
        r.scale = std::max(r.scale, std::abs(t));
    return r;
}

/// The two volume-coefficient residuals built from the distinguished 3-forms:
///   left  = volume coefficient of  Dq∧df + 2 D0q∧df0 + 2 D1q∧df1
///   right = volume coefficient of  df∧Dq + 2 df0∧D0q + 2 df1∧D1q
/// where df0, df1 are the differentials of the real 0-forms f0, f1.  Both are
/// zero quaternions exactly when the function is regular.
struct FormResiduals {
    Quaternion left, right;
    double scale = 0;

    double max_abs() const { return std::max(max_abs_coeff(left), max_abs_coeff(right)); }
};

inline FormResiduals form_residuals(const SpecialFunction& F, const Vec4& c) {
    const QFunction f = F.induced();
    const PointForm df = differential(f, c);
    const PointForm df0 = differential(QFunction::real(F.f0), c);
    const PointForm df1 = differential(QFunction::real(F.f1), c);
    const PointForm dq = special_form(SpecialFormKind::Dq)(c);
    const PointForm d0q = special_form(SpecialFormKind::D0q)(c);
    const PointForm d1q = special_form(SpecialFormKind::D1q)(c);

    const Quaternion l1 = volume_coefficient(wedge(dq, df));
    const Quaternion l2 = volume_coefficient(wedge(d0q, df0));
    const Quaternion l3 = volume_coefficient(wedge(d1q, df1));
    const Quaternion r1 = volume_coefficient(wedge(df, dq));
    const Quaternion r2 = volume_coefficient(wedge(df0, d0q));
    const Quaternion r3 = volume_coefficient(wedge(df1, d1q));

    FormResiduals out;
    out.left = l1 + 2.0 * l2 + 2.0 * l3;
    out.right = r1 + 2.0 * r2 + 2.0 * r3;
    for (const Quaternion& q : {l1, l2, l3, r1, r2, r3})
        out.scale = std::max(out.scale, max_abs_coeff(q));
    return out;
}

/// Default verdict tolerances.  Both are applied absolute-plus-relative
/// against the largest term entering the residual.
inline constexpr double kPdeTolerance = 1e-9;
inline constexpr double kFormTolerance = 1e-8;

/// Point evaluation of both residual families plus the verdicts they imply.
struct ResidualReport {
    Vec4 point{};
    PdeResiduals pde;
    FormResiduals forms;
    double pde_tolerance = kPdeTolerance;
    double form_tolerance = kFormTolerance;
    bool pde_regular = false;
    bool form_regular = false;

    bool regular() const { return pde_regular && form_regular; }
};

inline ResidualReport check_point(const SpecialFunction& F, const Vec4& c,
                                  double pde_tol = kPdeTolerance, double form_tol = kFormTolerance) {
    ResidualReport rep;
    rep.point = c;
    rep.pde = pde_residuals(F, c);
    rep.forms = form_residuals(F, c);
    rep.pde_tolerance = pde_tol;
    rep.form_tolerance = form_tol;
    rep.pde_regular = within_tol(rep.pde.max_abs(), pde_tol, rep.pde.scale);
    rep.form_regular = within_tol(rep.forms.max_abs(), form_tol, rep.forms.scale);
    return rep;
}

/// ∂f/∂x1 of the induced function at c, the common value of both difference
/// quotient limits when f is regular.
inline Quaternion derivative_value(const SpecialFunction& F, const Vec4& c) {
    const double d0 = eval_jet(F.f0, c).g[0];
    const double d1 = eval_jet(F.f1, c).g[0];
    return {d1, c[1] * d0, c[2] * d0, c[3] * d0};
}

/// The x1-derivative as a special-shape function; its induced QFunction is
/// ∂f/∂x1 pointwise, and it is regular whenever f is.
inline SpecialFunction quaternion_derivative(const SpecialFunction& F) {
    return SpecialFunction{diff(F.f0, 1), diff(F.f1, 1)};
}

// ---------------------------------------------------------------------------
// Helper functions for the difference quotient.

enum class QuotientSide { Left, Right };

namespace detail {

struct AxisPair {
    int i, j, k;  // k = 9 - i - j
};

inline AxisPair axis_pair_for(int index) {
    switch (index) {
        case 4: return {2, 3, 4};
        case 3: return {2, 4, 3};
        case 2: return {3, 4, 2};
        default: throw std::invalid_argument("helper index must be 2, 3, or 4");
    }
}

}  // namespace detail

/// The correction function h_index attached to the imaginary pair (i, j) with
/// index = 9 - i - j, anchored at c.  Only f0 and the anchor enter.  All six
/// helpers are real-linear in f0 with coordinates frozen along single axes, so
/// f0 = 0 or c = 0 makes them identically zero.  The e1 component is always
/// zero.
inline QFunction helper_function(const SpecialFunction& F, const Vec4& c, QuotientSide side, int index) {
    const auto [i, j, k] = detail::axis_pair_for(index);
    const double ci = c[i - 1];
    const double cj = c[j - 1];
    const double ck = c[k - 1];
    const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;

    const Expr f0_ai = freeze_except(F.f0, i, c);   // x_i free, the rest at c
    const Expr f0_aj = freeze_except(F.f0, j, c);   // x_j free
    const Expr f0_x1 = freeze_except(F.f0, 1, c);   // x1 free

    std::array<Expr, 4> comps{lit(0.0), lit(0.0), lit(0.0), lit(0.0)};
    comps[k - 1] = add(mul(lit(ci), f0_ai), mul(lit(cj), f0_aj));
    if (side == QuotientSide::Left) {
        comps[j - 1] = neg(add(mul(lit(sgn * ci), f0_x1), mul(lit(ck), f0_aj)));
        comps[i - 1] = sub(mul(lit(sgn * cj), f0_x1), mul(lit(ck), f0_ai));
    } else {
        comps[j - 1] = sub(mul(lit(sgn * ci), f0_x1), mul(lit(ck), f0_aj));
        comps[i - 1] = neg(add(mul(lit(sgn * cj), f0_x1), mul(lit(ck), f0_ai)));
    }
    return QFunction(comps);
}

// ---------------------------------------------------------------------------
// Corrected difference quotients and their limits.

/// Magnitudes 1e-2, 1e-2/2, ..., halving `stages` times.
inline std::vector<double> default_magnitude_schedule(int stages = 11, double start = 1e-2) {
    std::vector<double> out;
    out.reserve(stages);
    double t = start;
    for (int s = 0; s < stages; ++s, t *= 0.5) out.push_back(t);
    return out;
}

/// Corrected numerator N(Δq) = f(c+Δq) - f(c)
///   + Σ_index [ h_index(c + Δq_index (e1+e2+e3+e4)) - h_index(c) ],
/// where Δq_index is the e_index coefficient of Δq.  The helper terms cancel
/// the commutator part of the increment, so (Δq)^{-1} N (left) and N (Δq)^{-1}
/// (right) converge to ∂f/∂x1(c) exactly when f is regular at c.
class QuotientEvaluator {
public:
    QuotientEvaluator(const SpecialFunction& F, const Vec4& c, QuotientSide side)
        : c_(c), side_(side), f_(F.induced()), f_at_c_(f_(c)) {
        for (int index = 2; index <= 4; ++index) {
            helpers_[index - 2] = helper_function(F, c, side, index);
            helpers_at_c_[index - 2] = helpers_[index - 2](c);
        }
    }

    Quaternion numerator(const Quaternion& dq) const {
        Vec4 shifted{c_[0] + dq.coeff(1), c_[1] + dq.coeff(2), c_[2] + dq.coeff(3), c_[3] + dq.coeff(4)};
        Quaternion n = f_(shifted) - f_at_c_;
        for (int index = 2; index <= 4; ++index) {
            const double t = dq.coeff(index);
            const Vec4 diag{c_[0] + t, c_[1] + t, c_[2] + t, c_[3] + t};
            n += helpers_[index - 2](diag) - helpers_at_c_[index - 2];
        }
        return n;
    }

    Quaternion quotient(const Quaternion& dq) const {
        const Quaternion n = numerator(dq);
        const Quaternion inv = inverse(dq);
        return side_ == QuotientSide::Left ? inv * n : n * inv;
    }

private:
    Vec4 c_;
    QuotientSide side_;
    QFunction f_;
    Quaternion f_at_c_;
    std::array<QFunction, 3> helpers_;
    std::array<Quaternion, 3> helpers_at_c_;
};

struct DqLimitOptions {
    std::vector<double> magnitudes = default_magnitude_schedule();
    int random_directions = 16;
    std::uint64_t seed = 0;
    double exists_tolerance = 1e-6;
};

/// Full record of one difference-quotient limit probe.
struct LimitDiagnostics {
    QuotientSide side = QuotientSide::Left;
    std::vector<Quaternion> directions;               // unit quaternions
    std::vector<double> magnitudes;                   // decreasing schedule
    std::vector<std::vector<Quaternion>> quotients;   // [direction][stage]
    std::vector<Quaternion> extrapolated;             // per-direction limit estimate
    Quaternion limit;                                 // mean of the estimates
    double spread = 0;                 // max pairwise distance, final-stage quotients
    double extrapolated_spread = 0;    // max pairwise distance, per-direction estimates
    double exists_tolerance = 1e-6;
    bool exists = false;               // extrapolated_spread small ⇒ direction-free limit

    /// Largest distance between any direction's stage-`stage` quotient and ref.
    double max_error_at(std::size_t stage, const Quaternion& ref) const {
        double m = 0;
        for (const auto& qs : quotients) m = std::max(m, distance(qs[stage], ref));
        return m;
    }
};

namespace detail {

inline double max_pairwise_distance(const std::vector<Quaternion>& qs) {
    double m = 0;
    for (std::size_t a = 0; a < qs.size(); ++a)
        for (std::size_t b = a + 1; b < qs.size(); ++b) m = std::max(m, distance(qs[a], qs[b]));
    return m;
}

// Deterministic unit-direction sampler (see sampling.hpp for the general RNG;
// this one is local so the header stays self-contained).
class DirectionSampler {
public:
    explicit DirectionSampler(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

    Quaternion next_unit() {
        for (;;) {
            Quaternion q{uniform_pm1(), uniform_pm1(), uniform_pm1(), uniform_pm1()};
            const double n = norm(q);
            if (n >= 0.1 && n <= 1.0) return q / n;
        }
    }

private:
    double uniform_pm1() { return 2.0 * ((next() >> 11) * 0x1.0p-53) - 1.0; }

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace detail

/// Probes the one-sided difference quotient limit at c along the eight signed
/// basis directions plus seeded random unit directions, over a decreasing
/// magnitude schedule.  Each direction's limit is estimated by one Richardson
/// step on the two smallest magnitudes; the limit exists (direction-free)
/// when those estimates agree within exists_tolerance, scale-relative.
inline LimitDiagnostics dq_limit(const SpecialFunction& F, const Vec4& c, QuotientSide side,
                                 const DqLimitOptions& opt = {}) {
    if (opt.magnitudes.size() < 2) throw std::invalid_argument("need at least two magnitudes");
    LimitDiagnostics diag;
    diag.side = side;
    diag.magnitudes = opt.magnitudes;
    diag.exists_tolerance = opt.exists_tolerance;

    for (int axis = 1; axis <= 4; ++axis) {
        diag.directions.push_back(Quaternion::unit(axis));
        diag.directions.push_back(-Quaternion::unit(axis));
    }
    detail::DirectionSampler sampler(opt.seed);
    for (int k = 0; k < opt.random_directions; ++k) diag.directions.push_back(sampler.next_unit());

    const QuotientEvaluator eval(F, c, side);
    const std::size_t stages = opt.magnitudes.size();
    std::vector<Quaternion> finals;
    for (const Quaternion& u : diag.directions) {
        std::vector<Quaternion> qs;
        qs.reserve(stages);
        for (double t : opt.magnitudes) qs.push_back(eval.quotient(u * t));
        const Quaternion rich = 2.0 * qs[stages - 1] - qs[stages - 2];
        finals.push_back(qs[stages - 1]);
        diag.extrapolated.push_back(rich);
        diag.quotients.push_back(std::move(qs));
    }

    Quaternion mean;
    for (const Quaternion& q : diag.extrapolated) mean += q;
    diag.limit = mean / double(diag.extrapolated.size());
    diag.spread = detail::max_pairwise_distance(finals);
    diag.extrapolated_spread = detail::max_pairwise_distance(diag.extrapolated);
    diag.exists = within_tol(diag.extrapolated_spread, opt.exists_tolerance, norm(diag.limit));
    return diag;
}

}  // namespace quatreg
