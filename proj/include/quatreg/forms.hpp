#pragma once

#include <bit>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatreg/expr.hpp"
#include "quatreg/quaternion.hpp"

namespace quatreg {

/// Strictly increasing tuple of axes drawn from {1,2,3,4}, indexing a basis
/// monomial dx^{a1} ∧ ... ∧ dx^{am}.  Stored as a 4-bit set; the empty tuple
/// indexes the constant 0-form basis element.
class MultiIndex {
public:
    MultiIndex() = default;

    static MultiIndex from_mask(unsigned mask) {
        if (mask > 0xF) throw std::invalid_argument("multi-index mask must use bits 1..4 only");
        MultiIndex m;
        m.mask_ = mask;
        return m;
    }

    /// Builds from explicit axes, which must be strictly increasing.
    static MultiIndex of(std::initializer_list<int> axes) {
        unsigned mask = 0;
        int prev = 0;
        for (int a : axes) {
            if (a < 1 || a > 4) throw std::invalid_argument("multi-index axis must be 1..4");
            if (a <= prev) throw std::invalid_argument("multi-index axes must be strictly increasing");
            mask |= 1u << (a - 1);
            prev = a;
        }
        return from_mask(mask);
    }

    int degree() const { return std::popcount(mask_); }
    unsigned mask() const { return mask_; }
    bool contains(int axis) const { return (mask_ >> (axis - 1)) & 1u; }

    std::vector<int> axes() const {
        std::vector<int> out;
        for (int a = 1; a <= 4; ++a)
            if (contains(a)) out.push_back(a);
        return out;
    }

    /// Lexicographic order on the axis tuples, e.g. dx^1∧dx^4 before dx^2∧dx^3.
    friend bool operator<(const MultiIndex& x, const MultiIndex& y) {
        return x.sort_key() < y.sort_key();
    }
    friend bool operator==(const MultiIndex& x, const MultiIndex& y) { return x.mask_ == y.mask_; }

    std::string str() const {
        if (mask_ == 0) return "1";
        std::string out;
        for (int a = 1; a <= 4; ++a) {
            if (!contains(a)) continue;
            if (!out.empty()) out += "∧";
            out += "dx^" + std::to_string(a);
        }
        return out;
    }

private:
    unsigned sort_key() const {
        unsigned key = 0;
        for (int a = 1; a <= 4; ++a)
            if (contains(a)) key = (key << 3) | unsigned(a);
        key <<= 3 * (4 - degree());
        return key;
    }

    unsigned mask_ = 0;
};

/// Sign of reordering dx^A ∧ dx^B onto the canonical strictly increasing
/// monomial; 0 when A and B share an axis.
inline int wedge_sign(MultiIndex a, MultiIndex b) {
    if (a.mask() & b.mask()) return 0;
    int transpositions = 0;
    for (int bx = 1; bx <= 4; ++bx) {
        if (!b.contains(bx)) continue;
        for (int ax = bx + 1; ax <= 4; ++ax)
            if (a.contains(ax)) ++transpositions;
    }
    return transpositions % 2 == 0 ? 1 : -1;
}

/// Quaternion-valued differential form evaluated at one point: a map from
/// canonical basis monomials of one fixed degree to quaternion coefficients.
/// Degrees above 4 are representable and identically zero.
class PointForm {
public:
    explicit PointForm(int degree) : degree_(degree) {
        if (degree < 0) throw std::invalid_argument("form degree must be non-negative");
    }

    static PointForm zero(int degree) { return PointForm(degree); }

    static PointForm scalar(const Quaternion& q) {
        PointForm f(0);
        f.set(MultiIndex(), q);
        return f;
    }

    int degree() const { return degree_; }

    Quaternion coefficient(MultiIndex idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? Quaternion::zero() : it->second;
    }

    void set(MultiIndex idx, const Quaternion& q) {
        check_index(idx);
        coeffs_[idx] = q;
    }

    void add_to(MultiIndex idx, const Quaternion& q) {
        check_index(idx);
        coeffs_[idx] += q;
    }

    const std::map<MultiIndex, Quaternion>& coefficients() const { return coeffs_; }

    PointForm& operator+=(const PointForm& o) {
        check_degree(o);
        for (const auto& [idx, q] : o.coeffs_) coeffs_[idx] += q;
        return *this;
    }

    PointForm& operator-=(const PointForm& o) {
        check_degree(o);
        for (const auto& [idx, q] : o.coeffs_) coeffs_[idx] -= q;
        return *this;
    }

private:
    void check_index(MultiIndex idx) const {
        if (idx.degree() != degree_) throw std::invalid_argument("multi-index degree mismatch");
    }
    void check_degree(const PointForm& o) const {
        if (o.degree_ != degree_) throw std::invalid_argument("form degree mismatch");
    }

    int degree_;
    std::map<MultiIndex, Quaternion> coeffs_;
};

inline PointForm operator+(PointForm a, const PointForm& b) { return a += b; }
inline PointForm operator-(PointForm a, const PointForm& b) { return a -= b; }

inline PointForm operator*(PointForm a, double s) {
    PointForm r(a.degree());
    for (const auto& [idx, q] : a.coefficients()) r.set(idx, q * s);
    return r;
}
inline PointForm operator*(double s, const PointForm& a) { return a * s; }

/// Wedge product.  Coefficients multiply as quaternions with the left form's
/// coefficient on the left; a degree sum above 4 collapses to the zero form.
inline PointForm wedge(const PointForm& a, const PointForm& b) {
    PointForm r(a.degree() + b.degree());
    if (r.degree() > 4) return r;
    for (const auto& [ia, qa] : a.coefficients())
        for (const auto& [ib, qb] : b.coefficients()) {
            const int sign = wedge_sign(ia, ib);
            if (sign == 0) continue;
            r.add_to(MultiIndex::from_mask(ia.mask() | ib.mask()), (qa * qb) * double(sign));
        }
    return r;
}

inline PointForm scale_left(const Quaternion& q, const PointForm& a) {
    PointForm r(a.degree());
    for (const auto& [idx, c] : a.coefficients()) r.set(idx, q * c);
    return r;
}

inline PointForm scale_right(const PointForm& a, const Quaternion& q) {
    PointForm r(a.degree());
    for (const auto& [idx, c] : a.coefficients()) r.set(idx, c * q);
    return r;
}

inline double max_abs_coefficient(const PointForm& a) {
    double m = 0.0;
    for (const auto& [idx, q] : a.coefficients()) m = std::max(m, max_abs_coeff(q));
    return m;
}

/// Coefficient of the volume monomial dx^1∧dx^2∧dx^3∧dx^4 of a 4-form.
inline Quaternion volume_coefficient(const PointForm& a) {
    if (a.degree() != 4) throw std::invalid_argument("volume coefficient requires a 4-form");
    return a.coefficient(MultiIndex::of({1, 2, 3, 4}));
}

inline std::string to_string(const PointForm& a) {
    if (a.coefficients().empty()) return "0";
    std::string out;
    for (const auto& [idx, q] : a.coefficients()) {
        if (!out.empty()) out += "  +  ";
        out += "(" + to_string(q) + ")";
        if (idx.degree() > 0) out += " · " + idx.str();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quaternion-valued functions of x1..x4 with expression components.

/// f = f1 e1 + f2 e2 + f3 e3 + f4 e4 with each component an Expr.  When built
/// through special_shape() the generating pair (f0, f1) is retained as a tag.
class QFunction {
public:
    QFunction() : comps_{lit(0.0), lit(0.0), lit(0.0), lit(0.0)} {}

    explicit QFunction(std::array<Expr, 4> components) : comps_(std::move(components)) {}

    static QFunction constant(const Quaternion& q) {
        return QFunction({lit(q.coeff(1)), lit(q.coeff(2)), lit(q.coeff(3)), lit(q.coeff(4))});
    }

    /// The coordinate function f(x) = x1 e1 + x2 e2 + x3 e3 + x4 e4.
    static QFunction coordinate() { return QFunction({var(1), var(2), var(3), var(4)}); }

    /// Real-valued function f0 placed in the e1 component.
    static QFunction real(Expr f0) { return QFunction({std::move(f0), lit(0.0), lit(0.0), lit(0.0)}); }

    /// The special shape f = f1 e1 + x2 f0 e2 + x3 f0 e3 + x4 f0 e4.
    static QFunction special_shape(Expr f0, Expr f1) {
        QFunction f({f1, mul(var(2), f0), mul(var(3), f0), mul(var(4), f0)});
        f.shape_ = Shape{f0, f1};
        return f;
    }

    /// Component of e_k, k in 1..4.
    const Expr& component(int k) const { return comps_[k - 1]; }

    bool has_special_shape() const { return shape_.has_value(); }
    const Expr& shape_f0() const { return shape_->f0; }
    const Expr& shape_f1() const { return shape_->f1; }

    Quaternion operator()(const Vec4& p) const {
        Quaternion q;
        for (int k = 1; k <= 4; ++k) q.coeff(k) = eval_real(comps_[k - 1], p);
        return q;
    }

private:
    struct Shape {
        Expr f0, f1;
    };

    std::array<Expr, 4> comps_;
    std::optional<Shape> shape_;
};

inline QFunction operator+(const QFunction& f, const QFunction& g) {
    return QFunction({add(f.component(1), g.component(1)), add(f.component(2), g.component(2)),
                      add(f.component(3), g.component(3)), add(f.component(4), g.component(4))});
}

inline QFunction operator-(const QFunction& f, const QFunction& g) {
    return QFunction({sub(f.component(1), g.component(1)), sub(f.component(2), g.component(2)),
                      sub(f.component(3), g.component(3)), sub(f.component(4), g.component(4))});
}

inline QFunction operator-(const QFunction& f) {
    return QFunction({neg(f.component(1)), neg(f.component(2)), neg(f.component(3)), neg(f.component(4))});
}

/// Pointwise quaternion product, expanded symbolically on the components.
inline QFunction operator*(const QFunction& f, const QFunction& g) {
    const Expr &a1 = f.component(1), &a2 = f.component(2), &a3 = f.component(3), &a4 = f.component(4);
    const Expr &b1 = g.component(1), &b2 = g.component(2), &b3 = g.component(3), &b4 = g.component(4);
    return QFunction({
        sub(sub(sub(mul(a1, b1), mul(a2, b2)), mul(a3, b3)), mul(a4, b4)),
        sub(add(add(mul(a1, b2), mul(a2, b1)), mul(a3, b4)), mul(a4, b3)),
        add(add(sub(mul(a1, b3), mul(a2, b4)), mul(a3, b1)), mul(a4, b2)),
        add(sub(add(mul(a1, b4), mul(a2, b3)), mul(a3, b2)), mul(a4, b1)),
    });
}

inline QFunction scale_left(const Quaternion& q, const QFunction& f) {
    return QFunction::constant(q) * f;
}

inline QFunction scale_right(const QFunction& f, const Quaternion& q) {
    return f * QFunction::constant(q);
}

/// Componentwise x_axis-derivative, as a new QFunction.
inline QFunction partial_field(const QFunction& f, int axis) {
    return QFunction({diff(f.component(1), axis), diff(f.component(2), axis),
                      diff(f.component(3), axis), diff(f.component(4), axis)});
}

/// Column i is the quaternion ∂f/∂x_i at p.  One jet pass per component.
inline std::array<Quaternion, 4> jacobian(const QFunction& f, const Vec4& p) {
    std::array<Quaternion, 4> cols{};
    for (int k = 1; k <= 4; ++k) {
        const Jet2 jk = eval_jet(f.component(k), p);
        for (int i = 1; i <= 4; ++i) cols[i - 1].coeff(k) = jk.g[i - 1];
    }
    return cols;
}

inline Quaternion partial(const QFunction& f, int axis, const Vec4& p) {
    return jacobian(f, p)[axis - 1];
}

/// df at p: the 1-form with coefficient ∂f/∂x_i on dx^i.
inline PointForm differential(const QFunction& f, const Vec4& p) {
    PointForm r(1);
    const auto cols = jacobian(f, p);
    for (int i = 1; i <= 4; ++i) r.set(MultiIndex::of({i}), cols[i - 1]);
    return r;
}

/// Left Fueter operator: sum of e_i (∂f/∂x_i) at p.
inline Quaternion fueter_left(const QFunction& f, const Vec4& p) {
    const auto cols = jacobian(f, p);
    Quaternion r;
    for (int i = 1; i <= 4; ++i) r += Quaternion::unit(i) * cols[i - 1];
    return r;
}

/// Right Fueter operator: sum of (∂f/∂x_i) e_i at p.
inline Quaternion fueter_right(const QFunction& f, const Vec4& p) {
    const auto cols = jacobian(f, p);
    Quaternion r;
    for (int i = 1; i <= 4; ++i) r += cols[i - 1] * Quaternion::unit(i);
    return r;
}

// ---------------------------------------------------------------------------
// Differential forms with function coefficients.

/// Form of one fixed degree whose coefficients are QFunctions of x1..x4.
class FormField {
public:
    explicit FormField(int degree) : degree_(degree) {
        if (degree < 0) throw std::invalid_argument("form degree must be non-negative");
    }

    static FormField zero(int degree) { return FormField(degree); }

    static FormField scalar(const QFunction& f) {
        FormField r(0);
        r.set(MultiIndex(), f);
        return r;
    }

    int degree() const { return degree_; }

    QFunction coefficient(MultiIndex idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? QFunction() : it->second;
    }

    void set(MultiIndex idx, const QFunction& f) {
        if (idx.degree() != degree_) throw std::invalid_argument("multi-index degree mismatch");
        coeffs_.insert_or_assign(idx, f);
    }

    const std::map<MultiIndex, QFunction>& coefficients() const { return coeffs_; }

    PointForm operator()(const Vec4& p) const {
        PointForm r(degree_);
        for (const auto& [idx, f] : coeffs_) r.set(idx, f(p));
        return r;
    }

private:
    int degree_;
    std::map<MultiIndex, QFunction> coeffs_;
};

inline FormField operator+(const FormField& a, const FormField& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("form degree mismatch");
    FormField r = a;
    for (const auto& [idx, f] : b.coefficients()) r.set(idx, r.coefficient(idx) + f);
    return r;
}

/// Symbolic wedge product; coefficient products keep the left factor on the left.
inline FormField wedge(const FormField& a, const FormField& b) {
    FormField r(a.degree() + b.degree());
    if (r.degree() > 4) return r;
    for (const auto& [ia, fa] : a.coefficients())
        for (const auto& [ib, fb] : b.coefficients()) {
            const int sign = wedge_sign(ia, ib);
            if (sign == 0) continue;
            const MultiIndex target = MultiIndex::from_mask(ia.mask() | ib.mask());
            QFunction term = fa * fb;
            if (sign < 0) term = -term;
            r.set(target, r.coefficient(target) + term);
        }
    return r;
}

inline FormField scale_left(const Quaternion& q, const FormField& a) {
    FormField r(a.degree());
    for (const auto& [idx, f] : a.coefficients()) r.set(idx, scale_left(q, f));
    return r;
}

inline FormField scale_right(const FormField& a, const Quaternion& q) {
    FormField r(a.degree());
    for (const auto& [idx, f] : a.coefficients()) r.set(idx, scale_right(f, q));
    return r;
}

/// Exterior derivative, symbolically: d(f dx^I) = Σ_i (∂f/∂x_i) dx^i ∧ dx^I.
inline FormField exterior_d(const FormField& a) {
    FormField r(a.degree() + 1);
    if (r.degree() > 4) return r;
    for (const auto& [idx, f] : a.coefficients())
        for (int i = 1; i <= 4; ++i) {
            if (idx.contains(i)) continue;
            const MultiIndex di = MultiIndex::of({i});
            const int sign = wedge_sign(di, idx);
            const MultiIndex target = MultiIndex::from_mask(di.mask() | idx.mask());
            QFunction term = partial_field(f, i);
            if (sign < 0) term = -term;
            r.set(target, r.coefficient(target) + term);
        }
    return r;
}

/// Exterior derivative evaluated at p through one jet pass per coefficient.
inline PointForm exterior_d(const FormField& a, const Vec4& p) {
    PointForm r(a.degree() + 1);
    if (r.degree() > 4) return r;
    for (const auto& [idx, f] : a.coefficients()) {
        const auto cols = jacobian(f, p);
        for (int i = 1; i <= 4; ++i) {
            if (idx.contains(i)) continue;
            const MultiIndex di = MultiIndex::of({i});
            const int sign = wedge_sign(di, idx);
            r.add_to(MultiIndex::from_mask(di.mask() | idx.mask()), cols[i - 1] * double(sign));
        }
    }
    return r;
}

/// df as a field: the symbolic counterpart of differential(f, p).
inline FormField differential_field(const QFunction& f) {
    return exterior_d(FormField::scalar(f));
}

// ---------------------------------------------------------------------------
// The distinguished 3-forms and the volume form.

enum class SpecialFormKind { Dq, D0q, D1q, Volume };

/// The four distinguished constant-or-linear-coefficient forms:
///   Dq     = e1 dx^2∧dx^3∧dx^4 - e2 dx^1∧dx^3∧dx^4 + e3 dx^1∧dx^2∧dx^4 - e4 dx^1∧dx^2∧dx^3
///   D0q    = (x2+x3+x4) dx^2∧dx^3∧dx^4 + x2 dx^1∧dx^3∧dx^4 - x3 dx^1∧dx^2∧dx^4 + x4 dx^1∧dx^2∧dx^3
///   D1q    = dx^2∧dx^3∧dx^4 - dx^1∧dx^3∧dx^4 + dx^1∧dx^2∧dx^4 - dx^1∧dx^2∧dx^3
///   Volume = dx^1∧dx^2∧dx^3∧dx^4 with coefficient e1
inline FormField special_form(SpecialFormKind kind) {
    const MultiIndex m234 = MultiIndex::of({2, 3, 4});
    const MultiIndex m134 = MultiIndex::of({1, 3, 4});
    const MultiIndex m124 = MultiIndex::of({1, 2, 4});
    const MultiIndex m123 = MultiIndex::of({1, 2, 3});
    switch (kind) {
        case SpecialFormKind::Dq: {
            FormField f(3);
            f.set(m234, QFunction::constant(Quaternion::unit(1)));
            f.set(m134, QFunction::constant(-Quaternion::unit(2)));
            f.set(m124, QFunction::constant(Quaternion::unit(3)));
            f.set(m123, QFunction::constant(-Quaternion::unit(4)));
            return f;
        }
        case SpecialFormKind::D0q: {
            FormField f(3);
            f.set(m234, QFunction::real(add(add(var(2), var(3)), var(4))));
            f.set(m134, QFunction::real(var(2)));
            f.set(m124, QFunction::real(neg(var(3))));
            f.set(m123, QFunction::real(var(4)));
            return f;
        }
        case SpecialFormKind::D1q: {
            FormField f(3);
            f.set(m234, QFunction::real(lit(1.0)));
            f.set(m134, QFunction::real(lit(-1.0)));
            f.set(m124, QFunction::real(lit(1.0)));
            f.set(m123, QFunction::real(lit(-1.0)));
            return f;
        }
        case SpecialFormKind::Volume: {
            FormField f(4);
            f.set(MultiIndex::of({1, 2, 3, 4}), QFunction::constant(Quaternion::unit(1)));
            return f;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace quatreg
