// Walkthrough: check the quaternionic square map for regularity three ways
// (first-order residual system, volume-form residuals, difference-quotient
// limits), then differentiate it and check the derivative again.

#include <iostream>

#include "quatreg/quatreg.hpp"

using namespace quatreg;

int main() {
    // q^2 written in the special shape: f0 = 2 x1, f1 = x1^2 - x2^2 - x3^2 - x4^2.
    const SpecialFunction square{parse_expr("2*x1"), parse_expr("x1^2-x2^2-x3^2-x4^2")};
    const Vec4 p{0.5, -0.3, 0.8, 0.2};

    std::cout << "f0 = " << to_string(square.f0) << "\n";
    std::cout << "f1 = " << to_string(square.f1) << "\n\n";

    const ResidualReport rep = check_point(square, p);
    std::cout << "residuals at (0.5, -0.3, 0.8, 0.2):\n";
    std::cout << "  residual-system max |r| = " << fmt_double(rep.pde.max_abs())
              << "  -> " << (rep.pde_regular ? "regular" : "non-regular") << "\n";
    std::cout << "  form residual max      = " << fmt_double(rep.forms.max_abs())
              << "  -> " << (rep.form_regular ? "regular" : "non-regular") << "\n\n";

    for (QuotientSide side : {QuotientSide::Left, QuotientSide::Right}) {
        const LimitDiagnostics d = dq_limit(square, p, side);
        std::cout << (side == QuotientSide::Left ? "left " : "right")
                  << " quotient limit: " << to_string(d.limit)
                  << "  (spread " << fmt_double(d.extrapolated_spread)
                  << ", exists: " << (d.exists ? "yes" : "no") << ")\n";
    }
    std::cout << "d/dx1 at the point:   " << to_string(derivative_value(square, p)) << "\n\n";

    const SpecialFunction deriv = quaternion_derivative(square);
    std::cout << "derivative pair: f0' = " << to_string(deriv.f0)
              << ",  f1' = " << to_string(deriv.f1) << "\n";
    const ResidualReport drep = check_point(deriv, p);
    std::cout << "derivative is " << (drep.regular() ? "regular" : "non-regular")
              << " at the same point\n";
    return 0;
}
