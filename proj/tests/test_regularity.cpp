#include <catch2/catch_amalgamated.hpp>

#include "quatreg/regularity.hpp"
#include "quatreg/sampling.hpp"

using namespace quatreg;

namespace {

SpecialFunction make(const char* f0, const char* f1) {
    return SpecialFunction{parse_expr(f0), parse_expr(f1)};
}

const SpecialFunction kSquare = make("2*x1", "x1^2-x2^2-x3^2-x4^2");
const SpecialFunction kCube =
    make("3*x1^2-(x2^2+x3^2+x4^2)", "x1^3-3*x1*(x2^2+x3^2+x4^2)");

}  // namespace

TEST_CASE("differential residuals vanish for the square map") {
    Rng rng(51);
    for (int n = 0; n < 50; ++n) {
        const Vec4 p = random_point(rng, -2, 2);
        const PdeResiduals r = pde_residuals(kSquare, p);
        CHECK(within_tol(r.max_abs(), 1e-13, r.scale));
    }
}

TEST_CASE("differential residuals catch the swapped-coordinate example") {
    const SpecialFunction F = make("x2", "0");
    const PdeResiduals r = pde_residuals(F, Vec4{0, 0, 1, 0});
    CHECK(r.r23 == -1.0);
    CHECK(r.max_abs() == 1.0);
    CHECK(r.main == 0.0);
    CHECK(check_point(F, Vec4{0, 0, 1, 0}).pde_regular == false);
}

TEST_CASE("form residuals of the square map expand term by term") {
    const Vec4 p{0.3, 0.1, -0.2, 0.4};
    const QFunction f = kSquare.induced();
    const PointForm df = differential(f, p);
    const PointForm df0 = differential(QFunction::real(kSquare.f0), p);
    const PointForm df1 = differential(QFunction::real(kSquare.f1), p);

    const Quaternion t_dq = volume_coefficient(wedge(special_form(SpecialFormKind::Dq)(p), df));
    const Quaternion t_d0q =
        2.0 * volume_coefficient(wedge(special_form(SpecialFormKind::D0q)(p), df0));
    const Quaternion t_d1q =
        2.0 * volume_coefficient(wedge(special_form(SpecialFormKind::D1q)(p), df1));

    CHECK(within_tol(distance(t_dq, Quaternion{4 * p[0], 0, 0, 0}), 1e-13, 1.0));
    CHECK(within_tol(distance(t_d0q, Quaternion{-4 * (p[1] + p[2] + p[3]), 0, 0, 0}), 1e-13, 1.0));
    const double want = -4 * p[0] + 4 * (p[1] + p[2] + p[3]);
    CHECK(within_tol(distance(t_d1q, Quaternion{want, 0, 0, 0}), 1e-13, 1.0));
    CHECK(within_tol(distance(t_dq + t_d0q + t_d1q, Quaternion::zero()), 1e-13, 1.0));

    const FormResiduals r = form_residuals(kSquare, p);
    CHECK(within_tol(max_abs_coeff(r.left), 1e-13, r.scale));
    CHECK(within_tol(max_abs_coeff(r.right), 1e-13, r.scale));
}

TEST_CASE("form residuals flag the swapped-coordinate example with the exact value") {
    const FormResiduals r = form_residuals(make("x2", "0"), Vec4{0, 0, 1, 0});
    CHECK(distance(r.left, Quaternion{0, 0, 0, -1}) <= 1e-14);
    CHECK(distance(r.right, Quaternion{0, 0, 0, -1}) <= 1e-14);
}

TEST_CASE("both residual families agree across the corpus") {
    Rng rng(52);
    for (const CorpusEntry& entry : reference_corpus()) {
        for (int n = 0; n < 25; ++n) {
            const Vec4 p = random_point_off_axes(rng);
            const ResidualReport rep = check_point(entry.fn, p);
            INFO(entry.name << " at (" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ")");
            CHECK(rep.pde_regular == entry.regular);
            CHECK(rep.form_regular == entry.regular);
        }
    }
}

TEST_CASE("helper functions have the documented structure") {
    const Vec4 c{0.4, 0.7, -0.3, 0.2};

    SECTION("pair (2,3) helper of the square map") {
        // f0 = 2 x1 depends on x1 only, so freezing any other axis gives 2 c1.
        const QFunction h = helper_function(kSquare, c, QuotientSide::Left, 4);
        const Vec4 p{1.5, -0.8, 0.6, 2.0};
        CHECK(approx_equal(h(p).coeff(4), (c[1] + c[2]) * 2 * c[0], 1e-14));
        CHECK(h(p).coeff(1) == 0.0);
        // sgn for (i,j) = (2,3) is -1: e3 component is -(-c2 2x1 + c4 2c1).
        CHECK(approx_equal(h(p).coeff(3), 2 * c[1] * p[0] - 2 * c[3] * c[0], 1e-14));
        // e2 component is  (-c3 2x1 - c4 2c1).
        CHECK(approx_equal(h(p).coeff(2), -2 * c[2] * p[0] - 2 * c[3] * c[0], 1e-14));
    }

    SECTION("the right-side helper flips the cross terms") {
        const QFunction hl = helper_function(kSquare, c, QuotientSide::Left, 3);
        const QFunction hr = helper_function(kSquare, c, QuotientSide::Right, 3);
        const Vec4 p{-0.9, 0.1, 0.5, 1.2};
        CHECK(approx_equal(hl(p).coeff(3), hr(p).coeff(3), 1e-14));  // shared e_k term
        CHECK(hl(p).coeff(1) == 0.0);
        CHECK(hr(p).coeff(1) == 0.0);
    }

    SECTION("zero f0 makes every helper structurally zero") {
        const SpecialFunction F = make("0", "x1");
        for (int index = 2; index <= 4; ++index)
            for (QuotientSide side : {QuotientSide::Left, QuotientSide::Right}) {
                const QFunction h = helper_function(F, c, side, index);
                for (int k = 1; k <= 4; ++k) CHECK(is_literal(h.component(k), 0.0));
            }
    }

    SECTION("zero anchor makes every helper structurally zero") {
        for (int index = 2; index <= 4; ++index) {
            const QFunction h = helper_function(kSquare, Vec4{}, QuotientSide::Left, index);
            for (int k = 1; k <= 4; ++k) CHECK(is_literal(h.component(k), 0.0));
        }
    }

    SECTION("invalid helper index") {
        CHECK_THROWS_AS(helper_function(kSquare, c, QuotientSide::Left, 1), std::invalid_argument);
        CHECK_THROWS_AS(helper_function(kSquare, c, QuotientSide::Left, 5), std::invalid_argument);
    }
}

TEST_CASE("corrected quotients of the square map are exact") {
    // For f(x) = x^2 the corrected numerator is dq*c + c*dq + dq*dq plus the
    // helper correction, which cancels the commutator; both quotients collapse
    // to 2c + dq with no limit needed.
    const Vec4 c{0.6, -0.2, 0.8, 0.3};
    const Quaternion cq{c[0], c[1], c[2], c[3]};
    Rng rng(53);
    for (int n = 0; n < 25; ++n) {
        const Quaternion dq = 0.05 * random_unit_quaternion(rng);
        const QuotientEvaluator left(kSquare, c, QuotientSide::Left);
        const QuotientEvaluator right(kSquare, c, QuotientSide::Right);
        const Quaternion expected = 2.0 * cq + dq;
        CHECK(within_tol(distance(left.quotient(dq), expected), 1e-12, norm(expected)));
        CHECK(within_tol(distance(right.quotient(dq), expected), 1e-12, norm(expected)));
    }
}

TEST_CASE("quotient limits exist for regular members and match the derivative") {
    const Vec4 c{0.35, -0.4, 0.25, 0.5};
    for (const auto& F : {kSquare, kCube}) {
        const Quaternion ref = derivative_value(F, c);
        for (QuotientSide side : {QuotientSide::Left, QuotientSide::Right}) {
            const LimitDiagnostics d = dq_limit(F, c, side);
            CHECK(d.exists);
            CHECK(within_tol(distance(d.limit, ref), 1e-8, norm(ref)));
            CHECK(d.extrapolated_spread <= d.spread);
            CHECK(d.directions.size() == 24);
            CHECK(d.quotients.size() == 24);
            CHECK(d.quotients[0].size() == d.magnitudes.size());
        }
    }
}

TEST_CASE("raw quotient errors halve with the magnitude for the cube map") {
    const Vec4 c{0.35, -0.4, 0.25, 0.5};
    const Quaternion ref = derivative_value(kCube, c);
    const LimitDiagnostics d = dq_limit(kCube, c, QuotientSide::Left);
    const std::size_t stages = d.magnitudes.size();
    for (std::size_t s = stages - 4; s + 1 < stages; ++s) {
        const double e0 = d.max_error_at(s, ref);
        const double e1 = d.max_error_at(s + 1, ref);
        REQUIRE(e0 > 1e-12);
        const double ratio = e1 / e0;
        CHECK(ratio > 0.3);
        CHECK(ratio < 0.7);
    }
}

TEST_CASE("quotient limits fail to exist for non-regular members") {
    for (const CorpusEntry& entry : reference_corpus()) {
        if (entry.regular) continue;
        for (QuotientSide side : {QuotientSide::Left, QuotientSide::Right}) {
            const LimitDiagnostics d = dq_limit(entry.fn, entry.witness, side);
            INFO(entry.name);
            CHECK(!d.exists);
            CHECK(d.extrapolated_spread > 0.1);
        }
    }
}

TEST_CASE("limit options are validated and the seed matters only for direction choice") {
    DqLimitOptions opt;
    opt.magnitudes = {1e-2};
    CHECK_THROWS_AS(dq_limit(kSquare, Vec4{}, QuotientSide::Left, opt), std::invalid_argument);

    DqLimitOptions a, b;
    a.seed = 7;
    b.seed = 7;
    const LimitDiagnostics da = dq_limit(kSquare, Vec4{0.1, 0.2, 0.3, 0.4}, QuotientSide::Left, a);
    const LimitDiagnostics db = dq_limit(kSquare, Vec4{0.1, 0.2, 0.3, 0.4}, QuotientSide::Left, b);
    REQUIRE(da.directions.size() == db.directions.size());
    for (std::size_t k = 0; k < da.directions.size(); ++k)
        CHECK(distance(da.directions[k], db.directions[k]) == 0.0);
}

TEST_CASE("the symbolic derivative is the pointwise x1-partial") {
    Rng rng(54);
    for (const CorpusEntry& entry : reference_corpus()) {
        if (!entry.regular) continue;
        const SpecialFunction dF = quaternion_derivative(entry.fn);
        const QFunction f = entry.fn.induced();
        const QFunction df = dF.induced();
        for (int n = 0; n < 10; ++n) {
            const Vec4 p = random_point_off_axes(rng);
            const Quaternion want = partial(f, 1, p);
            const Quaternion got = df(p);
            INFO(entry.name);
            CHECK(within_tol(distance(got, want), 1e-11, norm(want)));
            CHECK(within_tol(distance(derivative_value(entry.fn, p), want), 1e-11, norm(want)));
        }
    }
}

TEST_CASE("derivatives of regular members stay regular") {
    Rng rng(55);
    for (const CorpusEntry& entry : reference_corpus()) {
        if (!entry.regular) continue;
        const SpecialFunction dF = quaternion_derivative(entry.fn);
        for (int n = 0; n < 10; ++n) {
            const Vec4 p = random_point_off_axes(rng);
            const PdeResiduals r = pde_residuals(dF, p);
            INFO(entry.name);
            CHECK(within_tol(r.max_abs(), kPdeTolerance, r.scale));
        }
    }
}
