#include <catch2/catch_amalgamated.hpp>

#include "quatreg/forms.hpp"
#include "quatreg/sampling.hpp"

#include "oracles.hpp"

using namespace quatreg;

namespace {

double form_distance(const PointForm& a, const PointForm& b) {
    return max_abs_coefficient(a - b);
}

}  // namespace

TEST_CASE("multi-index construction and validation") {
    CHECK(MultiIndex::of({1, 3}).degree() == 2);
    CHECK(MultiIndex::of({1, 3}).contains(3));
    CHECK(!MultiIndex::of({1, 3}).contains(2));
    CHECK(MultiIndex().degree() == 0);
    CHECK(MultiIndex::of({1, 2, 3, 4}).degree() == 4);
    CHECK_THROWS_AS(MultiIndex::of({3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex::of({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex::of({0}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex::of({5}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex::from_mask(0x1F), std::invalid_argument);
}

TEST_CASE("multi-index ordering is lexicographic on the axis tuples") {
    CHECK(MultiIndex::of({1, 4}) < MultiIndex::of({2, 3}));
    CHECK(MultiIndex::of({1, 2}) < MultiIndex::of({1, 3}));
    CHECK(!(MultiIndex::of({2, 3}) < MultiIndex::of({1, 4})));
    CHECK(MultiIndex::of({1}) < MultiIndex::of({2}));
    const std::vector<int> axes = MultiIndex::of({2, 4}).axes();
    CHECK(axes == std::vector<int>{2, 4});
    CHECK(MultiIndex::of({1, 3}).str() == "dx^1∧dx^3");
}

TEST_CASE("wedge signs match permutation parity for every mask pair") {
    for (unsigned ma = 0; ma <= 0xF; ++ma)
        for (unsigned mb = 0; mb <= 0xF; ++mb) {
            const MultiIndex a = MultiIndex::from_mask(ma);
            const MultiIndex b = MultiIndex::from_mask(mb);
            INFO("masks " << ma << ", " << mb);
            CHECK(wedge_sign(a, b) == oracles::permutation_wedge_sign(a.axes(), b.axes()));
        }
}

TEST_CASE("wedge of point forms follows the coefficient order") {
    PointForm a(1), b(1);
    a.set(MultiIndex::of({1}), Quaternion::unit(2));
    b.set(MultiIndex::of({2}), Quaternion::unit(3));
    const PointForm ab = wedge(a, b);
    CHECK(distance(ab.coefficient(MultiIndex::of({1, 2})), Quaternion::unit(4)) == 0.0);

    const PointForm ba = wedge(b, a);
    CHECK(distance(ba.coefficient(MultiIndex::of({1, 2})), Quaternion::unit(4)) == 0.0);

    PointForm c(1);
    c.set(MultiIndex::of({1}), Quaternion::unit(3));
    const PointForm ac = wedge(a, c);
    CHECK(max_abs_coefficient(ac) == 0.0);
    CHECK(ac.degree() == 2);
}

TEST_CASE("wedge beyond degree four is identically zero") {
    Rng rng(41);
    auto random_3form = [&rng] {
        PointForm f(3);
        for (unsigned mask = 0; mask <= 0xF; ++mask) {
            const MultiIndex idx = MultiIndex::from_mask(mask);
            if (idx.degree() == 3) f.set(idx, random_quaternion(rng, -2, 2));
        }
        return f;
    };
    const PointForm a = wedge(random_3form(), random_3form());
    CHECK(a.degree() == 6);
    CHECK(a.coefficients().empty());
}

TEST_CASE("graded commutativity with a real factor") {
    Rng rng(42);
    for (int n = 0; n < 200; ++n) {
        const int dm = rng.uniform_int(0, 2);
        const int dn = rng.uniform_int(0, 2);
        PointForm a(dm), b(dn);
        for (unsigned mask = 0; mask <= 0xF; ++mask) {
            const MultiIndex idx = MultiIndex::from_mask(mask);
            if (idx.degree() == dm) a.set(idx, Quaternion::real(rng.uniform(-2, 2)));
            if (idx.degree() == dn) b.set(idx, random_quaternion(rng, -2, 2));
        }
        const double sign = (dm * dn) % 2 == 0 ? 1.0 : -1.0;
        CHECK(form_distance(wedge(a, b), sign * wedge(b, a)) <= 1e-12);
    }
}

TEST_CASE("left and right quaternion scaling differ as they must") {
    PointForm a(1);
    a.set(MultiIndex::of({3}), Quaternion::unit(3));
    const Quaternion q = Quaternion::unit(2);
    CHECK(distance(scale_left(q, a).coefficient(MultiIndex::of({3})), Quaternion::unit(4)) == 0.0);
    CHECK(distance(scale_right(a, q).coefficient(MultiIndex::of({3})), -Quaternion::unit(4)) == 0.0);
}

TEST_CASE("special form coefficient layout") {
    const Vec4 p{0.3, -0.7, 0.2, 0.9};
    const MultiIndex m234 = MultiIndex::of({2, 3, 4});
    const MultiIndex m134 = MultiIndex::of({1, 3, 4});
    const MultiIndex m124 = MultiIndex::of({1, 2, 4});
    const MultiIndex m123 = MultiIndex::of({1, 2, 3});

    const PointForm dq = special_form(SpecialFormKind::Dq)(p);
    CHECK(distance(dq.coefficient(m234), Quaternion::unit(1)) == 0.0);
    CHECK(distance(dq.coefficient(m134), -Quaternion::unit(2)) == 0.0);
    CHECK(distance(dq.coefficient(m124), Quaternion::unit(3)) == 0.0);
    CHECK(distance(dq.coefficient(m123), -Quaternion::unit(4)) == 0.0);

    const PointForm d0q = special_form(SpecialFormKind::D0q)(p);
    CHECK(approx_equal(d0q.coefficient(m234).coeff(1), p[1] + p[2] + p[3], 1e-15));
    CHECK(approx_equal(d0q.coefficient(m134).coeff(1), p[1], 1e-15));
    CHECK(approx_equal(d0q.coefficient(m124).coeff(1), -p[2], 1e-15));
    CHECK(approx_equal(d0q.coefficient(m123).coeff(1), p[3], 1e-15));
    CHECK(d0q.coefficient(m234).coeff(2) == 0.0);

    const PointForm d1q = special_form(SpecialFormKind::D1q)(p);
    CHECK(d1q.coefficient(m234).coeff(1) == 1.0);
    CHECK(d1q.coefficient(m134).coeff(1) == -1.0);
    CHECK(d1q.coefficient(m124).coeff(1) == 1.0);
    CHECK(d1q.coefficient(m123).coeff(1) == -1.0);

    const PointForm vol = special_form(SpecialFormKind::Volume)(p);
    CHECK(distance(volume_coefficient(vol), Quaternion::unit(1)) == 0.0);
}

TEST_CASE("function products evaluate to quaternion products") {
    Rng rng(43);
    for (int n = 0; n < 100; ++n) {
        const QFunction f = random_qfunction(rng, 2);
        const QFunction g = random_qfunction(rng, 2);
        const Vec4 p = random_point(rng, -1, 1);
        CHECK(within_tol(distance((f * g)(p), f(p) * g(p)), 1e-12, norm(f(p)) * norm(g(p))));
    }
}

TEST_CASE("special shape wiring") {
    const QFunction f = QFunction::special_shape(parse_expr("2*x1"), parse_expr("x1^2"));
    CHECK(f.has_special_shape());
    CHECK(to_string(f.shape_f0()) == "2*x1");
    const Vec4 p{0.5, 1.0, -2.0, 3.0};
    const Quaternion v = f(p);
    CHECK(approx_equal(v.coeff(1), 0.25, 1e-15));
    CHECK(approx_equal(v.coeff(2), 1.0 * 1.0, 1e-15));
    CHECK(approx_equal(v.coeff(3), -2.0 * 1.0, 1e-15));
    CHECK(approx_equal(v.coeff(4), 3.0 * 1.0, 1e-15));
    Rng rng(40);
    CHECK(!random_qfunction(rng, 1).has_special_shape());
}

TEST_CASE("jacobian matches finite differences") {
    Rng rng(44);
    for (int n = 0; n < 30; ++n) {
        const QFunction f = random_qfunction(rng, 2);
        const Vec4 p = random_point(rng, -1, 1);
        const auto cols = jacobian(f, p);
        for (int k = 1; k <= 4; ++k) {
            const Vec4 g = oracles::fd_gradient(f.component(k), p);
            for (int i = 1; i <= 4; ++i) CHECK(oracles::rel_err(cols[i - 1].coeff(k), g[i - 1]) < 1e-6);
        }
    }
}

TEST_CASE("differential agrees between the jet path and the symbolic path") {
    Rng rng(45);
    for (int n = 0; n < 50; ++n) {
        const QFunction f = random_qfunction(rng, 2);
        const Vec4 p = random_point(rng, -1, 1);
        CHECK(form_distance(differential(f, p), differential_field(f)(p)) <= 1e-10);
    }
}

TEST_CASE("exterior derivative agrees between the jet path and the symbolic path") {
    Rng rng(46);
    for (int n = 0; n < 40; ++n) {
        const int degree = rng.uniform_int(0, 3);
        const FormField a = random_form_field(rng, degree, false, 2);
        const Vec4 p = random_point(rng, -1, 1);
        CHECK(form_distance(exterior_d(a, p), exterior_d(a)(p)) <= 1e-10);
    }
}

TEST_CASE("d of d vanishes") {
    Rng rng(47);
    for (int n = 0; n < 60; ++n) {
        const int degree = rng.uniform_int(0, 2);
        const FormField a = random_form_field(rng, degree, false, 2);
        const Vec4 p = random_point(rng, -1, 1);
        CHECK(max_abs_coefficient(exterior_d(exterior_d(a))(p)) <= 1e-10);
    }
}

TEST_CASE("worked anchor: the distinguished 3-form against the coordinate function") {
    const QFunction id = QFunction::coordinate();
    const Vec4 p{0.1, -0.4, 0.8, 0.2};
    const PointForm lhs = wedge(special_form(SpecialFormKind::Dq)(p), differential(id, p));
    const Quaternion v = volume_coefficient(lhs);
    CHECK(within_tol(distance(v, Quaternion{2, 0, 0, 0}), 1e-14, 2.0));
    CHECK(within_tol(distance(fueter_left(id, p), Quaternion{-2, 0, 0, 0}), 1e-14, 2.0));
    CHECK(within_tol(distance(fueter_right(id, p), Quaternion{-2, 0, 0, 0}), 1e-14, 2.0));
}

TEST_CASE("constant functions have zero differential") {
    const QFunction c = QFunction::constant(Quaternion{1, -2, 3, -4});
    const PointForm df = differential(c, Vec4{0.5, 0.5, 0.5, 0.5});
    CHECK(max_abs_coefficient(df) == 0.0);
}

TEST_CASE("degree mismatches are rejected") {
    PointForm a(1);
    CHECK_THROWS_AS(a.set(MultiIndex::of({1, 2}), Quaternion::unit(1)), std::invalid_argument);
    CHECK_THROWS_AS(volume_coefficient(PointForm(3)), std::invalid_argument);
    CHECK_THROWS_AS(PointForm(1) + PointForm(2), std::invalid_argument);
}
