#include <gtest/gtest.h>

#include <cmath>

#include "ncab/calculus.hpp"
#include "ncab/fields.hpp"
#include "test_support.hpp"

using namespace ncab;
using ncab::testing::random_exterior;
using ncab::testing::random_vec;
using ncab::testing::rel_err;

TEST(Cross, Examples) {
    EXPECT_EQ(cross(unit_x, unit_y), unit_z);
    const Vec3 u{1.5, -2.0, 0.25};
    EXPECT_EQ(cross(u, u), Vec3{});
    EXPECT_EQ(cross(Vec3{0, 0, 1}, Vec3{2, 3, 0}), (Vec3{-3, 2, 0}));
}

TEST(Cross, AntisymmetricAndOrthogonal) {
    for (int i = 0; i < 500; ++i) {
        const Vec3 u = random_vec();
        const Vec3 v = random_vec();
        const Vec3 w = cross(u, v);
        EXPECT_EQ(w, -cross(v, u));
        const double scale = norm(u) * norm(v);
        EXPECT_LE(std::abs(dot(w, u)), 8e-16 * scale * norm(u));
        EXPECT_LE(std::abs(dot(w, v)), 8e-16 * scale * norm(v));
    }
}

TEST(Vec3, RequireFinite) {
    EXPECT_THROW(require_finite(Vec3{1.0, NAN, 0.0}), DomainError);
    EXPECT_NO_THROW(require_finite(Vec3{1.0, 2.0, 3.0}));
}

TEST(GradFd, Polynomial) {
    const ScalarField f{[](const Vec3& p) { return p.x * p.x + p.y * p.y; }};
    const Vec3 g = grad_fd(f, {1, 2, 0}, 1e-4);
    EXPECT_LT(std::abs(g.x - 2.0), 2e-8);
    EXPECT_LT(std::abs(g.y - 4.0), 4e-8);
    EXPECT_LT(std::abs(g.z), 1e-8);
}

TEST(GradFd, ConstantFieldIsExactlyZero) {
    const ScalarField f = ScalarField::constant(7.25);
    EXPECT_EQ(grad_fd(f, {3, -4, 1}), Vec3{});
}

TEST(GradFd, SolenoidAxMatchesAnalytic) {
    const SolenoidField s{5.0, 10.0};
    const ScalarField ax = s.potential_field().component(0);
    ScalarField ax_numeric{ax.value, {}, ax.domain};
    const Vec3 p{30, 8, 0};
    EXPECT_LT(rel_err(grad_fd(ax_numeric, p), s.grad_Ax(p)), 1e-6);
}

TEST(GradFd, StencilOutsideDomainThrows) {
    const SolenoidField s{5.0, 10.0};
    const ScalarField ax = s.potential_field().component(0);
    EXPECT_THROW(grad_fd(ax, {5.0 + 1e-9, 0, 0}, 1e-3), DomainError);
    EXPECT_THROW(grad_fd(ax, {1.0, 0, 0}), DomainError);
    EXPECT_THROW(grad_fd(ax, {30, 8, 0}, -1.0), DomainError);
}

TEST(DivergenceFd, Examples) {
    const VectorField identity{[](const Vec3& p) { return p; }};
    for (int i = 0; i < 20; ++i) {
        EXPECT_NEAR(divergence_fd(identity, random_vec()), 3.0, 1e-8);
    }
    const SolenoidField s{5.0, 10.0};
    const Vec3 p{30, 8, 0};
    const Jacobian J = jacobian_fd(s.potential_field(), p);
    EXPECT_LE(std::abs(J.divergence()), 1e-8 * J.divergence_scale());
    EXPECT_EQ(divergence_fd(VectorField::constant({1, 2, 3}), p), 0.0);
}

TEST(CurlFd, Examples) {
    const VectorField uniform_b{[](const Vec3& p) { return 0.5 * Vec3{-p.y, p.x, 0.0}; }};
    EXPECT_LT(rel_err(curl_fd(uniform_b, {0.3, -2.0, 4.0}), unit_z), 1e-9);
    const SolenoidField s{5.0, 10.0};
    const Vec3 p{30, 8, 0};
    const Jacobian J = jacobian_fd(s.potential_field(), p);
    EXPECT_LE(norm(J.curl()), 1e-8 * J.max_abs());
    EXPECT_EQ(curl_fd(VectorField::constant({1, 2, 3}), p), Vec3{});
}

TEST(GradFd, AgreesWithEveryAnalyticSolenoidGradient) {
    const SolenoidField s{5.0, 10.0};
    const VectorField A = s.potential_field();
    for (int n = 0; n < 100; ++n) {
        const Vec3 p = random_exterior(s.a);
        const Jacobian analytic = s.potential_jacobian(p);
        for (int i = 0; i < 2; ++i) {
            ScalarField comp{A.component(i).value, {}, A.domain};
            EXPECT_LT(rel_err(grad_fd(comp, p), analytic.grad(i)), 1e-6) << "component " << i << " at " << p;
        }
    }
}

TEST(DifferentialIdentities, CurlOfGradientAndDivergenceOfHarmonicGradient) {
    // f = exp(0.3x) cos(0.3y) + x z is harmonic; its gradient is curl- and divergence-free.
    const VectorField grad_f{[](const Vec3& p) {
        const double e = std::exp(0.3 * p.x);
        return Vec3{0.3 * e * std::cos(0.3 * p.y) + p.z, -0.3 * e * std::sin(0.3 * p.y), p.x};
    }};
    for (int n = 0; n < 50; ++n) {
        const Vec3 p = random_vec(-3.0, 3.0);
        const Jacobian J = jacobian_fd(grad_f, p);
        EXPECT_LE(std::abs(J.divergence()), 1e-7 * J.max_abs());
        EXPECT_LE(norm(J.curl()), 1e-7 * J.max_abs());
    }
}

TEST(Gradient, PrefersAnalyticOverride) {
    int calls = 0;
    ScalarField f{[&calls](const Vec3& p) {
                      ++calls;
                      return p.x;
                  },
                  [](const Vec3&) { return Vec3{42, 0, 0}; }};
    EXPECT_EQ(gradient(f, {1, 1, 1}), (Vec3{42, 0, 0}));
    EXPECT_EQ(calls, 0);
}
