#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ncab/fields.hpp"
#include "ncab/quadrature.hpp"
#include "test_support.hpp"

using namespace ncab;
using ncab::testing::random_exterior;
using ncab::testing::rel_err;

namespace {
const SolenoidField reference_solenoid{5.0, 10.0};
}

TEST(SolenoidField, Validation) {
    EXPECT_THROW(SolenoidField(0.0, 1.0), ValidationError);
    EXPECT_THROW(SolenoidField(-1.0, 1.0), ValidationError);
    EXPECT_THROW(SolenoidField(1.0, INFINITY), ValidationError);
    EXPECT_DOUBLE_EQ(reference_solenoid.flux(), std::numbers::pi * 250.0);
}

TEST(SolenoidVectorPotential, Examples) {
    const Vec3 a0 = solenoid_vector_potential(reference_solenoid, {0, 8, 0});
    EXPECT_DOUBLE_EQ(a0.x, -15.625);
    EXPECT_EQ(a0.y, 0.0);
    const Vec3 a1 = solenoid_vector_potential(reference_solenoid, {30, 8, 0});
    EXPECT_LT(rel_err(a1.x, -1.0373443983402490), 1e-14);  // -125 * 8 / 964
    EXPECT_EQ(solenoid_vector_potential(reference_solenoid, {-12, 0, 3}).x, 0.0);
}

TEST(SolenoidVectorPotential, InteriorIsRejected) {
    EXPECT_THROW(solenoid_vector_potential(reference_solenoid, {1, 1, 0}), RegionError);
    EXPECT_THROW(solenoid_vector_potential(reference_solenoid, {5, 0, 0}), RegionError);
    EXPECT_THROW(reference_solenoid.grad_Ax({0, 0, 0}), RegionError);
}

TEST(SolenoidGradAx, KineticCrossTerm) {
    const double v = 2.0e8;
    const Vec3 vel{v, 0, 0};
    const Vec3 at_axis = cross(vel, solenoid_grad_Ax(reference_solenoid, {0, 8, 0}));
    EXPECT_LT(rel_err(at_axis.z, 1.953125 * v), 1e-14);  // B0 a^2 v / (2 y^2)
    EXPECT_EQ(at_axis.x, 0.0);
    EXPECT_EQ(at_axis.y, 0.0);
    EXPECT_EQ(cross(vel, solenoid_grad_Ax(reference_solenoid, {9, 9, 0})).z, 0.0);
}

TEST(SolenoidGradAx, QuadraticCrossTerm) {
    const Vec3 p{0, 8, 0};
    const Vec3 t = cross(reference_solenoid.vector_potential(p), reference_solenoid.grad_Ax(p));
    EXPECT_LT(rel_err(t.z, -30.517578125), 1e-14);  // -(1/4) B0^2 a^4 * 8 / 8^4
}

TEST(SolenoidGradAx, CrossTermsMatchClosedFormsEverywhere) {
    const double B0 = reference_solenoid.B0;
    const double a = reference_solenoid.a;
    for (int n = 0; n < 100; ++n) {
        const Vec3 p = random_exterior(a);
        const double rho2 = p.x * p.x + p.y * p.y;
        const double kinetic = -B0 * a * a / 2.0 * (p.x * p.x - p.y * p.y) / (rho2 * rho2);
        const double quadratic = -0.25 * B0 * B0 * std::pow(a, 4) * p.y / (rho2 * rho2);
        const Vec3 g = reference_solenoid.grad_Ax(p);
        EXPECT_NEAR(cross(unit_x, g).z, kinetic, 1e-12 * std::abs(B0 * a * a / rho2));
        EXPECT_NEAR(cross(reference_solenoid.vector_potential(p), g).z, quadratic,
                    1e-12 * B0 * B0 * std::pow(a, 4) / std::pow(rho2, 1.5));
    }
}

TEST(SolenoidField, CoulombGaugeAndVanishingExteriorField) {
    const VectorField A = reference_solenoid.potential_field();
    for (int n = 0; n < 100; ++n) {
        const Vec3 p = random_exterior(reference_solenoid.a);
        const Jacobian J = jacobian_fd(A, p);
        EXPECT_LE(std::abs(J.divergence()), 1e-8 * J.max_abs());
        EXPECT_LE(norm(J.curl()), 1e-8 * J.max_abs());
        const Jacobian exact = reference_solenoid.potential_jacobian(p);
        EXPECT_EQ(exact.curl(), Vec3{});
        EXPECT_LE(std::abs(exact.divergence()), 1e-16 * exact.max_abs());
    }
}

TEST(SolenoidField, CirculationEqualsFlux) {
    for (double r : {5.5, 10.0, 37.0}) {
        const CircularArc circle({0, 0, 0}, r, 0.0, 2.0 * std::numbers::pi);
        const double circ = line_integral(reference_solenoid.potential_field(), circle).value;
        EXPECT_LT(rel_err(circ, reference_solenoid.flux()), 1e-10) << r;
    }
    // Off-centre loop that still encloses the solenoid.
    const CircularArc shifted({2, -1, 0}, 20.0, 0.0, 2.0 * std::numbers::pi);
    EXPECT_LT(rel_err(line_integral(reference_solenoid.potential_field(), shifted).value, reference_solenoid.flux()), 1e-10);
    // Loop that does not enclose it.
    const CircularArc outside({40, 0, 0}, 10.0, 0.0, 2.0 * std::numbers::pi);
    EXPECT_NEAR(line_integral(reference_solenoid.potential_field(), outside).value, 0.0, 1e-10 * reference_solenoid.flux());
}

TEST(TkachukB, MidplaneValue) {
    const TkachukField t{reference_solenoid};
    const Vec3 p{30, 8, 0};
    const Vec3 expected = -cross(reference_solenoid.vector_potential(p), unit_z);
    EXPECT_EQ(tkachuk_B(t, p), expected);
}

TEST(TkachukB, AgreesWithCurlOfPotential) {
    const TkachukField t{reference_solenoid};
    const VectorField AT = t.potential_field();
    for (int n = 0; n < 50; ++n) {
        const Vec3 p = random_exterior(reference_solenoid.a);
        EXPECT_LT(rel_err(curl_fd(AT, p), tkachuk_B(t, p)), 1e-6) << p;
        EXPECT_LT(rel_err(AT.jacobian(p).curl(), tkachuk_B(t, p)), 1e-12) << p;
    }
}

TEST(TkachukB, ZTermVanishesOutsideAndFieldDecays) {
    const TkachukField t{reference_solenoid};
    const Vec3 mid{12, -7, 0};
    const Vec3 lifted{12, -7, 3.5};
    EXPECT_EQ(tkachuk_B(t, lifted), tkachuk_B(t, mid));
    // in the midplane |B| = |A_AB| = (B0 a^2 / 2) / rho
    EXPECT_LT(rel_err(norm(tkachuk_B(t, {1e6, 0, 0})), 125.0 / 1e6), 1e-12);
    EXPECT_GT(norm(tkachuk_B(t, {10, 0, 0})), norm(tkachuk_B(t, {100, 0, 0})));
    EXPECT_THROW(tkachuk_B(t, {0, 0, 0}), RegionError);
}

TEST(FieldConfig, KindsAndValues) {
    const FieldConfig e = UniformField{FieldKind::electric, {0, 3, 0}};
    const FieldConfig b = UniformField{FieldKind::magnetic, {0, 0, 1}};
    const FieldConfig tk = TkachukField{reference_solenoid};
    EXPECT_EQ(field_kind(e), FieldKind::electric);
    EXPECT_EQ(field_kind(b), FieldKind::magnetic);
    EXPECT_EQ(field_kind(tk), FieldKind::magnetic);
    EXPECT_EQ(field_kind(FieldConfig{reference_solenoid}), FieldKind::magnetic);
    EXPECT_EQ(field_value(e, {100, 2, 3}), (Vec3{0, 3, 0}));
    EXPECT_EQ(field_value(FieldConfig{reference_solenoid}, {10, 0, 0}), Vec3{});
    EXPECT_FALSE(field_contains(tk, {1, 0, 0}));

    LinearField lin{FieldKind::electric, {1, 0, 0}, {}};
    lin.gradient.rows[1] = {0, 0, 2};
    EXPECT_EQ(lin.at({5, 5, 3}), (Vec3{1, 6, 0}));
}
