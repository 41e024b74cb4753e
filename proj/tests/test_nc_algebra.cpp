#include <gtest/gtest.h>

#include <cmath>

#include "ncab/nc_algebra.hpp"
#include "test_support.hpp"

using namespace ncab;
using ncab::testing::random_vec;
using ncab::testing::rel_err;
using ncab::testing::uniform;

namespace {
const ScalarField X = ScalarField::coordinate(0);
const ScalarField Y = ScalarField::coordinate(1);
const ScalarField F{[](const Vec3& p) { return std::sin(p.x) * p.y + 0.3 * p.z * p.x; }};
const ScalarField G{[](const Vec3& p) { return std::exp(0.2 * p.y) - p.x * p.x * p.z; }};
} // namespace

TEST(ThetaMatrix, StructureAndValidation) {
    const ThetaMatrix th(2.5);
    EXPECT_EQ(th(0, 1), 2.5);
    EXPECT_EQ(th(1, 0), -2.5);
    EXPECT_EQ(th(0, 0), 0.0);
    EXPECT_EQ(th(2, 1), 0.0);
    EXPECT_EQ(th.dual(), (Vec3{0, 0, 2.5}));
    EXPECT_EQ(ThetaMatrix(1.0, 1, 0).dual(), (Vec3{0, 0, -1}));
    EXPECT_EQ(ThetaMatrix(1.0, 1, 2).dual(), (Vec3{1, 0, 0}));
    EXPECT_EQ(ThetaMatrix(1.0, 2, 0).dual(), (Vec3{0, 1, 0}));
    EXPECT_THROW(ThetaMatrix(-1.0), ValidationError);
    EXPECT_THROW(ThetaMatrix(1.0, 1, 1), ValidationError);
    EXPECT_THROW(ThetaMatrix(1.0, 0, 3), ValidationError);
}

TEST(StarProduct, CoordinateCommutatorIsITheta) {
    const ThetaMatrix th(3.2e-36);
    const Complex c = star_commutator(X, Y, {4, -2, 9}, th);
    EXPECT_EQ(c.real(), 0.0);
    EXPECT_EQ(c.imag(), 3.2e-36);
    EXPECT_EQ(star_commutator(Y, X, {4, -2, 9}, th).imag(), -3.2e-36);
}

TEST(StarProduct, SelfCommutatorVanishes) {
    const ThetaMatrix th(0.7);
    EXPECT_EQ(std::abs(star_commutator(F, F, {1, 2, 3}, th)), 0.0);
}

TEST(StarProduct, CommutatorOfXSquaredAndY) {
    const ThetaMatrix th(0.01);
    const ScalarField x2{[](const Vec3& p) { return p.x * p.x; }};
    for (int n = 0; n < 20; ++n) {
        const Vec3 p = random_vec(-5.0, 5.0);
        EXPECT_LT(rel_err(star_commutator(x2, Y, p, th).imag(), 2.0 * p.x * 0.01), 1e-8);
    }
}

TEST(StarProduct, ConstantFactorGivesPlainProduct) {
    const ThetaMatrix th(0.3);
    const Vec3 p{0.5, 1.5, -2.0};
    const Complex c = star_product_first_order(F, ScalarField::constant(4.0), p, th);
    EXPECT_EQ(c.real(), F(p) * 4.0);
    EXPECT_EQ(c.imag(), 0.0);
}

TEST(StarProduct, SquareIsExactForRealFunctions) {
    const ThetaMatrix th(0.9);
    for (int n = 0; n < 50; ++n) {
        const Vec3 p = random_vec(-3.0, 3.0);
        const Complex c = star_product_first_order(G, G, p, th);
        EXPECT_EQ(c.real(), G(p) * G(p));
        EXPECT_EQ(c.imag(), 0.0);
    }
}

TEST(StarProduct, FirstOrderTermMatchesAnalyticPartials) {
    const ThetaMatrix th(0.05);
    const Vec3 p{0.7, -1.1, 0.4};
    // dF = (cos x y + 0.3 z, sin x, 0.3 x); dG = (-2xz, 0.2 exp(0.2y), -x^2)
    const double fx = std::cos(p.x) * p.y + 0.3 * p.z;
    const double fy = std::sin(p.x);
    const double gx = -2.0 * p.x * p.z;
    const double gy = 0.2 * std::exp(0.2 * p.y);
    const Complex c = star_product_first_order(F, G, p, th);
    EXPECT_EQ(c.real(), F(p) * G(p));
    EXPECT_LT(rel_err(c.imag(), 0.5 * 0.05 * (fx * gy - fy * gx)), 1e-8);
}

TEST(StarProduct, BilinearAndAntisymmetricCommutator) {
    const ThetaMatrix th(0.4);
    for (int n = 0; n < 30; ++n) {
        const Vec3 p = random_vec(-2.0, 2.0);
        const double alpha = uniform(-3.0, 3.0);
        const double beta = uniform(-3.0, 3.0);
        const ScalarField combo{[=](const Vec3& q) { return alpha * F(q) + beta * G(q); },
                                [=](const Vec3& q) { return alpha * grad_fd(F, q) + beta * grad_fd(G, q); }};
        const Complex lhs = star_product_first_order(combo, X, p, th);
        const Complex rhs = alpha * star_product_first_order(F, X, p, th) + beta * star_product_first_order(G, X, p, th);
        EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(rhs)));
        EXPECT_EQ(star_commutator(F, G, p, th), -star_commutator(G, F, p, th));
    }
}

TEST(StarProduct, CommutativeLimit) {
    const ThetaMatrix zero(0.0);
    const Vec3 p{1, 2, 3};
    const Complex c = star_product_first_order(F, G, p, zero);
    EXPECT_EQ(c.real(), F(p) * G(p));
    EXPECT_EQ(c.imag(), 0.0);
    EXPECT_EQ(std::abs(star_commutator(F, G, p, zero)), 0.0);
}

TEST(StarProduct, DomainViolation) {
    const ScalarField positive_x{[](const Vec3& p) { return std::log(p.x); }, {},
                                 [](const Vec3& p) { return p.x > 0.0; }};
    EXPECT_THROW(star_product_first_order(positive_x, X, {-1, 0, 0}, ThetaMatrix(1.0)), DomainError);
}

TEST(BoppShift, Examples) {
    const Vec3 x{1, 0, 0};
    const Vec3 mom{0, 2.0e-24, 0};
    EXPECT_EQ(bopp_shift(x, mom, ThetaMatrix(0.0)), x);
    EXPECT_EQ(bopp_shift(x, Vec3{}, ThetaMatrix(1e-30)), x);
    const double theta = 1e-30;
    const Vec3 s = bopp_shift(x, mom, ThetaMatrix(theta));
    EXPECT_LT(rel_err(s.x, 1.0 - theta * 2.0e-24 / (2.0 * default_constants.hbar)), 1e-15);
    EXPECT_EQ(s.y, 0.0);
    EXPECT_EQ(s.z, 0.0);
}

TEST(BoppShift, PreservesOutOfPlaneComponent) {
    for (int n = 0; n < 50; ++n) {
        const Vec3 x = random_vec();
        const Vec3 mom = 1e-24 * random_vec();
        EXPECT_EQ(bopp_shift(x, mom, ThetaMatrix(1e-20, 0, 1)).z, x.z);
        EXPECT_EQ(bopp_shift(x, mom, ThetaMatrix(1e-20, 1, 2)).x, x.x);
    }
}

TEST(NcKineticVector, Limits) {
    const SolenoidField s{5.0, 10.0};
    const Vec3 p{0, 8, 0};
    const Vec3 mom{1.8e-22, 0, 0};
    const double q = default_constants.e_charge;
    const Vec3 minimal = mom - q * s.vector_potential(p);
    EXPECT_EQ(nc_kinetic_vector(s, p, mom, q, ThetaMatrix(0.0)), minimal);
    EXPECT_EQ(nc_kinetic_vector(s, p, mom, 0.0, ThetaMatrix(1e-36)), mom);
    EXPECT_THROW(nc_kinetic_vector(s, {1, 1, 0}, mom, q, ThetaMatrix(1e-36)), RegionError);
}

TEST(NcKineticVector, CorrectionMatchesFiniteDifferenceOracle) {
    const SolenoidField s{5.0, 10.0};
    const Vec3 p{0, 8, 0};
    const auto& k = default_constants;
    const Vec3 mom = k.m_e * Vec3{2e8, 0, 0};
    const double q = k.e_charge;
    const ThetaMatrix th(2.15e-36);
    const Vec3 correction = nc_kinetic_shift(s, p, mom, q, th);

    // Oracle: -(q / 2 hbar) theta_lj p_l dA_i/dx_j with dA_i/dx_j from finite differences.
    const VectorField A_numeric{[&s](const Vec3& r) { return s.vector_potential(r); }, {},
                                [&s](const Vec3& r) { return s.exterior(r); }};
    const Jacobian J = jacobian_fd(A_numeric, p);
    for (int i = 0; i < 3; ++i) {
        double sum = 0.0;
        for (int l = 0; l < 3; ++l) {
            for (int j = 0; j < 3; ++j) {
                sum += th(l, j) * mom[l] * J(i, j);
            }
        }
        const double want = -q * sum / (2.0 * k.hbar);
        EXPECT_NEAR(correction[i], want, 1e-6 * std::abs(correction.x) + 1e-300) << i;
    }
    // Along x at (0, 8): dA_x/dy = B0 a^2 / (2 y^2) -> correction_x = -(q/2hbar) theta p_x dA_x/dy.
    const double analytic = -q / (2.0 * k.hbar) * th.theta() * mom.x * (10.0 * 25.0 / (2.0 * 64.0));
    EXPECT_LT(rel_err(correction.x, analytic), 1e-6);
}

TEST(NcKineticVector, ShiftIsAddedToMinimalCoupling) {
    // theta large enough that the shift is visible next to q A.
    const SolenoidField s{5.0, 10.0};
    const Vec3 p{12, -9, 1};
    const Vec3 mom{3e-22, -1e-22, 0};
    const double q = default_constants.e_charge;
    const ThetaMatrix th(1e-12);
    const Vec3 shift = nc_kinetic_shift(s, p, mom, q, th);
    EXPECT_GT(norm(shift), 1e-3 * norm(q * s.vector_potential(p)));
    EXPECT_EQ(nc_kinetic_vector(s, p, mom, q, th), mom - q * s.vector_potential(p) + shift);
}

TEST(NcIdentityChecks, AllPass) {
    for (double theta : {0.0, 2.15e-36, 1.0, 3.5e4}) {
        for (const auto& c : nc_identity_checks(ThetaMatrix(theta))) {
            EXPECT_TRUE(c.pass) << c.name << " theta=" << theta << " err=" << c.error;
        }
    }
    for (const auto& c : nc_identity_checks(ThetaMatrix(1e-30, 1, 2))) {
        EXPECT_TRUE(c.pass) << c.name;
    }
}
