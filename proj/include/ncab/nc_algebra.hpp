#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ncab/calculus.hpp"
#include "ncab/errors.hpp"
#include "ncab/fields.hpp"
#include "ncab/units.hpp"
#include "ncab/vec3.hpp"

namespace ncab {

using Complex = std::complex<double>;

/// Antisymmetric noncommutativity matrix with a single plane (i, j):
/// theta_ij = +theta, theta_ji = -theta, all other entries zero.
/// theta is in m^2.
class ThetaMatrix {
  public:
    ThetaMatrix() = default;
    explicit ThetaMatrix(double theta, int i = 0, int j = 1) : theta_(theta), i_(i), j_(j) {
        if (!(theta >= 0.0) || !std::isfinite(theta)) {
            throw ValidationError("theta must be finite and non-negative");
        }
        if (i < 0 || i > 2 || j < 0 || j > 2 || i == j) {
            throw ValidationError("theta plane must be two distinct axes in 0..2");
        }
    }

    double theta() const { return theta_; }
    int first() const { return i_; }
    int second() const { return j_; }

    double operator()(int r, int c) const {
        if (r == i_ && c == j_) {
            return theta_;
        }
        if (r == j_ && c == i_) {
            return -theta_;
        }
        return 0.0;
    }

    /// Dual vector with theta_ij = eps_ijk theta_k; theta z-hat for the xy-plane.
    Vec3 dual() const {
        Vec3 v{};
        const int k = 3 - i_ - j_;
        // (i, j, k) cyclic -> +1
        const bool even = (i_ + 1) % 3 == j_;
        v[k] = even ? theta_ : -theta_;
        return v;
    }

    /// sum_ij theta_ij u_i w_j.
    double contract(const Vec3& u, const Vec3& w) const { return theta_ * (u[i_] * w[j_] - u[j_] * w[i_]); }

    ThetaMatrix scaled(double s) const { return ThetaMatrix(theta_ * s, i_, j_); }

  private:
    double theta_ = 0.0;
    int i_ = 0;
    int j_ = 1;
};

/// f*g = f g + (i/2) theta_ij d_i f d_j g, truncated at first order in theta.
/// Uses analytic gradients when the fields provide them.
inline Complex star_product_first_order(const ScalarField& f, const ScalarField& g, const Vec3& p,
                                        const ThetaMatrix& th) {
    const double fv = f(p);
    const double gv = g(p);
    const Vec3 df = gradient(f, p);
    const Vec3 dg = gradient(g, p);
    return {fv * gv, 0.5 * th.contract(df, dg)};
}

/// f*g - g*f at first order.
inline Complex star_commutator(const ScalarField& f, const ScalarField& g, const Vec3& p, const ThetaMatrix& th) {
    return star_product_first_order(f, g, p, th) - star_product_first_order(g, f, p, th);
}

/// x^_i = x_i - theta_ij p_j / (2 hbar). `momentum` in kg m/s.
inline Vec3 bopp_shift(const Vec3& x, const Vec3& momentum, const ThetaMatrix& th,
                       const PhysicalConstants& k = default_constants) {
    Vec3 shifted = x;
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j) {
            s += th(i, j) * momentum[j];
        }
        shifted[i] -= s / (2.0 * k.hbar);
    }
    return shifted;
}

/// The theta term -(q / 2 hbar) theta_lj p_l d_j A_i of the shifted kinetic
/// vector: minus q times the first-order change of A at the Bopp-shifted
/// position. hbar is explicit because everything is in SI. At realistic theta
/// it is far below the resolution of p - qA, hence a separate function.
inline Vec3 nc_kinetic_shift(const VectorField& potential, const Vec3& p, const Vec3& momentum, double charge,
                             const ThetaMatrix& th, const PhysicalConstants& k = default_constants) {
    if (!potential.contains(p)) {
        throw RegionError("potential evaluated outside its domain");
    }
    const Jacobian J = potential.jacobian ? potential.jacobian(p) : jacobian_fd(potential, p);
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        out[i] = -charge * th.contract(momentum, J.grad(i)) / (2.0 * k.hbar);
    }
    return out;
}

/// NC-shifted kinetic vector p_i - q A_i - (q / 2 hbar) theta_lj p_l d_j A_i.
/// `potential` supplies A (T m); its analytic Jacobian is used when present.
inline Vec3 nc_kinetic_vector(const VectorField& potential, const Vec3& p, const Vec3& momentum, double charge,
                              const ThetaMatrix& th, const PhysicalConstants& k = default_constants) {
    const Vec3 shift = nc_kinetic_shift(potential, p, momentum, charge, th, k);
    return momentum - charge * potential(p) + shift;
}

inline Vec3 nc_kinetic_shift(const SolenoidField& field, const Vec3& p, const Vec3& momentum, double charge,
                             const ThetaMatrix& th, const PhysicalConstants& k = default_constants) {
    return nc_kinetic_shift(field.potential_field(), p, momentum, charge, th, k);
}

inline Vec3 nc_kinetic_vector(const SolenoidField& field, const Vec3& p, const Vec3& momentum, double charge,
                              const ThetaMatrix& th, const PhysicalConstants& k = default_constants) {
    return nc_kinetic_vector(field.potential_field(), p, momentum, charge, th, k);
}

struct IdentityCheck {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double error = 0.0;      // |value - expected|, relative when `relative`
    double tolerance = 0.0;
    bool relative = false;
    bool pass = false;
};

/// Star-product and Bopp-shift identities at a fixed probe point, evaluated
/// for the given theta (a unit theta is used when theta is zero so the
/// checks are not vacuous).
inline std::vector<IdentityCheck> nc_identity_checks(const ThetaMatrix& th_in,
                                                     const PhysicalConstants& k = default_constants) {
    const ThetaMatrix th = th_in.theta() > 0.0 ? th_in : ThetaMatrix(1.0, th_in.first(), th_in.second());
    const double theta = th.theta();
    const Vec3 p{1.7, -0.6, 0.4};
    const ScalarField x = ScalarField::coordinate(th.first());
    const ScalarField y = ScalarField::coordinate(th.second());
    const ScalarField f{[](const Vec3& q) { return q.x * q.x * q.y + std::sin(q.z) + 0.5 * q.y * q.z; }};
    const ScalarField x_sq{[i = th.first()](const Vec3& q) { return q[i] * q[i]; }};

    std::vector<IdentityCheck> out;
    auto exact = [&out](std::string name, double value, double expected) {
        const double err = std::abs(value - expected);
        out.push_back({std::move(name), value, expected, err, 0.0, false, err == 0.0});
    };
    auto close = [&out](std::string name, double value, double expected, double tol) {
        const double err = std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
        out.push_back({std::move(name), value, expected, err, tol, true, err <= tol});
    };

    const Complex cxy = star_commutator(x, y, p, th);
    exact("[x,y]* imaginary part = theta", cxy.imag(), theta);
    exact("[x,y]* real part = 0", cxy.real(), 0.0);
    exact("[x,x]* = 0", std::abs(star_commutator(x, x, p, th)), 0.0);
    const Complex ff = star_product_first_order(f, f, p, th);
    exact("f*f real part = f^2", ff.real(), f(p) * f(p));
    exact("f*f imaginary part = 0", ff.imag(), 0.0);
    const Complex fc = star_product_first_order(f, ScalarField::constant(2.5), p, th);
    exact("f*const = 2.5 f", fc.real(), 2.5 * f(p));
    exact("f*const imaginary part = 0", fc.imag(), 0.0);
    exact("[f,x]* + [x,f]* = 0", std::abs(star_commutator(f, x, p, th) + star_commutator(x, f, p, th)), 0.0);
    close("[x^2,y]* = 2 x theta i", star_commutator(x_sq, y, p, th).imag(), 2.0 * p[th.first()] * theta, 1e-8);

    const Vec3 mom{3.0e-24, -1.1e-24, 0.5e-24};
    exact("bopp shift at theta = 0 is identity", norm(bopp_shift(p, mom, ThetaMatrix(0.0), k) - p), 0.0);
    exact("bopp shift at p = 0 is identity", norm(bopp_shift(p, Vec3{}, th, k) - p), 0.0);
    const int out_axis = 3 - th.first() - th.second();
    exact("bopp shift keeps the out-of-plane component", bopp_shift(p, mom, th, k)[out_axis], p[out_axis]);
    const double shift = bopp_shift(Vec3{}, mom, th, k)[th.first()];
    close("bopp shift in-plane = -theta p_j / 2 hbar", shift, -theta * mom[th.second()] / (2.0 * k.hbar), 1e-12);
    return out;
}

} // namespace ncab
