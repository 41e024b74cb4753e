#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <utility>

#include "ncab/errors.hpp"
#include "ncab/vec3.hpp"

namespace ncab {

using DomainPredicate = std::function<bool(const Vec3&)>;

/// Jacobian stored row-wise: rows[i] is the gradient of component i.
struct Jacobian {
    std::array<Vec3, 3> rows{};

    const Vec3& grad(int component) const { return rows[static_cast<std::size_t>(component)]; }
    double operator()(int component, int wrt) const { return rows[static_cast<std::size_t>(component)][wrt]; }

    double divergence() const { return rows[0].x + rows[1].y + rows[2].z; }
    Vec3 curl() const { return {rows[2].y - rows[1].z, rows[0].z - rows[2].x, rows[1].x - rows[0].y}; }

    /// Sum of |dF_k/dx_k|; the magnitude against which a vanishing divergence is judged.
    double divergence_scale() const { return std::abs(rows[0].x) + std::abs(rows[1].y) + std::abs(rows[2].z); }

    /// Largest absolute entry.
    double max_abs() const {
        double m = 0.0;
        for (const auto& r : rows) {
            m = std::max({m, std::abs(r.x), std::abs(r.y), std::abs(r.z)});
        }
        return m;
    }
};

/// Scalar field with an optional analytic gradient and an optional domain.
/// An empty domain predicate means "defined everywhere".
struct ScalarField {
    std::function<double(const Vec3&)> value;
    std::function<Vec3(const Vec3&)> gradient{};
    DomainPredicate domain{};

    bool contains(const Vec3& p) const { return !domain || domain(p); }

    double operator()(const Vec3& p) const {
        if (!contains(p)) {
            throw DomainError("scalar field evaluated outside its domain");
        }
        const double v = value(p);
        if (!std::isfinite(v)) {
            throw DomainError("scalar field returned a non-finite value");
        }
        return v;
    }

    static ScalarField constant(double c) {
        return {[c](const Vec3&) { return c; }, [](const Vec3&) { return Vec3{}; }};
    }

    /// The coordinate function x_k, with its exact gradient.
    static ScalarField coordinate(int k) {
        Vec3 g{};
        g[k] = 1.0;
        return {[k](const Vec3& p) { return p[k]; }, [g](const Vec3&) { return g; }};
    }
};

/// Vector field with an optional analytic Jacobian and an optional domain.
struct VectorField {
    std::function<Vec3(const Vec3&)> value;
    std::function<Jacobian(const Vec3&)> jacobian{};
    DomainPredicate domain{};

    bool contains(const Vec3& p) const { return !domain || domain(p); }

    Vec3 operator()(const Vec3& p) const {
        if (!contains(p)) {
            throw DomainError("vector field evaluated outside its domain");
        }
        return require_finite(value(p), "vector field value");
    }

    /// Component i as a scalar field, sharing this field's domain.
    ScalarField component(int i) const {
        ScalarField s{[f = *this, i](const Vec3& p) { return f(p)[i]; }, {}, domain};
        if (jacobian) {
            s.gradient = [j = jacobian, i](const Vec3& p) { return j(p).grad(i); };
        }
        return s;
    }

    static VectorField constant(const Vec3& v) {
        return {[v](const Vec3&) { return v; }, [](const Vec3&) { return Jacobian{}; }};
    }
};

/// Default finite-difference step: 1e-6 * max(1, |p|).
inline double default_fd_step(const Vec3& p) { return 1.0e-6 * std::max(1.0, norm(p)); }

namespace detail {

inline void check_stencil(const DomainPredicate& domain, const Vec3& p, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw DomainError("finite-difference step must be positive");
    }
    if (!domain) {
        return;
    }
    for (int k = 0; k < 3; ++k) {
        Vec3 dp{};
        dp[k] = h;
        if (!domain(p + dp) || !domain(p - dp)) {
            throw DomainError("finite-difference stencil leaves the field domain");
        }
    }
}

// Central difference at steps h and h/2 combined by one Richardson pass; O(h^4).
template <class Fn, class T>
T richardson_derivative(const Fn& f, const Vec3& p, int k, double h) {
    auto central = [&](double s) {
        Vec3 dp{};
        dp[k] = s;
        return (f(p + dp) - f(p - dp)) * (0.5 / s);
    };
    const T coarse = central(h);
    const T fine = central(0.5 * h);
    return (fine * 4.0 - coarse) * (1.0 / 3.0);
}

} // namespace detail

/// Gradient of f at p by Richardson-extrapolated central differences.
inline Vec3 grad_fd(const ScalarField& f, const Vec3& p, double h) {
    detail::check_stencil(f.domain, p, h);
    Vec3 g;
    for (int k = 0; k < 3; ++k) {
        g[k] = detail::richardson_derivative<decltype(f), double>(f, p, k, h);
    }
    return g;
}

inline Vec3 grad_fd(const ScalarField& f, const Vec3& p) { return grad_fd(f, p, default_fd_step(p)); }

/// Full Jacobian of F at p by finite differences.
inline Jacobian jacobian_fd(const VectorField& F, const Vec3& p, double h) {
    detail::check_stencil(F.domain, p, h);
    Jacobian J;
    for (int k = 0; k < 3; ++k) {
        const Vec3 column = detail::richardson_derivative<decltype(F), Vec3>(F, p, k, h);
        for (int i = 0; i < 3; ++i) {
            J.rows[static_cast<std::size_t>(i)][k] = column[i];
        }
    }
    return J;
}

inline Jacobian jacobian_fd(const VectorField& F, const Vec3& p) { return jacobian_fd(F, p, default_fd_step(p)); }

inline double divergence_fd(const VectorField& F, const Vec3& p, double h) { return jacobian_fd(F, p, h).divergence(); }
inline double divergence_fd(const VectorField& F, const Vec3& p) { return divergence_fd(F, p, default_fd_step(p)); }

inline Vec3 curl_fd(const VectorField& F, const Vec3& p, double h) { return jacobian_fd(F, p, h).curl(); }
inline Vec3 curl_fd(const VectorField& F, const Vec3& p) { return curl_fd(F, p, default_fd_step(p)); }

/// Analytic gradient when the field supplies one, finite differences otherwise.
inline Vec3 gradient(const ScalarField& f, const Vec3& p) {
    if (f.gradient) {
        if (!f.contains(p)) {
            throw DomainError("scalar field gradient evaluated outside its domain");
        }
        return require_finite(f.gradient(p), "gradient");
    }
    return grad_fd(f, p);
}

} // namespace ncab
