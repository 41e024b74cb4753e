#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>

#include "ncab/calculus.hpp"
#include "ncab/errors.hpp"
#include "ncab/vec3.hpp"

namespace ncab {

enum class FieldKind { electric, magnetic };

inline const char* to_string(FieldKind k) { return k == FieldKind::electric ? "electric" : "magnetic"; }

/// Infinite solenoid of radius `a` (m) along +z through the origin, interior
/// field `B0` (T). Only the exterior region rho > a is modelled.
///
/// Exterior potential in Coulomb gauge:
///   A = (B0 a^2 / 2) (-y, x, 0) / rho^2
/// so the exterior field vanishes and the circulation around the axis is the
/// enclosed flux pi a^2 B0.
struct SolenoidField {
    double a = 5.0;
    double B0 = 10.0;

    SolenoidField() = default;
    SolenoidField(double radius, double b0) : a(radius), B0(b0) { validate(); }

    void validate() const {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw ValidationError("radius must be positive");
        }
        if (!std::isfinite(B0)) {
            throw ValidationError("interior field must be finite");
        }
    }

    double flux() const { return std::numbers::pi * a * a * B0; }

    bool exterior(const Vec3& p) const { return std::hypot(p.x, p.y) > a; }

    void require_exterior(const Vec3& p) const {
        if (!exterior(p)) {
            throw RegionError("point is not exterior to the solenoid (rho <= a)");
        }
    }

    Vec3 vector_potential(const Vec3& p) const {
        require_exterior(p);
        const double k = 0.5 * B0 * a * a;
        const double rho2 = p.x * p.x + p.y * p.y;
        return {-k * p.y / rho2, k * p.x / rho2, 0.0};
    }

    /// Analytic partials dA_i/dx_j of the exterior potential.
    Jacobian potential_jacobian(const Vec3& p) const {
        require_exterior(p);
        const double k = 0.5 * B0 * a * a;
        const double rho2 = p.x * p.x + p.y * p.y;
        const double rho4 = rho2 * rho2;
        const double xy = 2.0 * k * p.x * p.y / rho4;
        const double xx_yy = k * (p.x * p.x - p.y * p.y) / rho4;
        Jacobian J;
        J.rows[0] = {xy, -xx_yy, 0.0};
        J.rows[1] = {-xx_yy, -xy, 0.0};
        return J;
    }

    /// Gradient of A_x. v x grad(A_x) with v = v x-hat gives
    /// -B0 (a^2 v / 2) (x^2 - y^2) / (x^2 + y^2)^2 z-hat.
    Vec3 grad_Ax(const Vec3& p) const { return potential_jacobian(p).grad(0); }

    /// Exterior magnetic field (identically zero).
    Vec3 magnetic_field(const Vec3& p) const {
        require_exterior(p);
        return {};
    }

    VectorField potential_field() const {
        const SolenoidField s = *this;
        return {[s](const Vec3& p) { return s.vector_potential(p); },
                [s](const Vec3& p) { return s.potential_jacobian(p); },
                [s](const Vec3& p) { return s.exterior(p); }};
    }
};

inline Vec3 solenoid_vector_potential(const SolenoidField& f, const Vec3& p) { return f.vector_potential(p); }
inline Vec3 solenoid_grad_Ax(const SolenoidField& f, const Vec3& p) { return f.grad_Ax(p); }

/// Homogeneous electric (V/m) or magnetic (T) field.
struct UniformField {
    FieldKind kind = FieldKind::electric;
    Vec3 value{};

    Vec3 at(const Vec3&) const { return value; }
};

/// Affine field value + gradient * p. Used for engineered test configurations.
struct LinearField {
    FieldKind kind = FieldKind::electric;
    Vec3 offset{};
    Jacobian gradient{};

    Vec3 at(const Vec3& p) const {
        return offset + Vec3{dot(gradient.rows[0], p), dot(gradient.rows[1], p), dot(gradient.rows[2], p)};
    }
};

/// Pair of long wires with opposite, z-proportional magnetic polarisation.
/// Potential A_T = z A_AB with A_AB the exterior potential of `inner`.
struct TkachukField {
    SolenoidField inner{};

    Vec3 vector_potential(const Vec3& p) const { return p.z * inner.vector_potential(p); }

    /// B = curl(z A_AB) = z curl(A_AB) - A_AB x z-hat.
    Vec3 magnetic_field(const Vec3& p) const {
        const Vec3 a_ab = inner.vector_potential(p);
        const Vec3 curl_ab = inner.potential_jacobian(p).curl();
        return p.z * curl_ab - cross(a_ab, unit_z);
    }

    VectorField potential_field() const {
        const TkachukField t = *this;
        return {[t](const Vec3& p) { return t.vector_potential(p); },
                [t](const Vec3& p) {
                    Jacobian J = t.inner.potential_jacobian(p);
                    const Vec3 a_ab = t.inner.vector_potential(p);
                    for (int i = 0; i < 3; ++i) {
                        auto& row = J.rows[static_cast<std::size_t>(i)];
                        row = p.z * row;
                        row.z += a_ab[i];
                    }
                    return J;
                },
                [t](const Vec3& p) { return t.inner.exterior(p); }};
    }
};

inline Vec3 tkachuk_B(const TkachukField& f, const Vec3& p) { return f.magnetic_field(p); }

/// Tagged family of field configurations.
using FieldConfig = std::variant<SolenoidField, UniformField, LinearField, TkachukField>;

/// Whether the configuration supplies an electric or magnetic field.
inline FieldKind field_kind(const FieldConfig& cfg) {
    return std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, UniformField> || std::is_same_v<T, LinearField>) {
                return f.kind;
            } else {
                return FieldKind::magnetic;
            }
        },
        cfg);
}

/// E (V/m) or B (T) at p.
inline Vec3 field_value(const FieldConfig& cfg, const Vec3& p) {
    return std::visit(
        [&p](const auto& f) -> Vec3 {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, UniformField> || std::is_same_v<T, LinearField>) {
                return f.at(p);
            } else {
                return f.magnetic_field(p);
            }
        },
        cfg);
}

inline bool field_contains(const FieldConfig& cfg, const Vec3& p) {
    if (const auto* s = std::get_if<SolenoidField>(&cfg)) {
        return s->exterior(p);
    }
    if (const auto* t = std::get_if<TkachukField>(&cfg)) {
        return t->inner.exterior(p);
    }
    return true;
}

inline VectorField as_vector_field(const FieldConfig& cfg) {
    return {[cfg](const Vec3& p) { return field_value(cfg, p); }, {},
            [cfg](const Vec3& p) { return field_contains(cfg, p); }};
}

inline const char* field_name(const FieldConfig& cfg) {
    constexpr const char* names[] = {"solenoid", "uniform", "linear", "tkachuk"};
    return names[cfg.index()];
}

} // namespace ncab
