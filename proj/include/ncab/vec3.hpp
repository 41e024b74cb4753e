#pragma once

#include <cmath>
#include <ostream>

#include "ncab/errors.hpp"

namespace ncab {

/// Three-component real vector. Positions are in m; the unit of any other
/// quantity (velocity, potential, field, dipole moment) is carried by context.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    /// Component access by index 0..2.
    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& u, const Vec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

/// Right-handed cross product.
constexpr Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

inline double norm(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

/// Throws DomainError if any component is NaN or infinite.
inline const Vec3& require_finite(const Vec3& v, const char* what = "vector") {
    if (!v.finite()) {
        throw DomainError(std::string(what) + " has non-finite components");
    }
    return v;
}

inline constexpr Vec3 unit_x{1.0, 0.0, 0.0};
inline constexpr Vec3 unit_y{0.0, 1.0, 0.0};
inline constexpr Vec3 unit_z{0.0, 0.0, 1.0};

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

} // namespace ncab
