#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <variant>
#include <vector>

#include "ncab/errors.hpp"
#include "ncab/vec3.hpp"

namespace ncab {

/// Open straight segment traversed from `start` to `end`.
struct StraightSegment {
    Vec3 start{};
    Vec3 end{};

    StraightSegment() = default;
    StraightSegment(const Vec3& s, const Vec3& e) : start(s), end(e) { validate(); }

    void validate() const {
        require_finite(start, "segment start");
        require_finite(end, "segment end");
        if (start == end) {
            throw ValidationError("segment endpoints must differ");
        }
    }

    Vec3 point_at(double t) const { return start + t * (end - start); }
    Vec3 tangent_at(double) const { return end - start; }
    double length() const { return norm(end - start); }
    StraightSegment reversed() const { return {end, start}; }
};

/// Arc of a circle parallel to the xy-plane, swept from `angle_begin` to
/// `angle_end` (rad, counter-clockwise when angle_end > angle_begin).
struct CircularArc {
    Vec3 center{};
    double radius = 1.0;
    double angle_begin = 0.0;
    double angle_end = 2.0 * std::numbers::pi;

    CircularArc() = default;
    CircularArc(const Vec3& c, double r, double a0, double a1) : center(c), radius(r), angle_begin(a0), angle_end(a1) {
        validate();
    }

    void validate() const {
        require_finite(center, "arc center");
        if (!(radius > 0.0) || !std::isfinite(radius)) {
            throw ValidationError("radius must be positive");
        }
        if (!std::isfinite(angle_begin) || !std::isfinite(angle_end) || angle_begin == angle_end) {
            throw ValidationError("arc angle range must be finite and non-empty");
        }
    }

    double sweep() const { return angle_end - angle_begin; }
    double angle_at(double t) const { return angle_begin + t * sweep(); }

    Vec3 point_at(double t) const {
        const double phi = angle_at(t);
        return center + Vec3{radius * std::cos(phi), radius * std::sin(phi), 0.0};
    }
    Vec3 tangent_at(double t) const {
        const double phi = angle_at(t);
        return sweep() * Vec3{-radius * std::sin(phi), radius * std::cos(phi), 0.0};
    }
    double length() const { return radius * std::abs(sweep()); }
    CircularArc reversed() const { return {center, radius, angle_end, angle_begin}; }
};

/// Chain of straight segments through the vertices. Each segment gets an equal
/// share of the parameter range; at a vertex the tangent of the following
/// segment is returned.
struct Polyline {
    std::vector<Vec3> vertices;

    Polyline() = default;
    explicit Polyline(std::vector<Vec3> v) : vertices(std::move(v)) { validate(); }

    void validate() const {
        if (vertices.size() < 2) {
            throw ValidationError("polyline needs at least two vertices");
        }
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            require_finite(vertices[i], "polyline vertex");
            if (i > 0 && vertices[i] == vertices[i - 1]) {
                throw ValidationError("consecutive polyline vertices must differ");
            }
        }
    }

    std::size_t segment_count() const { return vertices.size() - 1; }
    StraightSegment segment(std::size_t i) const { return {vertices[i], vertices[i + 1]}; }

    // Segment index and local parameter for global t; right-hand at vertices.
    std::pair<std::size_t, double> locate(double t) const {
        const auto n = segment_count();
        const double s = t * static_cast<double>(n);
        auto idx = static_cast<std::size_t>(std::floor(s));
        if (idx >= n) {
            idx = n - 1;
        }
        return {idx, s - static_cast<double>(idx)};
    }

    Vec3 point_at(double t) const {
        if (t == 1.0) {
            return vertices.back();
        }
        const auto [i, u] = locate(t);
        return segment(i).point_at(u);
    }
    Vec3 tangent_at(double t) const {
        const auto [i, u] = locate(t);
        return static_cast<double>(segment_count()) * segment(i).tangent_at(u);
    }
    double length() const {
        double L = 0.0;
        for (std::size_t i = 0; i < segment_count(); ++i) {
            L += segment(i).length();
        }
        return L;
    }
    Polyline reversed() const { return Polyline(std::vector<Vec3>(vertices.rbegin(), vertices.rend())); }
};

using PathSpec = std::variant<StraightSegment, CircularArc, Polyline>;

namespace detail {
inline void check_parameter(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("path parameter must lie in [0, 1]");
    }
}
} // namespace detail

inline Vec3 point_at(const PathSpec& path, double t) {
    detail::check_parameter(t);
    return std::visit([t](const auto& p) { return p.point_at(t); }, path);
}

/// d r / d t for the normalized parameter t.
inline Vec3 tangent_at(const PathSpec& path, double t) {
    detail::check_parameter(t);
    return std::visit([t](const auto& p) { return p.tangent_at(t); }, path);
}

inline double path_length(const PathSpec& path) {
    return std::visit([](const auto& p) { return p.length(); }, path);
}

inline PathSpec reversed(const PathSpec& path) {
    return std::visit([](const auto& p) -> PathSpec { return p.reversed(); }, path);
}

/// Smooth pieces of a path; polylines split at their corners.
inline std::vector<PathSpec> smooth_pieces(const PathSpec& path) {
    if (const auto* poly = std::get_if<Polyline>(&path)) {
        std::vector<PathSpec> pieces;
        pieces.reserve(poly->segment_count());
        for (std::size_t i = 0; i < poly->segment_count(); ++i) {
            pieces.emplace_back(poly->segment(i));
        }
        return pieces;
    }
    return {path};
}

inline const char* path_name(const PathSpec& path) {
    constexpr const char* names[] = {"segment", "arc", "polyline"};
    return names[path.index()];
}

} // namespace ncab
