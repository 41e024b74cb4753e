#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ncab/calculus.hpp"
#include "ncab/errors.hpp"
#include "ncab/fields.hpp"
#include "ncab/nc_algebra.hpp"
#include "ncab/paths.hpp"
#include "ncab/quadrature.hpp"

namespace ncab {

enum class DipoleKind { AC, HMW, Tkachuk };

inline const char* to_string(DipoleKind k) {
    switch (k) {
    case DipoleKind::AC:
        return "AC";
    case DipoleKind::HMW:
        return "HMW";
    case DipoleKind::Tkachuk:
        return "Tkachuk";
    }
    return "?";
}

/// Neutral particle with a fixed lab-frame dipole moving along a path.
/// AC: magnetic moment (A m^2) in an electric field.
/// HMW / Tkachuk: electric dipole (C m) in a magnetic field.
struct DipoleConfig {
    std::string name;
    DipoleKind kind = DipoleKind::AC;
    Vec3 dipole{};
    FieldConfig field{};
    PathSpec path{};
    double mass = 1.0;   // kg
    double speed = 1.0;  // m/s

    void validate() const {
        require_finite(dipole, "dipole moment");
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw ValidationError("mass must be positive");
        }
        if (!(speed >= 0.0) || !std::isfinite(speed)) {
            throw ValidationError("speed must be non-negative");
        }
        const FieldKind want = kind == DipoleKind::AC ? FieldKind::electric : FieldKind::magnetic;
        if (field_kind(field) != want) {
            throw ValidationError(std::string(to_string(kind)) + " configuration needs a " + to_string(want) +
                                  " field");
        }
        if (kind == DipoleKind::Tkachuk && !std::holds_alternative<TkachukField>(field)) {
            throw ValidationError("Tkachuk configuration needs the dual-wire field");
        }
    }

    /// Sign of the velocity term; the quadratic term carries the opposite sign.
    double velocity_sign() const { return kind == DipoleKind::AC ? 1.0 : -1.0; }
};

/// G = m x E (AC) or d x B (HMW, Tkachuk).
inline Vec3 interaction_vector(const DipoleConfig& cfg, const Vec3& p) {
    return cross(cfg.dipole, field_value(cfg.field, p));
}

inline VectorField interaction_field(const DipoleConfig& cfg) {
    return {[cfg](const Vec3& p) { return interaction_vector(cfg, p); }, {},
            [cfg](const Vec3& p) { return field_contains(cfg.field, p); }};
}

/// Relative finite-difference step used for the nullity checks.
inline constexpr double nullity_fd_step = 1.0e-3;

inline double nullity_step(const Vec3& p) { return nullity_fd_step * std::max(1.0, norm(p)); }

struct DivergenceSample {
    Vec3 point{};
    double divergence = 0.0;
    double scale = 0.0;  // largest |dG_i/dx_j|
    double scaled() const { return std::abs(divergence) / std::max(scale, 1e-30); }
};

inline DivergenceSample divergence_of_interaction(const DipoleConfig& cfg, const Vec3& p, double h) {
    const Jacobian J = jacobian_fd(interaction_field(cfg), p, h);
    return {p, J.divergence(), J.max_abs()};
}

inline DivergenceSample divergence_of_interaction(const DipoleConfig& cfg, const Vec3& p) {
    return divergence_of_interaction(cfg, p, nullity_step(p));
}

struct NcTermPair {
    double velocity = 0.0;
    double quadratic = 0.0;
};

/// NC terms of the dipole phase under both readings of the v x div(G) notation,
/// with the coefficient of i reported (the i is dropped).
///
/// divergence reading: the scalar D = div G multiplies the bracket,
///   velocity  = s (m/2) integral D theta . (v x dr)
///   quadratic = -s (m/2) integral D theta . (G x dr)
/// gradient reading: the structure of the charged-particle NC phase with G for A,
///   velocity  = s (m/2) sum_i integral theta . (v x grad G_i) dr_i
///   quadratic = -s (m/2) sum_i integral theta . (G x grad G_i) dr_i
/// with s = +1 for AC and -1 for HMW / Tkachuk.
///
/// `divergence_envelope` holds the same divergence-reading integrals with D
/// replaced by the local derivative scale and every product by its magnitude;
/// it is the yardstick for "vanishes".
struct DipoleNcTerms {
    NcTermPair divergence_reading;
    NcTermPair gradient_reading;
    NcTermPair divergence_envelope;
};

inline DipoleNcTerms nc_dipole_terms(const DipoleConfig& cfg, const ThetaMatrix& th,
                                     const QuadratureOptions& opt = {}) {
    cfg.validate();
    const VectorField G = interaction_field(cfg);
    const Vec3 theta_vec = th.dual();
    const double coeff = 0.5 * cfg.mass * cfg.velocity_sign();

    auto velocity_at = [&cfg](const Vec3& dr) {
        const double len = norm(dr);
        return len > 0.0 ? (cfg.speed / len) * dr : Vec3{};
    };

    auto envelope = [&](bool quadratic) {
        return path_integral(
                   cfg.path,
                   [&](const Vec3& p, const Vec3& dr) {
                       const Jacobian J = jacobian_fd(G, p, nullity_step(p));
                       const double mag = quadratic ? norm(G(p)) : cfg.speed;
                       return J.max_abs() * th.theta() * mag * norm(dr);
                   },
                   opt)
            .value;
    };

    DipoleNcTerms out;
    out.divergence_envelope = {std::abs(coeff) * envelope(false), std::abs(coeff) * envelope(true)};

    // D is a difference of nearly equal numbers; judge convergence against the envelope.
    auto div_opt = [&opt](double env) {
        QuadratureOptions o = opt;
        o.abs_tol = std::max(opt.abs_tol, 1e-13 * env);
        return o;
    };

    out.divergence_reading.velocity =
        coeff * path_integral(
                    cfg.path,
                    [&](const Vec3& p, const Vec3& dr) {
                        const double D = divergence_fd(G, p, nullity_step(p));
                        return D == 0.0 ? 0.0 : D * dot(theta_vec, cross(velocity_at(dr), dr));
                    },
                    div_opt(out.divergence_envelope.velocity / std::max(std::abs(coeff), 1e-300)))
                    .value;
    out.divergence_reading.quadratic =
        -coeff * path_integral(
                     cfg.path,
                     [&](const Vec3& p, const Vec3& dr) {
                         const double D = divergence_fd(G, p, nullity_step(p));
                         return D == 0.0 ? 0.0 : D * dot(theta_vec, cross(G(p), dr));
                     },
                     div_opt(out.divergence_envelope.quadratic / std::max(std::abs(coeff), 1e-300)))
                     .value;

    out.gradient_reading.velocity =
        coeff * path_integral(
                    cfg.path,
                    [&](const Vec3& p, const Vec3& dr) {
                        const Jacobian J = jacobian_fd(G, p, nullity_step(p));
                        const Vec3 v = velocity_at(dr);
                        double s = 0.0;
                        for (int i = 0; i < 3; ++i) {
                            s += dot(theta_vec, cross(v, J.grad(i))) * dr[i];
                        }
                        return s;
                    },
                    opt)
                    .value;
    out.gradient_reading.quadratic =
        -coeff * path_integral(
                     cfg.path,
                     [&](const Vec3& p, const Vec3& dr) {
                         const Jacobian J = jacobian_fd(G, p, nullity_step(p));
                         const Vec3 g = G(p);
                         double s = 0.0;
                         for (int i = 0; i < 3; ++i) {
                             s += dot(theta_vec, cross(g, J.grad(i))) * dr[i];
                         }
                         return s;
                     },
                     opt)
                     .value;
    return out;
}

struct NullityReport {
    std::string name;
    DipoleKind kind = DipoleKind::AC;
    std::vector<DivergenceSample> samples;
    double max_scaled_divergence = 0.0;
    DipoleNcTerms terms;
    double scaled_velocity = 0.0;   // |divergence-reading velocity| / envelope
    double scaled_quadratic = 0.0;  // |divergence-reading quadratic| / envelope
    double tolerance = 1e-10;
    bool null = false;

    const char* verdict() const { return null ? "null" : "not null"; }
};

struct NullityOptions {
    std::size_t samples = 33;
    double tolerance = 1e-10;
    QuadratureOptions quadrature{};
};

/// Samples div G along the path and evaluates both NC term readings. The
/// configuration is "null" when every scaled divergence sample and both
/// scaled divergence-reading integrals are within tolerance.
inline NullityReport nullity_report(const DipoleConfig& cfg, const ThetaMatrix& th, const NullityOptions& opt = {}) {
    cfg.validate();
    NullityReport rep;
    rep.name = cfg.name;
    rep.kind = cfg.kind;
    rep.tolerance = opt.tolerance;
    const std::size_t n = std::max<std::size_t>(opt.samples, 2);
    for (std::size_t s = 0; s < n; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(n - 1);
        auto sample = divergence_of_interaction(cfg, point_at(cfg.path, t));
        rep.max_scaled_divergence = std::max(rep.max_scaled_divergence, sample.scaled());
        rep.samples.push_back(sample);
    }
    rep.terms = nc_dipole_terms(cfg, th, opt.quadrature);
    auto scaled = [](double value, double env) { return value == 0.0 ? 0.0 : std::abs(value) / std::max(env, 1e-300); };
    rep.scaled_velocity = scaled(rep.terms.divergence_reading.velocity, rep.terms.divergence_envelope.velocity);
    rep.scaled_quadratic = scaled(rep.terms.divergence_reading.quadratic, rep.terms.divergence_envelope.quadratic);
    rep.null = rep.max_scaled_divergence <= opt.tolerance && rep.scaled_velocity <= opt.tolerance &&
               rep.scaled_quadratic <= opt.tolerance;
    return rep;
}

/// The three open-path configurations: a magnetic moment perpendicular to a
/// capacitor field (Sangster), an electric dipole perpendicular to a uniform
/// magnetic field (Lepoutre), and an axial electric dipole in the midplane of
/// the dual-wire field (Tkachuk). Moments, masses and speeds are
/// representative magnitudes; the verdicts do not depend on them.
inline std::vector<DipoleConfig> reference_dipole_configs(double a = 5.0, double B0 = 10.0, double x0 = 30.0,
                                                          double y0 = 8.0) {
    constexpr double bohr_magneton = 9.2740100783e-24;  // A m^2
    constexpr double amu = 1.66053906660e-27;           // kg
    constexpr double debye = 3.33564e-30;               // C m

    DipoleConfig sangster;
    sangster.name = "Sangster AC";
    sangster.kind = DipoleKind::AC;
    sangster.dipole = {bohr_magneton, 0.0, 0.0};
    sangster.field = UniformField{FieldKind::electric, {0.0, 3.0e6, 0.0}};
    sangster.path = StraightSegment{{0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}};
    sangster.mass = 223.0 * amu;
    sangster.speed = 200.0;

    DipoleConfig lepoutre;
    lepoutre.name = "Lepoutre HMW";
    lepoutre.kind = DipoleKind::HMW;
    lepoutre.dipole = {0.0, 1.0e-5 * debye, 0.0};
    lepoutre.field = UniformField{FieldKind::magnetic, {0.0, 0.0, 1.4e-2}};
    lepoutre.path = StraightSegment{{0.0, 0.0, 0.0}, {0.6, 0.0, 0.0}};
    lepoutre.mass = 7.016 * amu;
    lepoutre.speed = 1065.0;

    DipoleConfig tkachuk;
    tkachuk.name = "Tkachuk dual wire";
    tkachuk.kind = DipoleKind::Tkachuk;
    tkachuk.dipole = {0.0, 0.0, 1.0e-5 * debye};
    tkachuk.field = TkachukField{SolenoidField{a, B0}};
    tkachuk.path = StraightSegment{{-x0, y0, 0.0}, {x0, y0, 0.0}};
    tkachuk.mass = 7.016 * amu;
    tkachuk.speed = 1065.0;

    return {sangster, lepoutre, tkachuk};
}

} // namespace ncab
