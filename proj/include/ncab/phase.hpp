#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ncab/errors.hpp"
#include "ncab/fields.hpp"
#include "ncab/nc_algebra.hpp"
#include "ncab/paths.hpp"
#include "ncab/quadrature.hpp"
#include "ncab/units.hpp"

namespace ncab {

/// Charged particle moving at constant speed along its path.
struct Particle {
    double mass = default_constants.m_e;         // kg
    double charge = default_constants.e_charge;  // C
    double speed = 2.0e8;                        // m/s

    void validate(const PhysicalConstants& k = default_constants) const {
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw ValidationError("mass must be positive");
        }
        if (!std::isfinite(charge)) {
            throw ValidationError("charge must be finite");
        }
        if (!(speed >= 0.0) || !(speed < k.c)) {
            throw ValidationError("speed must lie in [0, c)");
        }
    }

    static Particle electron(double speed, const PhysicalConstants& k = default_constants) {
        return {k.m_e, k.e_charge, speed};
    }
};

/// Open-path experiment: beam along y = y0 from x = -x0 to x = +x0 beside a
/// solenoid of radius a and interior field B0. Defaults are the reference
/// configuration (a = 5 m, x0 = 30 m, y0 = 8 m, B0 = 10 T, v = 2e8 m/s,
/// epsilon = 1e-4 rad).
struct ExperimentParams {
    double a = 5.0;        // m
    double x0 = 30.0;      // m
    double y0 = 8.0;       // m
    double B0 = 10.0;      // T
    double v = 2.0e8;      // m/s
    double epsilon = 1e-4; // rad
    double theta = 0.0;    // m^2

    void validate(const PhysicalConstants& k = default_constants) const {
        auto finite = [](double x) { return std::isfinite(x); };
        if (!(a > 0.0) || !finite(a)) {
            throw ValidationError("radius must be positive");
        }
        if (!(x0 > 0.0) || !finite(x0)) {
            throw ValidationError("path half-length x0 must be positive");
        }
        if (!finite(y0) || !(std::abs(y0) > a)) {
            throw ValidationError("path offset |y0| must exceed the solenoid radius");
        }
        if (!finite(B0) || B0 == 0.0) {
            throw ValidationError("interior field B0 must be finite and non-zero");
        }
        if (!(v >= 0.0) || !(v < k.c)) {
            throw ValidationError("speed must lie in [0, c)");
        }
        if (!(epsilon > 0.0) || !finite(epsilon)) {
            throw ValidationError("experimental phase error epsilon must be positive");
        }
        if (!(theta >= 0.0) || !finite(theta)) {
            throw ValidationError("theta must be finite and non-negative");
        }
    }

    SolenoidField solenoid() const { return {a, B0}; }
    StraightSegment segment() const { return {{-x0, y0, 0.0}, {x0, y0, 0.0}}; }
    Particle electron(const PhysicalConstants& k = default_constants) const { return Particle::electron(v, k); }
    ThetaMatrix theta_matrix() const { return ThetaMatrix(theta); }
    double flux() const { return std::numbers::pi * a * a * B0; }

    friend bool operator==(const ExperimentParams&, const ExperimentParams&) = default;
};

/// The three terms inside the braces of the closed-form NC phase, in m^-2.
struct BracketTerms {
    double geom1 = 0.0;    // arctan(x/y) / y^2
    double geom2 = 0.0;    // (x/y) / (x^2 + y^2)
    double kinetic = 0.0;  // (8 pi / lambda_e)(Phi0/Phi)(v/c) x / (x^2 + y^2)

    double geometric() const { return geom1 + geom2; }
    double sum() const { return geom1 + geom2 + kinetic; }
};

struct PhaseBreakdown {
    double commutative = 0.0;          // rad
    double nc_closed = 0.0;            // rad
    std::optional<double> nc_numeric;  // rad, present once the quadrature has been run
    BracketTerms bracket;
    double prefactor = 0.0;            // theta (Phi/Phi0)^2 / 8, m^2 * (dimensionless)^2
    double nc_closed_geometric = 0.0;  // prefactor * (geom1 + geom2)
    double nc_closed_kinetic = 0.0;    // prefactor * kinetic
};

/// Commutative open-path phase (2q/hbar) * integral of A . dl.
inline double s_phase_commutative(const SolenoidField& field, const PathSpec& path, double charge,
                                  const QuadratureOptions& opt = {}, const PhysicalConstants& k = default_constants) {
    const double circulation = line_integral(field.potential_field(), path, opt).value;
    return 2.0 * charge / k.hbar * circulation;
}

/// Kinetic (v x grad A_i) and geometric (A x grad A_i) contributions to the
/// quadrature NC phase.
struct NcPhaseTerms {
    double kinetic = 0.0;
    double geometric = 0.0;
    double total() const { return kinetic + geometric; }
};

/// Line integrals of theta_hat . (v x grad A_i) dx_i and theta_hat . (A x grad A_i) dx_i,
/// summed over the two components spanning the NC plane. theta_hat is the unit dual
/// vector of the plane; v is `speed` along the local tangent.
struct NcIntegrals {
    double kinetic = 0.0;    // (m/s) (T m)/m * m
    double geometric = 0.0;  // (T m)^2
};

inline NcIntegrals nc_integrals(const SolenoidField& field, const PathSpec& path, double speed, int plane_i,
                                int plane_j, const QuadratureOptions& opt = {}) {
    const Vec3 axis = ThetaMatrix(1.0, plane_i, plane_j).dual();
    const int comps[2] = {plane_i, plane_j};
    auto kinetic = [&](const Vec3& p, const Vec3& dr) {
        const double len = norm(dr);
        const Vec3 vel = len > 0.0 ? (speed / len) * dr : Vec3{};
        const Jacobian J = field.potential_jacobian(p);
        double s = 0.0;
        for (int i : comps) {
            s += dot(axis, cross(vel, J.grad(i))) * dr[i];
        }
        return s;
    };
    auto geometric = [&](const Vec3& p, const Vec3& dr) {
        const Vec3 A = field.vector_potential(p);
        const Jacobian J = field.potential_jacobian(p);
        double s = 0.0;
        for (int i : comps) {
            s += dot(axis, cross(A, J.grad(i))) * dr[i];
        }
        return s;
    };
    return {path_integral(path, kinetic, opt).value, path_integral(path, geometric, opt).value};
}

/// Quadrature NC phase
///   -(q m / 4 hbar^2) theta . integral [(v x grad A_i) - (q/m)(A x grad A_i)] dx_i
/// split into its kinetic and geometric parts. Exactly linear in theta.
inline NcPhaseTerms s_phase_nc_terms(const SolenoidField& field, const PathSpec& path, const Particle& particle,
                                     const ThetaMatrix& th, const QuadratureOptions& opt = {},
                                     const PhysicalConstants& k = default_constants) {
    particle.validate(k);
    const NcIntegrals I = nc_integrals(field, path, particle.speed, th.first(), th.second(), opt);
    const double pre = -particle.charge * particle.mass / (4.0 * k.hbar * k.hbar);
    return {pre * I.kinetic * th.theta(), -pre * (particle.charge / particle.mass) * I.geometric * th.theta()};
}

inline double s_phase_nc_numeric(const SolenoidField& field, const PathSpec& path, const Particle& particle,
                                 const ThetaMatrix& th, const QuadratureOptions& opt = {},
                                 const PhysicalConstants& k = default_constants) {
    return s_phase_nc_terms(field, path, particle, th, opt, k).total();
}

/// Braces of the closed-form phase evaluated at x = x0, y = y0.
inline BracketTerms bracket_terms(const ExperimentParams& p, const PhysicalConstants& k = default_constants) {
    const double x = p.x0;
    const double y = p.y0;
    const double rho2 = x * x + y * y;
    BracketTerms t;
    t.geom1 = std::atan(x / y) / (y * y);
    t.geom2 = (x / y) / rho2;
    t.kinetic = 8.0 * std::numbers::pi / k.lambda_e() * (k.phi0 / p.flux()) * (p.v / k.c) * x / rho2;
    return t;
}

/// Closed-form open-path phases: commutative -(2e/hbar) B0 a^2 arctan(x0/y0) and
/// the NC correction (theta/8)(Phi/Phi0)^2 {bracket}. nc_numeric is left empty.
inline PhaseBreakdown s_phase_nc_closed(const ExperimentParams& p, const PhysicalConstants& k = default_constants) {
    p.validate(k);
    PhaseBreakdown out;
    out.bracket = bracket_terms(p, k);
    const double ratio = p.flux() / k.phi0;
    out.prefactor = p.theta * ratio * ratio / 8.0;
    out.nc_closed_geometric = out.prefactor * out.bracket.geometric();
    out.nc_closed_kinetic = out.prefactor * out.bracket.kinetic;
    out.nc_closed = out.nc_closed_geometric + out.nc_closed_kinetic;
    out.commutative = -2.0 * k.e_charge / k.hbar * p.B0 * p.a * p.a * std::atan(p.x0 / p.y0);
    return out;
}

/// Closed form plus the quadrature NC phase for an electron on the segment.
inline PhaseBreakdown phase_breakdown(const ExperimentParams& p, const QuadratureOptions& opt = {},
                                      const PhysicalConstants& k = default_constants) {
    PhaseBreakdown out = s_phase_nc_closed(p, k);
    out.nc_numeric = s_phase_nc_numeric(p.solenoid(), p.segment(), p.electron(k), p.theta_matrix(), opt, k);
    return out;
}

struct VerificationRow {
    std::string name;
    double numeric = 0.0;
    double closed = 0.0;
    std::optional<double> ratio;  // numeric / closed; empty when closed == 0
    bool flagged = false;         // ratio differs from 1 beyond the tolerance
    std::string note;
};

struct VerificationReport {
    ExperimentParams params;
    std::vector<VerificationRow> rows;
    double tolerance = 1e-8;

    const VerificationRow* find(const std::string& name) const {
        for (const auto& r : rows) {
            if (r.name == name) {
                return &r;
            }
        }
        return nullptr;
    }
};

/// Integrates the kinetic and geometric integrands separately along the
/// segment and compares them, term by term, with the closed form.
///
/// Two levels are reported. The *_integral rows strip every constant and
/// compare the bare x-integrals against the bracket geometry:
///   integral y / rho^4 dx            vs  geom1 + geom2
///   integral (x^2 - y^2) / rho^4 dx  vs  x0 / rho0^2
/// The *_phase rows compare full phases including all prefactors. Any ratio
/// other than 1 is flagged and kept, never absorbed.
inline VerificationReport verify_closed_vs_quadrature(const ExperimentParams& p, const QuadratureOptions& opt = {},
                                                      const PhysicalConstants& k = default_constants) {
    p.validate(k);
    VerificationReport rep;
    rep.params = p;
    const double tol = std::max(1e-8, 100.0 * opt.rel_tol);
    rep.tolerance = tol;

    auto row = [&](std::string name, double numeric, double closed, std::string note) {
        VerificationRow r{std::move(name), numeric, closed, std::nullopt, false, std::move(note)};
        if (closed != 0.0 && numeric != 0.0) {
            r.ratio = numeric / closed;
            r.flagged = std::abs(*r.ratio - 1.0) > tol;
        }
        rep.rows.push_back(std::move(r));
    };

    const SolenoidField field = p.solenoid();
    const PathSpec path = p.segment();
    const double kk = 0.5 * p.B0 * p.a * p.a;
    const double rho2 = p.x0 * p.x0 + p.y0 * p.y0;

    // Unit speed isolates the geometry of the kinetic integrand.
    const NcIntegrals I = nc_integrals(field, path, 1.0, 0, 1, opt);
    // z . (t x grad A_x) = -k (x^2 - y^2)/rho^4 and z . (A x grad A_x) = -k^2 y / rho^4
    const double bare_kinetic = I.kinetic / -kk;
    const double bare_geometric = I.geometric / (-kk * kk);
    const BracketTerms t = bracket_terms(p, k);
    row("geometric_integral", bare_geometric, t.geometric(), "integral y/rho^4 dx vs geom1 + geom2");
    row("kinetic_integral", bare_kinetic, p.x0 / rho2,
        "integral (x^2-y^2)/rho^4 dx vs x0/rho0^2; symmetric limits give -2");

    const PhaseBreakdown closed = s_phase_nc_closed(p, k);
    const NcPhaseTerms numeric =
        s_phase_nc_terms(field, path, p.electron(k), p.theta_matrix(), opt, k);
    const bool nc_zero = p.theta == 0.0;
    const char* na = "theta = 0: N/A";
    row("geometric_phase", numeric.geometric, closed.nc_closed_geometric,
        nc_zero ? na : "prefactor chain -q^2 k^2/(4 hbar^2) vs (theta/8)(Phi/Phi0)^2");
    row("kinetic_phase", numeric.kinetic, closed.nc_closed_kinetic,
        nc_zero ? na : "prefactor chain -q m k v/(4 hbar^2) vs kinetic bracket term");
    row("total_phase", numeric.total(), closed.nc_closed, nc_zero ? na : "");
    return rep;
}

} // namespace ncab
