#pragma once

#include <cmath>
#include <numbers>

#include "ncab/errors.hpp"

namespace ncab {

/// SI constants (CODATA 2018) plus the flux quantum used throughout the
/// phase and bound formulas.
///
/// `phi0` is the literal 2.06e-15 T m^2, which is h/(2e) rather than h/e.
/// The bound formula reproduces its published energy scale only with this
/// value, so it is stored as given instead of being derived.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;      // J s
    double h = 6.62607015e-34;          // J s
    double e_charge = 1.602176634e-19;  // C
    double c = 299792458.0;             // m/s
    double m_e = 9.1093837015e-31;      // kg
    double phi0 = 2.06e-15;             // T m^2

    /// Compton wavelength h/(m_e c), in m.
    constexpr double lambda_e() const { return h / (m_e * c); }

    /// hbar*c in GeV m.
    constexpr double hbar_c() const { return hbar * c / (e_charge * 1.0e9); }

    friend constexpr bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

inline constexpr PhysicalConstants default_constants{};

/// Length (m) to inverse energy (GeV^-1).
inline double length_to_inverse_energy(double length_m, const PhysicalConstants& k = default_constants) {
    if (!(length_m >= 0.0) || !std::isfinite(length_m)) {
        throw DomainError("length must be finite and non-negative");
    }
    return length_m / k.hbar_c();
}

/// Inverse energy (GeV^-1) to length (m).
inline double inverse_energy_to_length(double inv_gev, const PhysicalConstants& k = default_constants) {
    if (!(inv_gev >= 0.0) || !std::isfinite(inv_gev)) {
        throw DomainError("inverse energy must be finite and non-negative");
    }
    return inv_gev * k.hbar_c();
}

/// Energy scale (TeV) that corresponds to a noncommutativity length sqrt(theta) in m.
inline double sqrt_theta_to_energy_scale(double sqrt_theta_m, const PhysicalConstants& k = default_constants) {
    if (!(sqrt_theta_m > 0.0) || !std::isfinite(sqrt_theta_m)) {
        throw DomainError("sqrt(theta) must be finite and positive");
    }
    return k.hbar_c() / sqrt_theta_m * 1.0e-3;
}

/// Inverse of sqrt_theta_to_energy_scale: TeV to m.
inline double energy_scale_to_sqrt_theta(double tev, const PhysicalConstants& k = default_constants) {
    if (!(tev > 0.0) || !std::isfinite(tev)) {
        throw DomainError("energy scale must be finite and positive");
    }
    return k.hbar_c() / (tev * 1.0e3);
}

} // namespace ncab
