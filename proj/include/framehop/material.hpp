// material.hpp
// Single-resonance Lorentz (phonon) permittivity model for the dispersive
// sphere target. Sign convention follows the repo-wide exp(-i omega t) choice:
// absorbing media have Im(eps) > 0.

#pragma once

#include <complex>
#include <numbers>

#include "framehop/errors.hpp"

namespace framehop {

struct MaterialModel {
    double eps_inf = 1.0;  // >= 1
    double omega_t = 0.0;  // transverse phonon resonance, rad/s
    double omega_l = 0.0;  // longitudinal phonon resonance, rad/s (> omega_t)
    double damping = 0.0;  // rad/s, >= 0
};

inline bool material_valid(const MaterialModel& m) {
    return m.eps_inf >= 1.0 && m.omega_t > 0.0 && m.omega_l > m.omega_t && m.damping >= 0.0;
}

/// Silicon carbide defaults (phonon-resonance literature values). The 20 THz
/// carrier sits just below this reststrahlen band, which is what makes the
/// dispersive cases interesting.
inline MaterialModel silicon_carbide() {
    constexpr double tau = 2.0 * std::numbers::pi;
    return {6.7, tau * 23.79e12, tau * 29.07e12, tau * 0.1428e12};
}

/// eps(omega) = eps_inf (omega_l^2 - omega^2 - i damping omega) /
///              (omega_t^2 - omega^2 - i damping omega).
/// The lossless model has a true pole at omega = omega_t; that is reported as
/// PoleAtResonance rather than returned as an infinity.
inline std::complex<double> permittivity(const MaterialModel& m, double omega) {
    if (!(omega > 0.0)) throw NonPositiveFrequency("permittivity requires omega > 0");
    const std::complex<double> i_damp(0.0, m.damping * omega);
    const std::complex<double> num = m.omega_l * m.omega_l - omega * omega - i_damp;
    const std::complex<double> den = m.omega_t * m.omega_t - omega * omega - i_damp;
    if (den == std::complex<double>(0.0, 0.0)) {
        throw PoleAtResonance("lossless Lorentz model evaluated exactly at omega_t");
    }
    return m.eps_inf * num / den;
}

/// Principal-branch complex refractive index, Im(m) >= 0 for absorbing media.
inline std::complex<double> refractive_index(const MaterialModel& m, double omega) {
    return std::sqrt(permittivity(m, omega));
}

}  // namespace framehop
