// scatter_kernel.hpp
// Frequency-domain far-field response of the at-rest target in the co-moving
// frame: Mie spheres (dispersive or perfectly conducting) and a frequency-flat
// mirror used as the validation reference. Kernel evaluations are pure
// functions; identical inputs give bit-identical outputs.

#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "framehop/errors.hpp"
#include "framehop/material.hpp"
#include "framehop/mie.hpp"
#include "framehop/relativity.hpp"

namespace framehop {

enum class KernelKind { flat_mirror, pec_sphere, dielectric_sphere };

inline std::string to_string(KernelKind k) {
    switch (k) {
        case KernelKind::flat_mirror: return "flat_mirror";
        case KernelKind::pec_sphere: return "pec_sphere";
        case KernelKind::dielectric_sphere: return "dielectric_sphere";
    }
    return "unknown";
}

struct KernelSpec {
    KernelKind kind = KernelKind::flat_mirror;
    double radius = 0.0;                           // m, spheres only
    MaterialModel material = silicon_carbide();    // dielectric_sphere only
    std::complex<double> reflectivity{1.0, 0.0};   // flat_mirror only
};

/// Far-field amplitude pair at one frequency and scattering angle;
/// s1 multiplies the field component perpendicular to the scattering plane,
/// s2 the parallel component.
struct ScatterAmplitude {
    std::complex<double> s1{0.0, 0.0};
    std::complex<double> s2{0.0, 0.0};
    double scattering_angle = 0.0;
};

inline double size_parameter(const KernelSpec& kernel, double omega) {
    return omega * kernel.radius / speed_of_light;
}

inline mie::Coefficients kernel_coefficients(const KernelSpec& kernel, double omega) {
    const double x = size_parameter(kernel, omega);
    if (kernel.kind == KernelKind::pec_sphere) return mie::pec_coefficients(x);
    return mie::coefficients(x, refractive_index(kernel.material, omega));
}

inline ScatterAmplitude scattering_amplitude(const KernelSpec& kernel, double omega, double theta) {
    if (!(omega > 0.0)) throw NonPositiveFrequency("scattering_amplitude requires omega > 0");
    if (kernel.kind == KernelKind::flat_mirror) {
        return {kernel.reflectivity, kernel.reflectivity, theta};
    }
    const auto [s1, s2] = mie::amplitudes(kernel_coefficients(kernel, omega), theta);
    return {s1, s2, theta};
}

inline double extinction_efficiency(const KernelSpec& kernel, double omega) {
    return mie::q_ext(kernel_coefficients(kernel, omega), size_parameter(kernel, omega));
}

inline double scattering_efficiency(const KernelSpec& kernel, double omega) {
    return mie::q_sca(kernel_coefficients(kernel, omega), size_parameter(kernel, omega));
}

/// | Q_ext(series) - (4/x^2) Re S(0) | / Q_ext. Sphere kernels only.
inline double optical_theorem_residual(const KernelSpec& kernel, double omega) {
    if (kernel.kind == KernelKind::flat_mirror) {
        throw Error("optical_theorem_residual requires a sphere kernel");
    }
    const double x = size_parameter(kernel, omega);
    const mie::Coefficients c = kernel_coefficients(kernel, omega);
    const double qe = mie::q_ext(c, x);
    const auto [s1, s2] = mie::amplitudes(c, 0.0);
    (void)s2;
    const double from_forward = 4.0 / (x * x) * s1.real();
    return std::abs(qe - from_forward) / qe;
}

}  // namespace framehop
