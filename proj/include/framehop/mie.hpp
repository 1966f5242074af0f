// mie.hpp
// Mie series for homogeneous and perfectly conducting spheres.
//
// Riccati-Bessel functions psi_n, chi_n by upward recurrence, internal-field
// logarithmic derivative D_n by downward recurrence (the numerically stable
// direction for each), xi_n = psi_n - i chi_n. Coefficients follow the
// exp(-i omega t) convention, where the Rayleigh limit of a dielectric sphere
// is a_1 ~ -(2i/3) x^3 (m^2-1)/(m^2+2).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "framehop/errors.hpp"

namespace framehop::mie {

using cdouble = std::complex<double>;

struct Coefficients {
    std::vector<cdouble> a;  // a[0] is n = 1
    std::vector<cdouble> b;
};

/// Wiscombe-style series truncation order.
inline std::size_t default_order(double x) {
    return static_cast<std::size_t>(std::ceil(x + 4.0 * std::cbrt(x) + 2.0));
}

namespace detail {

/// psi_n(x) = x j_n(x) for n = 0..n_max by upward recurrence.
inline std::vector<double> riccati_psi(double x, std::size_t n_max) {
    std::vector<double> psi(n_max + 1);
    psi[0] = std::sin(x);
    if (n_max >= 1) psi[1] = std::sin(x) / x - std::cos(x);
    for (std::size_t n = 1; n < n_max; ++n) {
        psi[n + 1] = (2.0 * static_cast<double>(n) + 1.0) / x * psi[n] - psi[n - 1];
    }
    return psi;
}

/// chi_n(x) = -x y_n(x), stable upward.
inline std::vector<double> riccati_chi(double x, std::size_t n_max) {
    std::vector<double> chi(n_max + 1);
    chi[0] = std::cos(x);
    if (n_max >= 1) chi[1] = std::cos(x) / x + std::sin(x);
    for (std::size_t n = 1; n < n_max; ++n) {
        chi[n + 1] = (2.0 * static_cast<double>(n) + 1.0) / x * chi[n] - chi[n - 1];
    }
    return chi;
}

/// Logarithmic derivative D_n(z) = psi_n'(z)/psi_n(z) by downward recurrence.
inline std::vector<cdouble> log_derivative(cdouble z, std::size_t n_max) {
    const std::size_t start = static_cast<std::size_t>(
        std::max<double>(static_cast<double>(n_max), std::abs(z)) + 16.0);
    std::vector<cdouble> d(start + 1, cdouble(0.0, 0.0));
    for (std::size_t n = start; n >= 1; --n) {
        const cdouble ratio = static_cast<double>(n) / z;
        d[n - 1] = ratio - 1.0 / (d[n] + ratio);
    }
    d.resize(n_max + 1);
    return d;
}

inline void check_finite(const std::vector<cdouble>& v, const char* what) {
    for (const cdouble& c : v) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw ConvergenceFailure(std::string("non-finite values in ") + what);
        }
    }
}

}  // namespace detail

/// Scattering coefficients a_n, b_n (n = 1..n_max) for a homogeneous sphere
/// with size parameter x and complex relative index m.
inline Coefficients coefficients(double x, cdouble m, std::size_t n_max = 0) {
    if (!(x > 0.0)) throw Error("size parameter must be > 0");
    if (n_max == 0) n_max = default_order(x);

    const std::vector<double> psi = detail::riccati_psi(x, n_max);
    const std::vector<double> chi = detail::riccati_chi(x, n_max);
    const std::vector<cdouble> d = detail::log_derivative(m * x, n_max);

    Coefficients out;
    out.a.resize(n_max);
    out.b.resize(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const cdouble xi_n(psi[n], -chi[n]);
        const cdouble xi_nm1(psi[n - 1], -chi[n - 1]);
        const double n_over_x = static_cast<double>(n) / x;
        const cdouble ta = d[n] / m + n_over_x;
        const cdouble tb = d[n] * m + n_over_x;
        out.a[n - 1] = (ta * psi[n] - psi[n - 1]) / (ta * xi_n - xi_nm1);
        out.b[n - 1] = (tb * psi[n] - psi[n - 1]) / (tb * xi_n - xi_nm1);
    }
    detail::check_finite(out.a, "Mie a_n");
    detail::check_finite(out.b, "Mie b_n");
    return out;
}

/// Perfectly conducting sphere: a_n = psi_n'(x)/xi_n'(x), b_n = psi_n(x)/xi_n(x).
inline Coefficients pec_coefficients(double x, std::size_t n_max = 0) {
    if (!(x > 0.0)) throw Error("size parameter must be > 0");
    if (n_max == 0) n_max = default_order(x);

    const std::vector<double> psi = detail::riccati_psi(x, n_max);
    const std::vector<double> chi = detail::riccati_chi(x, n_max);

    Coefficients out;
    out.a.resize(n_max);
    out.b.resize(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        // f_n'(x) = f_{n-1}(x) - n f_n(x) / x for any Riccati-Bessel solution
        const double n_over_x = static_cast<double>(n) / x;
        const double psi_p = psi[n - 1] - n_over_x * psi[n];
        const double chi_p = chi[n - 1] - n_over_x * chi[n];
        const cdouble xi_n(psi[n], -chi[n]);
        const cdouble xi_p(psi_p, -chi_p);
        out.a[n - 1] = psi_p / xi_p;
        out.b[n - 1] = psi[n] / xi_n;
    }
    detail::check_finite(out.a, "PEC a_n");
    detail::check_finite(out.b, "PEC b_n");
    return out;
}

/// Angular functions pi_n(cos theta), tau_n(cos theta), n = 1..n_max, by the
/// standard upward recurrence.
inline void angular_functions(double cos_theta, std::size_t n_max, std::vector<double>& pi_n,
                              std::vector<double>& tau_n) {
    pi_n.assign(n_max + 1, 0.0);
    tau_n.assign(n_max + 1, 0.0);
    if (n_max == 0) return;
    pi_n[1] = 1.0;
    tau_n[1] = cos_theta;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const double dn = static_cast<double>(n);
        pi_n[n] = ((2.0 * dn - 1.0) * cos_theta * pi_n[n - 1] - dn * pi_n[n - 2]) / (dn - 1.0);
        tau_n[n] = dn * cos_theta * pi_n[n] - (dn + 1.0) * pi_n[n - 1];
    }
}

/// S1(theta) = sum (2n+1)/(n(n+1)) (a_n pi_n + b_n tau_n), S2 with pi/tau swapped.
inline std::pair<cdouble, cdouble> amplitudes(const Coefficients& c, double theta) {
    const std::size_t n_max = c.a.size();
    std::vector<double> pi_n, tau_n;
    angular_functions(std::cos(theta), n_max, pi_n, tau_n);
    cdouble s1(0.0, 0.0), s2(0.0, 0.0);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double dn = static_cast<double>(n);
        const double w = (2.0 * dn + 1.0) / (dn * (dn + 1.0));
        s1 += w * (c.a[n - 1] * pi_n[n] + c.b[n - 1] * tau_n[n]);
        s2 += w * (c.a[n - 1] * tau_n[n] + c.b[n - 1] * pi_n[n]);
    }
    return {s1, s2};
}

inline double q_ext(const Coefficients& c, double x) {
    double acc = 0.0;
    for (std::size_t n = 1; n <= c.a.size(); ++n) {
        acc += (2.0 * static_cast<double>(n) + 1.0) * (c.a[n - 1].real() + c.b[n - 1].real());
    }
    return 2.0 / (x * x) * acc;
}

inline double q_sca(const Coefficients& c, double x) {
    double acc = 0.0;
    for (std::size_t n = 1; n <= c.a.size(); ++n) {
        acc += (2.0 * static_cast<double>(n) + 1.0) * (std::norm(c.a[n - 1]) + std::norm(c.b[n - 1]));
    }
    return 2.0 / (x * x) * acc;
}

}  // namespace framehop::mie
