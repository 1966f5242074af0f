// oracles.hpp
// Independent reference implementations used by the validation suite and the
// `oracle` CLI subcommand. Each one deliberately takes a different route from
// the production code it checks:
//
//   * wave boosts through the explicit 4x4 boost matrix instead of the
//     split component formulas;
//   * Mie series in 50-digit arithmetic from Riccati-Bessel function values
//     (downward-recurrence spherical Bessel, direct ratio formulas) instead
//     of double precision with logarithmic derivatives;
//   * Pearson correlation as a literal long-double transcription of the
//     definition;
//   * O(N^2) textbook DFT instead of the radix-2 FFT.
//
// Keep them that way: they are only useful as long as they stay independent.

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "framehop/relativity.hpp"
#include "framehop/vec3.hpp"

namespace framehop::oracle {

// ---------------------------------------------------------------------------
// Four-vector boost matrix
// ---------------------------------------------------------------------------

/// Explicit boost matrix applied to the column (omega/c, kx, ky, kz).
inline FourWaveVector boost_wave_via_matrix(const FourWaveVector& wave, const Vec3& beta) {
    const double b2 = dot(beta, beta);
    const double g = 1.0 / std::sqrt(1.0 - b2);
    double lam[4][4] = {};
    lam[0][0] = g;
    const std::array<double, 3> b{beta.x, beta.y, beta.z};
    for (int i = 0; i < 3; ++i) {
        lam[0][i + 1] = lam[i + 1][0] = -g * b[i];
        for (int j = 0; j < 3; ++j) {
            lam[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (b2 > 0.0 ? (g - 1.0) * b[i] * b[j] / b2 : 0.0);
        }
    }
    const std::array<double, 4> in{wave.omega / speed_of_light, wave.k.x, wave.k.y, wave.k.z};
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) out[i] += lam[i][j] * in[j];
    }
    return {out[0] * speed_of_light, {out[1], out[2], out[3]}};
}

/// Two-way Doppler factor obtained by composing two matrix boosts: transmit
/// leg into K, then the K' frequency of the wave received along `observation`.
inline double two_way_doppler_via_matrix(const Vec3& beta, const Vec3& incidence, const Vec3& observation) {
    const FourWaveVector in_k = boost_wave_via_matrix(make_plane_wave(1.0, incidence), beta);
    // elastic scattering keeps omega_K; the received wave propagates along
    // `observation` in K', so its K-frame frequency must equal omega_K
    const FourWaveVector obs_k = boost_wave_via_matrix(make_plane_wave(1.0, observation), beta);
    return in_k.omega / obs_k.omega;
}

// ---------------------------------------------------------------------------
// Arbitrary-precision Mie series
// ---------------------------------------------------------------------------

using mp_real = boost::multiprecision::cpp_bin_float_50;
using mp_complex = boost::multiprecision::cpp_complex_50;

namespace detail {

/// Spherical Bessel j_n(z), n = 0..n_max, by downward recurrence with
/// normalization against j_0 = sin(z)/z. Stable for complex z.
inline std::vector<mp_complex> sph_bessel_j(const mp_complex& z, std::size_t n_max) {
    const std::size_t start = n_max + 40 + static_cast<std::size_t>(abs(z));
    std::vector<mp_complex> f(start + 2);
    f[start + 1] = mp_complex(0);
    f[start] = mp_complex(mp_real("1e-40"));
    for (std::size_t n = start; n >= 1; --n) {
        f[n - 1] = mp_real(2 * n + 1) / z * f[n] - f[n + 1];
    }
    const mp_complex scale = (sin(z) / z) / f[0];
    std::vector<mp_complex> out(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) out[n] = f[n] * scale;
    return out;
}

/// Spherical Bessel y_n(z) by (stable) upward recurrence.
inline std::vector<mp_complex> sph_bessel_y(const mp_complex& z, std::size_t n_max) {
    std::vector<mp_complex> y(n_max + 1);
    y[0] = -cos(z) / z;
    if (n_max >= 1) y[1] = -cos(z) / (z * z) - sin(z) / z;
    for (std::size_t n = 1; n < n_max; ++n) {
        y[n + 1] = mp_real(2 * n + 1) / z * y[n] - y[n - 1];
    }
    return y;
}

struct RiccatiTable {
    std::vector<mp_complex> psi, psi_p;  // psi_n = z j_n, derivative
    std::vector<mp_complex> xi, xi_p;    // xi_n = z (j_n + i y_n)
};

inline RiccatiTable riccati_table(const mp_complex& z, std::size_t n_max, bool with_xi) {
    RiccatiTable t;
    const std::vector<mp_complex> j = sph_bessel_j(z, n_max);
    t.psi.resize(n_max + 1);
    t.psi_p.resize(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) t.psi[n] = z * j[n];
    t.psi_p[0] = cos(z);
    for (std::size_t n = 1; n <= n_max; ++n) t.psi_p[n] = t.psi[n - 1] - mp_real(n) / z * t.psi[n];
    if (with_xi) {
        const std::vector<mp_complex> y = sph_bessel_y(z, n_max);
        const mp_complex i_unit(mp_real(0), mp_real(1));
        t.xi.resize(n_max + 1);
        t.xi_p.resize(n_max + 1);
        for (std::size_t n = 0; n <= n_max; ++n) t.xi[n] = z * (j[n] + i_unit * y[n]);
        t.xi_p[0] = cos(z) + i_unit * (sin(z));
        for (std::size_t n = 1; n <= n_max; ++n) t.xi_p[n] = t.xi[n - 1] - mp_real(n) / z * t.xi[n];
    }
    return t;
}

}  // namespace detail

struct MpCoefficients {
    std::vector<mp_complex> a, b;
};

/// Homogeneous-sphere coefficients from the ratio formulas
///   a_n = [m psi_n(mx) psi_n'(x) - psi_n(x) psi_n'(mx)] /
///         [m psi_n(mx) xi_n'(x)  - xi_n(x)  psi_n'(mx)]
///   b_n = [psi_n(mx) psi_n'(x) - m psi_n(x) psi_n'(mx)] /
///         [psi_n(mx) xi_n'(x)  - m xi_n(x)  psi_n'(mx)]
inline MpCoefficients mie_series_mp(double x, std::complex<double> m, std::size_t n_max) {
    const mp_complex mx = mp_complex(mp_real(m.real()), mp_real(m.imag())) * mp_real(x);
    const mp_complex m_mp(mp_real(m.real()), mp_real(m.imag()));
    const detail::RiccatiTable ext = detail::riccati_table(mp_complex(mp_real(x)), n_max, true);
    const detail::RiccatiTable in = detail::riccati_table(mx, n_max, false);
    MpCoefficients out;
    out.a.resize(n_max);
    out.b.resize(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const mp_complex num_a = m_mp * in.psi[n] * ext.psi_p[n] - ext.psi[n] * in.psi_p[n];
        const mp_complex den_a = m_mp * in.psi[n] * ext.xi_p[n] - ext.xi[n] * in.psi_p[n];
        const mp_complex num_b = in.psi[n] * ext.psi_p[n] - m_mp * ext.psi[n] * in.psi_p[n];
        const mp_complex den_b = in.psi[n] * ext.xi_p[n] - m_mp * ext.xi[n] * in.psi_p[n];
        out.a[n - 1] = num_a / den_a;
        out.b[n - 1] = num_b / den_b;
    }
    return out;
}

/// PEC coefficients a_n = psi_n'(x)/xi_n'(x), b_n = psi_n(x)/xi_n(x) in
/// 50-digit arithmetic.
inline MpCoefficients pec_series_mp(double x, std::size_t n_max) {
    const detail::RiccatiTable ext = detail::riccati_table(mp_complex(mp_real(x)), n_max, true);
    MpCoefficients out;
    out.a.resize(n_max);
    out.b.resize(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        out.a[n - 1] = ext.psi_p[n] / ext.xi_p[n];
        out.b[n - 1] = ext.psi[n] / ext.xi[n];
    }
    return out;
}

inline std::complex<double> to_cdouble(const mp_complex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline double q_ext_mp(const MpCoefficients& c, double x) {
    mp_real acc(0);
    for (std::size_t n = 1; n <= c.a.size(); ++n) {
        acc += mp_real(2 * n + 1) * (c.a[n - 1].real() + c.b[n - 1].real());
    }
    return static_cast<double>(mp_real(2) / (mp_real(x) * mp_real(x)) * acc);
}

inline double q_sca_mp(const MpCoefficients& c, double x) {
    mp_real acc(0);
    for (std::size_t n = 1; n <= c.a.size(); ++n) {
        acc += mp_real(2 * n + 1) * (norm(c.a[n - 1]) + norm(c.b[n - 1]));
    }
    return static_cast<double>(mp_real(2) / (mp_real(x) * mp_real(x)) * acc);
}

/// S1, S2 at angle theta summed in 50-digit arithmetic.
inline std::pair<std::complex<double>, std::complex<double>> amplitudes_mp(const MpCoefficients& c,
                                                                           double theta) {
    const std::size_t n_max = c.a.size();
    const mp_real mu(std::cos(theta));
    std::vector<mp_real> pi_n(n_max + 1, mp_real(0)), tau_n(n_max + 1, mp_real(0));
    if (n_max >= 1) {
        pi_n[1] = 1;
        tau_n[1] = mu;
    }
    for (std::size_t n = 2; n <= n_max; ++n) {
        pi_n[n] = (mp_real(2 * n - 1) * mu * pi_n[n - 1] - mp_real(n) * pi_n[n - 2]) / mp_real(n - 1);
        tau_n[n] = mp_real(n) * mu * pi_n[n] - mp_real(n + 1) * pi_n[n - 1];
    }
    mp_complex s1(0), s2(0);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const mp_real w = mp_real(2 * n + 1) / (mp_real(n) * mp_real(n + 1));
        s1 += w * (c.a[n - 1] * pi_n[n] + c.b[n - 1] * tau_n[n]);
        s2 += w * (c.a[n - 1] * tau_n[n] + c.b[n - 1] * pi_n[n]);
    }
    return {to_cdouble(s1), to_cdouble(s2)};
}

// ---------------------------------------------------------------------------
// Brute-force Pearson correlation
// ---------------------------------------------------------------------------

/// Literal long-double transcription of
/// rho = sum (f-mu_f)(g-mu_g) / sqrt(sum (f-mu_f)^2) sqrt(sum (g-mu_g)^2).
inline double pearson_naive(const std::vector<double>& f, const std::vector<double>& g) {
    const std::size_t n = f.size();
    long double mu_f = 0.0L, mu_g = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        mu_f += f[i];
        mu_g += g[i];
    }
    mu_f /= static_cast<long double>(n);
    mu_g /= static_cast<long double>(n);
    long double num = 0.0L, den_f = 0.0L, den_g = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const long double df = f[i] - mu_f;
        const long double dg = g[i] - mu_g;
        num += df * dg;
        den_f += df * df;
        den_g += dg * dg;
    }
    return static_cast<double>(num / (sqrtl(den_f) * sqrtl(den_g)));
}

// ---------------------------------------------------------------------------
// Textbook DFT
// ---------------------------------------------------------------------------

/// O(N^2) forward DFT, F_k = sum_n s_n exp(-2 pi i k n / N).
inline std::vector<std::complex<double>> dft_direct(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t j = 0; j < n; ++j) {
            const long double ang = -2.0L * static_cast<long double>(std::numbers::pi) *
                                    static_cast<long double>(k) * static_cast<long double>(j) /
                                    static_cast<long double>(n);
            re += samples[j] * cosl(ang);
            im += samples[j] * sinl(ang);
        }
        out[k] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return out;
}

}  // namespace framehop::oracle
