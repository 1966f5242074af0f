// relativity.hpp
// Lorentz kinematics for plane waves: boosts between the radar frame K' and
// the co-moving target frame K, plus the two-way Doppler factor.
//
// Conventions used repo-wide:
//   * pure boosts only, K and K' axes aligned at t = t' = 0;
//   * velocities are dimensionless beta vectors (v'/c);
//   * boost_* functions transform K' -> K for a frame moving with +beta;
//     the inverse transform is the same call with -beta;
//   * phasor time dependence is exp(-i omega t).

#pragma once

#include <cmath>
#include <utility>

#include "framehop/errors.hpp"
#include "framehop/vec3.hpp"

namespace framehop {

/// Exact by definition (SI).
inline constexpr double speed_of_light = 299792458.0;

/// Validated sub-luminal velocity with its Lorentz factor.
class BoostVelocity {
  public:
    BoostVelocity() = default;

    explicit BoostVelocity(const Vec3& beta) : beta_(beta), beta_sq_(dot(beta, beta)) {
        if (!(beta_sq_ < 1.0)) {
            throw SuperluminalVelocity("|beta| must be < 1");
        }
        gamma_ = 1.0 / std::sqrt(1.0 - beta_sq_);
    }

    const Vec3& beta() const { return beta_; }
    double beta_squared() const { return beta_sq_; }
    double gamma() const { return gamma_; }

    BoostVelocity reversed() const { return BoostVelocity(-beta_); }

  private:
    Vec3 beta_{};
    double beta_sq_ = 0.0;
    double gamma_ = 1.0;
};

/// Free-space plane-wave four-vector (omega/c, k). All waves handled here are
/// on the null cone |k| = omega/c.
struct FourWaveVector {
    double omega = 0.0;  // rad/s
    Vec3 k{};            // rad/m
};

inline FourWaveVector make_plane_wave(double omega, const Vec3& direction) {
    return {omega, (omega / speed_of_light) * direction};
}

/// |  |k|c - omega | / omega, 0 for the degenerate omega = 0 wave.
inline double null_residual(const FourWaveVector& w) {
    if (w.omega == 0.0) return norm(w.k) * speed_of_light;
    return std::abs(norm(w.k) * speed_of_light - w.omega) / w.omega;
}

/// Boost a wave four-vector from K' into K:
///   omega_K = gamma (omega' - c beta.k')
///   k_K     = k' + [(gamma-1)(beta.k')/|beta|^2 - gamma omega'/c] beta
/// beta = 0 reduces to the exact identity (bit-for-bit).
inline FourWaveVector boost_wave(const FourWaveVector& wave, const BoostVelocity& v) {
    const Vec3& b = v.beta();
    const double bsq = v.beta_squared();
    const double g = v.gamma();
    const double bk = dot(b, wave.k);
    const double omega_out = g * (wave.omega - speed_of_light * bk);
    const double parallel = bsq > 0.0 ? (g - 1.0) * bk / bsq : 0.0;
    const Vec3 k_out = wave.k + (parallel - g * wave.omega / speed_of_light) * b;
    return {omega_out, k_out};
}

/// Boost the complex field amplitudes (E, cB) of a wave from K' into K.
/// Uses the division-free form
///   E_K  = gamma (E + beta x cB) - gamma^2/(gamma+1) (beta.E) beta
///   cB_K = gamma (cB - beta x E) - gamma^2/(gamma+1) (beta.cB) beta
/// which is the standard parallel/perpendicular split without the 0/0 at
/// beta = 0.
inline std::pair<CVec3, CVec3> boost_fields(const CVec3& e, const CVec3& cb, const BoostVelocity& v) {
    const Vec3& b = v.beta();
    const double g = v.gamma();
    const double gg = g * g / (g + 1.0);
    const CVec3 e_out = g * (e + cross(b, cb)) - (gg * dot(b, e)) * b;
    const CVec3 cb_out = g * (cb - cross(b, e)) - (gg * dot(b, cb)) * b;
    return {e_out, cb_out};
}

/// Aberration: direction in K of a wave that propagates along `direction` in
/// K'. Frequency independent.
inline Vec3 aberrate_direction(const Vec3& direction, const BoostVelocity& v) {
    const Vec3& b = v.beta();
    const double bsq = v.beta_squared();
    const double g = v.gamma();
    const double bd = dot(b, direction);
    const double parallel = bsq > 0.0 ? (g - 1.0) * bd / bsq : 0.0;
    const Vec3 k = direction + (parallel - g) * b;
    return k / norm(k);
}

/// Two-way Doppler factor D such that a monochromatic omega' sent along
/// `incidence`, scattered elastically in K, and received along `observation`
/// returns as omega'' = D omega'. Composition of the two legs:
/// transmit leg gamma(1 - beta.incidence), receive leg 1/[gamma(1 - beta.observation)].
inline double two_way_doppler_factor(const BoostVelocity& v, const Vec3& incidence, const Vec3& observation) {
    const double g = v.gamma();
    const double transmit = g * (1.0 - dot(v.beta(), incidence));
    const double receive = 1.0 / (g * (1.0 - dot(v.beta(), observation)));
    return transmit * receive;
}

}  // namespace framehop
