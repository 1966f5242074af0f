// signal.hpp
// Transmitted pulse synthesis and the sampled-signal container used by the
// whole pipeline. Times are radar-frame (K') seconds.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "framehop/errors.hpp"

namespace framehop {

/// Gaussian-modulated carrier parameters: f(t) = A exp(-(t-t0)^2/(2 sigma^2)) cos(2 pi nu (t-t0)).
struct PulseSpec {
    double carrier_frequency = 20.0e12;  // nu', Hz
    double width = 50.0e-15;             // sigma', s
    double delay = 0.0;                  // t0, s
    double amplitude = 1.0;
};

inline bool pulse_spec_valid(const PulseSpec& p) {
    return p.carrier_frequency > 0.0 && p.width > 0.0 && p.amplitude > 0.0;
}

/// Uniformly sampled real time series. samples[n] is the value at
/// start_time + n * sample_interval.
struct SampledSignal {
    double start_time = 0.0;
    double sample_interval = 0.0;  // t'_s, > 0
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t n) const { return start_time + static_cast<double>(n) * sample_interval; }
};

inline void validate_signal(const SampledSignal& s) {
    if (!(s.sample_interval > 0.0)) throw Error("sample_interval must be > 0");
    if (s.samples.size() < 2) throw Error("signal needs at least 2 samples");
    for (double v : s.samples) {
        if (!std::isfinite(v)) throw Error("signal contains non-finite samples");
    }
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Evaluate the Gaussian-modulated carrier at time t. Even-symmetric about
/// the delay t0; |result| <= amplitude.
inline double gaussian_carrier(const PulseSpec& spec, double t) {
    const double u = t - spec.delay;
    const double envelope = std::exp(-u * u / (2.0 * spec.width * spec.width));
    return spec.amplitude * envelope * std::cos(2.0 * std::numbers::pi * spec.carrier_frequency * u);
}

/// Sample the pulse on the uniform grid [t0 - W, t0 + W) with N points, so the
/// midpoint sample n = N/2 lands exactly on t0. W >= 6 sigma keeps the
/// truncated tails below exp(-18); N must be a power of two for the spectral
/// stage.
inline SampledSignal sample_pulse(const PulseSpec& spec, double window_half_width, std::size_t n_samples) {
    if (!pulse_spec_valid(spec)) throw Error("invalid pulse spec");
    // the boundary case W = 6 sigma is admitted up to rounding of 6*sigma
    if (window_half_width < 6.0 * spec.width * (1.0 - 1.0e-12)) {
        throw WindowTooNarrow("window_half_width must be >= 6 sigma to confine the pulse");
    }
    if (!is_power_of_two(n_samples) || n_samples < 2) {
        throw NotPowerOfTwo("n_samples must be a power of two >= 2");
    }
    SampledSignal out;
    out.sample_interval = 2.0 * window_half_width / static_cast<double>(n_samples);
    out.start_time = spec.delay - window_half_width;
    out.samples.resize(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        out.samples[n] = gaussian_carrier(spec, out.time_at(n));
    }
    return out;
}

}  // namespace framehop
