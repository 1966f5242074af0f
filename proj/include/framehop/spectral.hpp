// spectral.hpp
// Conversion between sampled time signals and sets of monochromatic plane-wave
// lines. Each DFT bin of a real signal becomes one SpectralLine carrying the
// shared propagation/polarization triad; line amplitudes are referenced to
// absolute time, so synthesis works at arbitrary times and for frequencies
// that are no longer on the original bin grid (the situation after Doppler
// mapping).
//
// Phasor convention: s(t) = sum_k Re[ A_k exp(-i 2 pi f_k t) ].

#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "framehop/errors.hpp"
#include "framehop/signal.hpp"
#include "framehop/vec3.hpp"

namespace framehop {

/// One monochromatic plane-wave component.
struct SpectralLine {
    double frequency = 0.0;                    // Hz, >= 0; fractional bins allowed
    std::complex<double> amplitude{0.0, 0.0};  // field units, absolute-time phase reference
    Vec3 direction{0.0, 0.0, 1.0};             // propagation, unit
    Vec3 pol_e{1.0, 0.0, 0.0};                 // electric-field direction, unit
    Vec3 pol_h{0.0, 1.0, 0.0};                 // magnetic-field direction, unit
};

/// One-sided line set (N/2 + 1 lines for a real signal of length N).
struct Spectrum {
    std::vector<SpectralLine> lines;
    double base_sample_interval = 0.0;
    std::size_t base_count = 0;
};

namespace detail {

/// Iterative radix-2 decimation-in-time FFT, forward sign convention
/// F_k = sum_n s_n exp(-2 pi i k n / N). N must be a power of two.
inline void fft_radix2(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = data[i + j];
                const std::complex<double> t = w * data[i + j + len / 2];
                data[i + j] = u + t;
                data[i + j + len / 2] = u - t;
                w *= wlen;
            }
        }
    }
}

}  // namespace detail

/// Decompose a real sampled signal into one-sided plane-wave lines propagating
/// along `direction` with electric polarization `pol_e`.
inline Spectrum forward_transform(const SampledSignal& signal, const Vec3& direction, const Vec3& pol_e) {
    validate_signal(signal);
    const std::size_t n = signal.size();
    if (!is_power_of_two(n)) throw NotPowerOfTwo("forward_transform requires a power-of-two sample count");
    if (std::abs(dot(direction, pol_e)) > 1.0e-9) {
        throw GeometryError("propagation direction and polarization must be orthogonal");
    }
    const Vec3 d = normalized(direction);
    const Vec3 pe = normalized(pol_e);
    const Vec3 ph = cross(d, pe);

    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = {signal.samples[i], 0.0};
    detail::fft_radix2(buf);

    Spectrum out;
    out.base_sample_interval = signal.sample_interval;
    out.base_count = n;
    out.lines.resize(n / 2 + 1);
    const double df = 1.0 / (static_cast<double>(n) * signal.sample_interval);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double weight = (k == 0 || k == n / 2) ? 1.0 : 2.0;
        const double freq = static_cast<double>(k) * df;
        // fold the grid origin into the amplitude so the line is
        // absolute-time referenced: A_k = w/N conj(F_k) e^{+i omega_k t_start}
        const double phase = 2.0 * std::numbers::pi * freq * signal.start_time;
        const std::complex<double> rotate(std::cos(phase), std::sin(phase));
        SpectralLine line;
        line.frequency = freq;
        line.amplitude = weight / static_cast<double>(n) * std::conj(buf[k]) * rotate;
        line.direction = d;
        line.pol_e = pe;
        line.pol_h = ph;
        out.lines[k] = line;
    }
    out.lines[0].amplitude = {out.lines[0].amplitude.real(), 0.0};  // DC of a real signal
    return out;
}

/// Evaluate the line sum at one absolute time.
inline double synthesize_at(const Spectrum& spectrum, double t) {
    double acc = 0.0;
    for (const SpectralLine& line : spectrum.lines) {
        const double phase = 2.0 * std::numbers::pi * line.frequency * t;
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        // Re[A e^{-i phase}]
        acc += line.amplitude.real() * c + line.amplitude.imag() * s;
    }
    return acc;
}

/// Direct summation of all lines at the given times (uniform spacing
/// expected). Lines are summed in index order so output is bit-stable.
inline SampledSignal synthesize(const Spectrum& spectrum, const std::vector<double>& times) {
    if (times.size() < 2) throw Error("synthesize needs at least 2 times");
    SampledSignal out;
    out.start_time = times.front();
    out.sample_interval = times[1] - times[0];
    out.samples.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) out.samples[i] = synthesize_at(spectrum, times[i]);
    return out;
}

inline SampledSignal synthesize_uniform(const Spectrum& spectrum, double start_time, double sample_interval,
                                        std::size_t count) {
    SampledSignal out;
    out.start_time = start_time;
    out.sample_interval = sample_interval;
    out.samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.samples[i] = synthesize_at(spectrum, start_time + static_cast<double>(i) * sample_interval);
    }
    return out;
}

/// Time-domain energy held by the one-sided line set, matching sum(s_n^2).
inline double spectral_energy(const Spectrum& spectrum) {
    const std::size_t n = spectrum.base_count;
    double acc = 0.0;
    for (std::size_t k = 0; k < spectrum.lines.size(); ++k) {
        const double w = (k == 0 || k == n / 2) ? 1.0 : 0.5;
        acc += w * std::norm(spectrum.lines[k].amplitude);
    }
    return static_cast<double>(n) * acc;
}

/// | sum s_n^2 - energy(spectrum) | / sum s_n^2; defined as 0 for an
/// identically zero signal.
inline double parseval_check(const SampledSignal& signal, const Spectrum& spectrum) {
    if (signal.size() != spectrum.base_count) throw MismatchedLength("parseval_check: N mismatch");
    double time_energy = 0.0;
    for (double v : signal.samples) time_energy += v * v;
    if (time_energy == 0.0) return 0.0;
    return std::abs(time_energy - spectral_energy(spectrum)) / time_energy;
}

/// Reinterpret the signal as s(factor * t): every spectral component moves
/// from f to factor * f. Performed by band-limited (line-sum) interpolation
/// on the original grid; factor = 1 returns the input unchanged.
inline SampledSignal rescale_time_axis(const SampledSignal& signal, double factor) {
    if (!(factor > 0.0)) throw NonPositiveFactor("rescale factor must be > 0");
    if (factor == 1.0) return signal;
    Spectrum spec = forward_transform(signal, Vec3{0.0, 0.0, 1.0}, Vec3{1.0, 0.0, 0.0});
    for (SpectralLine& line : spec.lines) line.frequency *= factor;
    return synthesize_uniform(spec, signal.start_time, signal.sample_interval, signal.size());
}

}  // namespace framehop
