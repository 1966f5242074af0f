#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "framehop/oracles.hpp"
#include "framehop/pipeline.hpp"

using namespace framehop;

namespace {

ScenarioConfig mirror_scenario(const Vec3& beta) {
    ScenarioConfig cfg;
    cfg.pulse = {20.0e12, 50.0e-15, 0.0, 1.0};
    cfg.velocity = BoostVelocity(beta);
    cfg.kernel.kind = KernelKind::flat_mirror;
    cfg.sampling = {400.0e-15, 4096};
    cfg.lag_scan = {2047, false};
    return cfg;
}

ScenarioConfig pec_scenario(const Vec3& beta) {
    ScenarioConfig cfg = mirror_scenario(beta);
    cfg.kernel.kind = KernelKind::pec_sphere;
    cfg.kernel.radius = 1.0e-6;
    return cfg;
}

SampledSignal make_signal(std::vector<double> samples) {
    return SampledSignal{0.0, 1.0, std::move(samples)};
}

}  // namespace

TEST_CASE("pearson matches the definition", "[pipeline]") {
    REQUIRE(pearson(make_signal({1, 2, 3, 4}), make_signal({1, 2, 3, 5})) ==
            Catch::Approx(0.9827076298239908).epsilon(1.0e-12));

    const SampledSignal f = make_signal({0.4, -1.2, 3.0, 0.1, -0.7});
    SampledSignal g = f;
    REQUIRE(pearson(f, g) == Catch::Approx(1.0).epsilon(1.0e-14));
    for (double& v : g.samples) v = -v;
    REQUIRE(pearson(f, g) == Catch::Approx(-1.0).epsilon(1.0e-14));

    REQUIRE_THROWS_AS(pearson(f, make_signal({1, 1, 1, 1, 1})), DegenerateSignal);
    REQUIRE_THROWS_AS(pearson(f, make_signal({1, 2})), MismatchedLength);
}

TEST_CASE("pearson properties", "[pipeline][property]") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> scale(0.1, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        SampledSignal f = make_signal({}), g = make_signal({});
        f.samples.resize(256);
        g.samples.resize(256);
        for (std::size_t i = 0; i < 256; ++i) {
            f.samples[i] = amp(rng);
            g.samples[i] = amp(rng);
        }
        const double rho = pearson(f, g);

        // naive definition oracle
        REQUIRE(rho == Catch::Approx(oracle::pearson_naive(f.samples, g.samples)).margin(1.0e-12));

        // symmetry
        REQUIRE(pearson(g, f) == Catch::Approx(rho).margin(1.0e-15));

        // scale/offset invariance
        SampledSignal h = g;
        const double a = scale(rng), b = amp(rng);
        for (double& v : h.samples) v = a * v + b;
        REQUIRE(pearson(f, h) == Catch::Approx(rho).margin(1.0e-12));

        REQUIRE(rho >= -1.0);
        REQUIRE(rho <= 1.0);
    }
}

TEST_CASE("max_abs_correlation lag recovery", "[pipeline]") {
    SECTION("constructed shift by +7 samples") {
        const PulseSpec pulse{0.05, 4.0, 32.0, 1.0};  // slow pulse on an integer grid
        SampledSignal f{0.0, 1.0, {}};
        f.samples.resize(64);
        for (std::size_t n = 0; n < 64; ++n) f.samples[n] = gaussian_carrier(pulse, f.time_at(n));
        SampledSignal g = f;
        for (std::size_t n = 0; n < 64; ++n) {
            g.samples[n] = (n >= 7) ? f.samples[n - 7] : 0.0;
        }
        const CorrelationReport r = max_abs_correlation(f, g, 20);
        REQUIRE(r.best_lag == 7);
        REQUIRE(r.rho_max == Catch::Approx(1.0).margin(1.0e-12));
        REQUIRE(r.rho_signed_at_best > 0.0);
    }

    SECTION("spike pair: lag 3, degenerate shifted windows skipped") {
        const SampledSignal f = make_signal({0, 0, 1, 0, 0, 0, 0, 0});
        const SampledSignal g = make_signal({0, 0, 0, 0, 0, 1, 0, 0});
        const CorrelationReport r = max_abs_correlation(f, g, 3);
        REQUIRE(r.best_lag == 3);
        REQUIRE(r.rho_max == Catch::Approx(1.0).margin(1.0e-12));
        // brute-force cross-check over the scanned lags
        for (const LagRho& lr : r.rho_by_lag) {
            std::vector<double> shifted(8, 0.0);
            for (long i = 0; i < 8; ++i) {
                const long j = i + lr.lag;
                if (j >= 0 && j < 8) shifted[static_cast<std::size_t>(i)] = g.samples[static_cast<std::size_t>(j)];
            }
            REQUIRE(lr.rho == Catch::Approx(oracle::pearson_naive(f.samples, shifted)).margin(1.0e-12));
        }
    }

    SECTION("tie at equal |rho| resolves to the negative lag") {
        const SampledSignal f = make_signal({0, 0, 0, 1, 0, 0, 0, 0});
        const SampledSignal g = make_signal({0, 0, 1, 0, 1, 0, 0, 0});
        const CorrelationReport r = max_abs_correlation(f, g, 2);
        REQUIRE(r.best_lag == -1);
    }

    SECTION("uncorrelated noise stays below 0.1") {
        std::mt19937 rng(1);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        for (int seed_rep = 0; seed_rep < 20; ++seed_rep) {
            SampledSignal f{0.0, 1.0, {}}, g{0.0, 1.0, {}};
            f.samples.resize(4096);
            g.samples.resize(4096);
            for (std::size_t i = 0; i < 4096; ++i) {
                f.samples[i] = amp(rng);
                g.samples[i] = amp(rng);
            }
            const CorrelationReport r = max_abs_correlation(f, g, 2047);
            REQUIRE(r.rho_max < 0.1);
        }
    }

    SECTION("guards") {
        const SampledSignal f = make_signal({1, 2, 3, 4, 5, 6, 7, 8});
        REQUIRE_THROWS_AS(max_abs_correlation(f, f, 4), Error);  // max_lag >= N/2
        REQUIRE_THROWS_AS(max_abs_correlation(f, make_signal({1, 1, 1, 1, 1, 1, 1, 1}), 3),
                          DegenerateSignal);
    }

    SECTION("parabolic refinement reported separately") {
        const PulseSpec pulse{0.03, 6.0, 40.0, 1.0};
        SampledSignal f{0.0, 1.0, {}};
        f.samples.resize(128);
        for (std::size_t n = 0; n < 128; ++n) f.samples[n] = gaussian_carrier(pulse, f.time_at(n));
        SampledSignal g = f;
        for (std::size_t n = 0; n < 128; ++n) {
            g.samples[n] = (n >= 5) ? f.samples[n - 5] : 0.0;
        }
        const CorrelationReport r = max_abs_correlation(f, g, 30, true);
        REQUIRE(r.best_lag == 5);
        REQUIRE(r.refined.has_value());
        REQUIRE(r.refined->lag == Catch::Approx(5.0).margin(0.5));
        REQUIRE(r.rho_max == Catch::Approx(1.0).margin(1.0e-12));  // integer-lag value untouched
    }
}

TEST_CASE("simulate_backscatter flat mirror identities", "[pipeline]") {
    SECTION("at rest the mirror returns the pulse itself") {
        const BackscatterResult sim = simulate_backscatter(mirror_scenario({0.0, 0.0, 0.0}));
        REQUIRE(sim.doppler_factor == 1.0);
        REQUIRE(sim.received_raw.sample_interval == sim.transmitted.sample_interval);
        double err = 0.0;
        for (std::size_t n = 0; n < sim.transmitted.size(); ++n) {
            err = std::max(err, std::abs(sim.received_raw.samples[n] - sim.transmitted.samples[n]));
        }
        REQUIRE(err <= 1.0e-10);
    }

    SECTION("receding mirror: g_raw is the dilated pulse, peak at 13.33 THz") {
        const BackscatterResult sim = simulate_backscatter(mirror_scenario({0.0, 0.0, 0.2}));
        REQUIRE(sim.doppler_factor == Catch::Approx(2.0 / 3.0).epsilon(1.0e-12));
        // dilated grid: interval scaled by 1/D
        REQUIRE(sim.received_raw.sample_interval ==
                Catch::Approx(sim.transmitted.sample_interval / sim.doppler_factor).epsilon(1.0e-12));

        const Spectrum raw_spec =
            forward_transform(sim.received_raw, {0.0, 0.0, -1.0}, {1.0, 0.0, 0.0});
        std::size_t peak = 0;
        for (std::size_t k = 1; k < raw_spec.lines.size(); ++k) {
            if (std::abs(raw_spec.lines[k].amplitude) > std::abs(raw_spec.lines[peak].amplitude)) {
                peak = k;
            }
        }
        const double df = 1.0 / (4096.0 * sim.received_raw.sample_interval);
        REQUIRE(raw_spec.lines[peak].frequency ==
                Catch::Approx(20.0e12 * 2.0 / 3.0).margin(df));

        // g_raw(t) tracks f(D t): on the dilated grid the samples coincide
        double rho = pearson(sim.transmitted, sim.received_raw);
        REQUIRE(rho == Catch::Approx(1.0).epsilon(1.0e-9));
    }

    SECTION("per-line Doppler ratios are one scenario constant") {
        for (const Vec3 beta : {Vec3{0.0, 0.0, 0.2}, Vec3{0.2, 0.0, 0.0}, Vec3{0.1, -0.3, 0.4}}) {
            const BackscatterResult sim = simulate_backscatter(mirror_scenario(beta));
            const Spectrum tx = forward_transform(sim.transmitted, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
            for (std::size_t k = 1; k < sim.received_spectrum.lines.size(); ++k) {
                const double ratio =
                    sim.received_spectrum.lines[k].frequency / tx.lines[k].frequency;
                REQUIRE(std::abs(ratio - sim.doppler_factor) <= 1.0e-9 * sim.doppler_factor);
            }
        }
    }
}

TEST_CASE("transverse motion changes the in-frame scattering angle", "[pipeline]") {
    const BackscatterResult sim = simulate_backscatter(pec_scenario({0.2, 0.0, 0.0}));
    REQUIRE(sim.doppler_factor == Catch::Approx(1.0).epsilon(1.0e-12));
    // theta_K = arccos(beta^2 - 1/gamma^2) = arccos(-0.92)
    REQUIRE(sim.scattering_angle_k == Catch::Approx(2.7388768120091317).epsilon(1.0e-12));

    const BackscatterResult rest = simulate_backscatter(pec_scenario({0.0, 0.0, 0.0}));
    REQUIRE(rest.scattering_angle_k == Catch::Approx(std::numbers::pi).margin(1.0e-12));
}

TEST_CASE("near-DC pulse content is flagged", "[pipeline]") {
    // a carrier far below the Gaussian bandwidth leaves real energy at DC,
    // where kernels are undefined
    ScenarioConfig cfg = mirror_scenario({0.0, 0.0, 0.0});
    cfg.pulse = {1.0e9, 50.0e-15, 0.0, 1.0};
    cfg.sampling = {400.0e-15, 512};
    cfg.lag_scan = {64, false};
    const BackscatterResult sim = simulate_backscatter(cfg);
    REQUIRE_FALSE(sim.warnings.empty());

    const BackscatterResult clean = simulate_backscatter(mirror_scenario({0.0, 0.0, 0.0}));
    REQUIRE(clean.warnings.empty());
}

TEST_CASE("remove_doppler", "[pipeline]") {
    SECTION("D = 1 leaves the signal untouched") {
        const SampledSignal s = sample_pulse({20.0e12, 50.0e-15, 0.0, 1.0}, 400.0e-15, 512);
        const SampledSignal r = remove_doppler(s, 1.0);
        REQUIRE(r.samples == s.samples);
        REQUIRE(r.sample_interval == s.sample_interval);
    }

    SECTION("a 13.33 THz tone relabels to 20 THz under D = 2/3") {
        SampledSignal tone{0.0, 1.0e-16, {}};
        tone.samples.resize(1024);
        const double f0 = 20.0e12 * 2.0 / 3.0;
        for (std::size_t n = 0; n < 1024; ++n) {
            tone.samples[n] = std::cos(2.0 * std::numbers::pi * f0 * tone.time_at(n));
        }
        const SampledSignal fixed = remove_doppler(tone, 2.0 / 3.0);
        REQUIRE(fixed.samples == tone.samples);
        // same samples on the compressed axis = 20 THz content
        for (std::size_t n = 0; n < 16; ++n) {
            REQUIRE(fixed.samples[n] ==
                    Catch::Approx(std::cos(2.0 * std::numbers::pi * 20.0e12 * fixed.time_at(n)))
                        .margin(1.0e-9));
        }
    }

    SECTION("spectral removal divides line frequencies") {
        Spectrum spec;
        spec.base_count = 8;
        spec.base_sample_interval = 1.0;
        spec.lines.push_back({13.2, {1.0, 0.0}, {0, 0, -1}, {1, 0, 0}, {0, 1, 0}});
        const Spectrum out = remove_doppler(spec, 0.66);
        REQUIRE(out.lines[0].frequency == Catch::Approx(20.0).epsilon(1.0e-14));
        REQUIRE_THROWS_AS(remove_doppler(spec, 0.0), NonPositiveFactor);
    }
}

TEST_CASE("run_scenario flat mirror reaches unit correlation at lag 0", "[pipeline]") {
    for (const Vec3 beta : {Vec3{0.0, 0.0, 0.0}, Vec3{0.0, 0.0, 0.2}, Vec3{0.0, 0.0, -0.2},
                            Vec3{0.2, 0.0, 0.0}}) {
        const ScenarioOutcome outcome = run_scenario(mirror_scenario(beta));
        REQUIRE(outcome.report.rho_max >= 0.999);
        REQUIRE(outcome.report.best_lag == 0);
        REQUIRE(outcome.report.warnings.empty());
    }
}

TEST_CASE("flat-mirror completeness for arbitrary sub-0.5 velocities", "[pipeline][property]") {
    std::mt19937 rng(8642);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> mag(0.0, 0.5);
    for (int i = 0; i < 6; ++i) {
        Vec3 dir{gauss(rng), gauss(rng), gauss(rng)};
        dir = dir / norm(dir);
        const Vec3 beta = mag(rng) * dir;
        const ScenarioOutcome outcome = run_scenario(mirror_scenario(beta));
        INFO("beta = (" << beta.x << ", " << beta.y << ", " << beta.z << ")");
        REQUIRE(outcome.report.rho_max >= 0.999);
    }
}

TEST_CASE("zero velocity reduces bit-for-bit to the stationary computation", "[pipeline]") {
    const ScenarioConfig cfg = pec_scenario({0.0, 0.0, 0.0});
    const ScenarioOutcome outcome = run_scenario(cfg);

    // direct stationary frequency-domain route, no boost calls anywhere
    const SampledSignal f = sample_pulse(cfg.pulse, cfg.sampling.window_half_width,
                                         cfg.sampling.n_samples);
    Spectrum spec = forward_transform(f, cfg.incidence, Vec3{1.0, 0.0, 0.0});
    const double theta = std::acos(std::clamp(dot(cfg.incidence, cfg.observation), -1.0, 1.0));
    const double omega_floor = 2.0 * std::numbers::pi * spec.lines[1].frequency;
    for (SpectralLine& line : spec.lines) {
        const double omega = 2.0 * std::numbers::pi * line.frequency;
        const ScatterAmplitude amp =
            scattering_amplitude(cfg.kernel, omega > 0.0 ? omega : omega_floor, theta);
        line.amplitude = amp.s1 * line.amplitude;  // collinear limit carries polarization through
        line.direction = cfg.observation;
    }
    const SampledSignal g =
        synthesize_uniform(spec, f.start_time, f.sample_interval, f.size());

    REQUIRE(outcome.received.samples.size() == g.samples.size());
    for (std::size_t n = 0; n < g.samples.size(); ++n) {
        REQUIRE(outcome.received.samples[n] == g.samples[n]);  // bit-for-bit
    }
}

TEST_CASE("PEC sphere at rest reproduces the frozen golden", "[pipeline]") {
    // value fixed by the series-oracle-validated first run
    const ScenarioOutcome outcome = run_scenario(pec_scenario({0.0, 0.0, 0.0}));
    REQUIRE(outcome.report.rho_max == Catch::Approx(0.938545228466570).margin(1.0e-9));
    REQUIRE(outcome.report.best_lag == 62);
    REQUIRE(outcome.report.doppler_factor == 1.0);
}

TEST_CASE("SiC sphere scenario produces a bounded, finite report", "[pipeline]") {
    ScenarioConfig cfg = pec_scenario({0.0, 0.0, 0.2});
    cfg.kernel.kind = KernelKind::dielectric_sphere;
    cfg.kernel.material = silicon_carbide();
    const ScenarioOutcome outcome = run_scenario(cfg);
    REQUIRE(outcome.report.rho_max >= 0.0);
    REQUIRE(outcome.report.rho_max <= 1.0);
    REQUIRE(std::abs(outcome.report.rho_signed_at_best) == outcome.report.rho_max);
    for (const LagRho& lr : outcome.report.rho_by_lag) {
        REQUIRE(lr.rho >= -1.0);
        REQUIRE(lr.rho <= 1.0);
    }
}
