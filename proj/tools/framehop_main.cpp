// framehop CLI: batch front door for scenario and sweep configs, plus the
// brute-force oracle checks used by the validation suite.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include "framehop/framehop.hpp"
#include "framehop/oracles.hpp"

namespace fs = std::filesystem;
using namespace framehop;

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("FRAMEHOP_OUT_DIR")) return env;
    return ".";
}

int cmd_validate(const std::string& config_path) {
    try {
        const SweepConfig cfg = load_config(config_path);
        std::cout << "OK: " << config_path << " (" << expand_sweep(cfg).size() << " scenario rows)\n";
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, bool emit_signals) {
    const SweepConfig cfg = load_config(config_path);
    const ScenarioOutcome outcome = run_scenario(cfg.base);
    const CorrelationReport& r = outcome.report;

    fs::create_directories(out_dir);
    const std::string stem = (fs::path(out_dir) / fs::path(config_path).stem()).string();
    dump_report(r, stem);
    if (emit_signals) {
        write_signal(outcome.transmitted, stem + ".f.dat");
        write_signal(outcome.received_raw, stem + ".g_raw.dat");
        write_signal(outcome.received, stem + ".g.dat");
    }

    std::cout << "doppler_factor = " << r.doppler_factor << "\n"
              << "rho_max        = " << r.rho_max << " at lag " << r.best_lag << "\n"
              << "rho_signed     = " << r.rho_signed_at_best << "\n";
    if (r.refined) {
        std::cout << "refined peak   = " << r.refined->rho << " at lag " << r.refined->lag << "\n";
    }
    for (const std::string& w : r.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "report files   = " << stem << ".rho.dat, " << stem << ".meta.json\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override, long jobs_override,
              bool emit_signals) {
    SweepConfig cfg = load_config(config_path);
    if (!out_override.empty()) {
        cfg.output_path = out_override;
    } else if (const char* env = std::getenv("FRAMEHOP_OUT_DIR")) {
        if (fs::path(cfg.output_path).is_relative()) {
            cfg.output_path = (fs::path(env) / cfg.output_path).string();
        }
    }
    if (jobs_override > 0) cfg.jobs = static_cast<std::size_t>(jobs_override);
    if (emit_signals) cfg.emit_signals = true;

    const SweepResult result = run_sweep(cfg);
    std::cout << result.csv_path << ": " << result.row_count << " rows, " << result.failed_rows
              << " failed\n";
    return result.failed_rows == 0 ? 0 : 3;
}

// --- oracle subcommands ----------------------------------------------------

int oracle_boost(double bx, double by, double bz, double freq_hz) {
    const Vec3 beta{bx, by, bz};
    const BoostVelocity v(beta);
    const FourWaveVector wave = make_plane_wave(2.0 * std::numbers::pi * freq_hz, Vec3{0.0, 0.0, 1.0});
    const FourWaveVector impl = boost_wave(wave, v);
    const FourWaveVector ref = oracle::boost_wave_via_matrix(wave, beta);
    const double d_impl = two_way_doppler_factor(v, {0.0, 0.0, 1.0}, {0.0, 0.0, -1.0});
    const double d_ref = oracle::two_way_doppler_via_matrix(beta, {0.0, 0.0, 1.0}, {0.0, 0.0, -1.0});

    std::cout << "wave omega ratio: impl " << impl.omega / wave.omega << ", 4x4 matrix "
              << ref.omega / wave.omega << "\n";
    std::cout << "two-way Doppler D: impl " << d_impl << ", composed matrix boosts " << d_ref << "\n";
    const double err = std::abs(impl.omega - ref.omega) / std::abs(ref.omega) +
                       std::abs(d_impl - d_ref) / d_ref;
    std::cout << "relative disagreement: " << err << "\n";
    return err < 1.0e-12 ? 0 : 1;
}

int oracle_mie(double x, double m_re, double m_im, bool pec) {
    const std::size_t n_max = mie::default_order(x);
    mie::Coefficients impl;
    oracle::MpCoefficients ref;
    if (pec) {
        impl = mie::pec_coefficients(x);
        ref = oracle::pec_series_mp(x, n_max);
    } else {
        impl = mie::coefficients(x, {m_re, m_im});
        ref = oracle::mie_series_mp(x, {m_re, m_im}, n_max);
    }
    double worst = 0.0;
    for (std::size_t n = 0; n < n_max; ++n) {
        worst = std::max(worst, std::abs(impl.a[n] - oracle::to_cdouble(ref.a[n])));
        worst = std::max(worst, std::abs(impl.b[n] - oracle::to_cdouble(ref.b[n])));
    }
    const double qe = mie::q_ext(impl, x);
    const double qe_ref = oracle::q_ext_mp(ref, x);
    std::cout << "n_max = " << n_max << "\n";
    for (std::size_t n = 0; n < std::min<std::size_t>(n_max, 4); ++n) {
        std::cout << "a_" << n + 1 << " = " << impl.a[n] << "   b_" << n + 1 << " = " << impl.b[n]
                  << "\n";
    }
    std::cout << "Q_ext: impl " << qe << ", 50-digit series " << qe_ref << "\n";
    std::cout << "max |coefficient difference| vs oracle: " << worst << "\n";
    return (worst < 1.0e-10 && std::abs(qe - qe_ref) <= 1.0e-10 * std::abs(qe_ref)) ? 0 : 1;
}

int oracle_pearson(unsigned seed, std::size_t n) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    SampledSignal f{0.0, 1.0, {}}, g{0.0, 1.0, {}};
    f.samples.resize(n);
    g.samples.resize(n);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        for (std::size_t i = 0; i < n; ++i) {
            f.samples[i] = amp(rng);
            g.samples[i] = amp(rng);
        }
        worst = std::max(worst,
                         std::abs(pearson(f, g) - oracle::pearson_naive(f.samples, g.samples)));
    }
    std::cout << "max |pearson - naive two-pass definition| over 100 random pairs (N = " << n << "): " << worst
              << "\n";
    return worst < 1.0e-12 ? 0 : 1;
}

int oracle_dilation(double factor) {
    const PulseSpec pulse{20.0e12, 50.0e-15, 0.0, 1.0};
    const SampledSignal s = sample_pulse(pulse, 400.0e-15, 4096);
    const SampledSignal r = rescale_time_axis(s, factor);
    const Spectrum spec = forward_transform(r, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
    std::size_t peak = 0;
    for (std::size_t k = 1; k < spec.lines.size(); ++k) {
        if (std::abs(spec.lines[k].amplitude) > std::abs(spec.lines[peak].amplitude)) peak = k;
    }
    const double expected = 20.0e12 * factor;
    const double df = 1.0 / (4096.0 * s.sample_interval);
    std::cout << "dilated spectral peak at " << spec.lines[peak].frequency << " Hz, expected "
              << expected << " (bin width " << df << ")\n";
    return std::abs(spec.lines[peak].frequency - expected) <= df ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"framehop: relativistic pulse backscatter and correlation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    long jobs = 0;
    bool emit_signals = false;
    unsigned seed = 1;

    CLI::App* sim = app.add_subcommand("simulate", "run the config's scenario block");
    sim->add_option("config", config_path, "JSON config file")->required();
    sim->add_option("--out", out_path, "output directory");
    sim->add_flag("--emit-signals", emit_signals, "write f/g_raw/g time series");

    CLI::App* sweep = app.add_subcommand("sweep", "run the config's sweep grid");
    sweep->add_option("config", config_path, "JSON config file")->required();
    sweep->add_option("--out", out_path, "output CSV path (overrides config)");
    sweep->add_option("--jobs", jobs, "parallel scenario workers");
    sweep->add_flag("--emit-signals", emit_signals, "write per-row signal dumps");

    CLI::App* val = app.add_subcommand("validate", "parse and validate a config");
    val->add_option("config", config_path, "JSON config file")->required();

    CLI::App* orc = app.add_subcommand("oracle", "run the brute-force reference checks");
    double bx = 0.0, by = 0.0, bz = 0.2;
    double freq = 20.0e12;
    double x = 1.0, m_re = 1.5, m_im = 0.0, factor = 1.5;
    bool pec = false;
    std::size_t n_samples = 4096;

    CLI::App* ob = orc->add_subcommand("boost", "component boost vs 4x4 matrix");
    ob->add_option("--beta-x", bx);
    ob->add_option("--beta-y", by);
    ob->add_option("--beta-z", bz);
    ob->add_option("--freq", freq, "carrier frequency, Hz");

    CLI::App* om = orc->add_subcommand("mie", "double-precision series vs 50-digit series");
    om->add_option("--x", x, "size parameter");
    om->add_option("--m-re", m_re);
    om->add_option("--m-im", m_im);
    om->add_flag("--pec", pec, "perfectly conducting sphere");

    CLI::App* op = orc->add_subcommand("pearson", "implementation vs the naive two-pass definition");
    op->add_option("--seed", seed);
    op->add_option("--n", n_samples);

    CLI::App* od = orc->add_subcommand("dilation", "rescale_time_axis spectral peak check");
    od->add_option("--factor", factor);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return cmd_simulate(config_path, out_path.empty() ? default_out_dir() : out_path,
                                      emit_signals);
        if (*sweep) return cmd_sweep(config_path, out_path, jobs, emit_signals);
        if (*val) return cmd_validate(config_path);
        if (*orc) {
            if (*ob) return oracle_boost(bx, by, bz, freq);
            if (*om) return oracle_mie(x, m_re, m_im, pec);
            if (*op) return oracle_pearson(seed, n_samples);
            if (*od) return oracle_dilation(factor);
            std::cerr << "oracle: choose one of boost | mie | pearson | dilation\n";
            return 1;
        }
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
