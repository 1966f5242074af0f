// sweep.hpp
// Batch execution of scenario grids with one CSV row per
// velocity/orientation/kernel combination. Rows are computed with scenario-level parallelism but always
// assembled in input order, so the CSV is byte-identical for any jobs count.

#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "framehop/config.hpp"
#include "framehop/pipeline.hpp"

namespace framehop {

inline constexpr const char* csv_header =
    "scenario_id,kernel,radius_m,beta_x,beta_y,beta_z,orient_x,orient_y,orient_z,"
    "carrier_hz,sigma_s,doppler_factor,rho_max,best_lag,error";

struct RowOutcome {
    std::string id;
    ScenarioConfig config;
    std::optional<ScenarioOutcome> outcome;  // absent on row failure
    std::string error;                       // empty on success
};

namespace sweep_detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',') c = ';';
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

inline std::string row_id(std::size_t index) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "s%03zu", index);
    return buf;
}

}  // namespace sweep_detail

/// Expand the sweep grid in deterministic input order:
/// orientations (outer) x kernels x velocities (inner).
inline std::vector<ScenarioConfig> expand_sweep(const SweepConfig& sweep) {
    std::vector<Vec3> orientations = sweep.sweep_orientations;
    if (orientations.empty()) orientations.push_back(sweep.base.orientation);
    std::vector<KernelSpec> kernels = sweep.sweep_kernels;
    if (kernels.empty()) kernels.push_back(sweep.base.kernel);

    std::vector<ScenarioConfig> rows;
    rows.reserve(orientations.size() * kernels.size() * sweep.sweep_velocities.size());
    for (const Vec3& orient : orientations) {
        for (const KernelSpec& kernel : kernels) {
            for (const Vec3& beta : sweep.sweep_velocities) {
                ScenarioConfig cfg = sweep.base;
                cfg.orientation = normalized(orient);
                cfg.kernel = kernel;
                cfg.velocity = BoostVelocity(beta);
                rows.push_back(std::move(cfg));
            }
        }
    }
    return rows;
}

/// Run every row (bounded worker pool); failures are captured per row.
inline std::vector<RowOutcome> run_sweep_rows(const SweepConfig& sweep) {
    const std::vector<ScenarioConfig> configs = expand_sweep(sweep);
    std::vector<RowOutcome> rows(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        rows[i].id = sweep_detail::row_id(i);
        rows[i].config = configs[i];
    }

    const std::size_t workers = std::max<std::size_t>(1, std::min(sweep.jobs, configs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            try {
                rows[i].outcome = run_scenario(rows[i].config);
            } catch (const std::exception& e) {
                rows[i].error = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

inline std::string render_csv(const std::vector<RowOutcome>& rows) {
    using sweep_detail::fmt;
    std::string out = csv_header;
    out += '\n';
    for (const RowOutcome& row : rows) {
        const ScenarioConfig& c = row.config;
        out += row.id;
        out += ',';
        out += to_string(c.kernel.kind);
        out += ',';
        out += fmt(c.kernel.kind == KernelKind::flat_mirror ? 0.0 : c.kernel.radius);
        out += ',';
        out += fmt(c.velocity.beta().x) + "," + fmt(c.velocity.beta().y) + "," + fmt(c.velocity.beta().z);
        out += ',';
        out += fmt(c.orientation.x) + "," + fmt(c.orientation.y) + "," + fmt(c.orientation.z);
        out += ',';
        out += fmt(c.pulse.carrier_frequency) + "," + fmt(c.pulse.width);
        out += ',';
        if (row.outcome) {
            const CorrelationReport& r = row.outcome->report;
            out += fmt(r.doppler_factor) + "," + fmt(r.rho_max) + "," + std::to_string(r.best_lag);
            out += ",";
        } else {
            out += ",,,";
            out += sweep_detail::sanitize(row.error);
        }
        out += '\n';
    }
    return out;
}

/// Two-column time/amplitude dump.
inline void write_signal(const SampledSignal& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# time_s amplitude\n";
    for (std::size_t n = 0; n < s.size(); ++n) {
        out << sweep_detail::fmt(s.time_at(n)) << ' ' << sweep_detail::fmt(s.samples[n]) << '\n';
    }
}

/// rho-vs-lag plot data plus a JSON sidecar echoing the full scenario in the
/// loadable schema. Every report field lands in one of the two files.
inline void dump_report(const CorrelationReport& report, const std::string& stem) {
    {
        std::ofstream out(stem + ".rho.dat");
        if (!out) throw Error("cannot write " + stem + ".rho.dat");
        out << "# lag_samples rho\n";
        for (const LagRho& lr : report.rho_by_lag) {
            out << lr.lag << ' ' << sweep_detail::fmt(lr.rho) << '\n';
        }
    }
    nlohmann::json meta;
    if (report.scenario) meta["scenario"] = scenario_to_json(*report.scenario);
    meta["report"] = {{"doppler_factor", report.doppler_factor},
                      {"rho_max", report.rho_max},
                      {"best_lag", report.best_lag},
                      {"rho_signed_at_best", report.rho_signed_at_best},
                      {"lag_count", report.rho_by_lag.size()},
                      {"warnings", report.warnings}};
    if (report.refined) {
        meta["report"]["refined_lag"] = report.refined->lag;
        meta["report"]["refined_rho"] = report.refined->rho;
    }
    std::ofstream out(stem + ".meta.json");
    if (!out) throw Error("cannot write " + stem + ".meta.json");
    out << meta.dump(2) << '\n';
}

struct SweepResult {
    std::string csv_path;
    std::size_t row_count = 0;
    std::size_t failed_rows = 0;
};

/// Full sweep: compute rows, write the CSV, optionally dump per-row signal
/// and report files next to it.
inline SweepResult run_sweep(const SweepConfig& sweep) {
    const std::vector<RowOutcome> rows = run_sweep_rows(sweep);
    const std::string csv = render_csv(rows);

    const std::filesystem::path csv_path(sweep.output_path);
    if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw Error("cannot write " + csv_path.string());
        out << csv;
    }

    SweepResult result;
    result.csv_path = csv_path.string();
    result.row_count = rows.size();
    for (const RowOutcome& row : rows) {
        if (!row.outcome) {
            ++result.failed_rows;
            continue;
        }
        if (sweep.emit_signals) {
            std::filesystem::path stem = csv_path;
            stem.replace_extension();
            const std::string base = stem.string() + "_" + row.id;
            write_signal(row.outcome->transmitted, base + ".f.dat");
            write_signal(row.outcome->received_raw, base + ".g_raw.dat");
            write_signal(row.outcome->received, base + ".g.dat");
            dump_report(row.outcome->report, base);
        }
    }
    return result;
}

}  // namespace framehop
