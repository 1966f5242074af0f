// config.hpp
// JSON scenario/sweep configs. All physical quantities carry explicit units in
// their field names (carrier_thz, sigma_fs, radius_m, beta_x, ...). Unknown
// keys are hard errors; validation reports every violated invariant at once.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "framehop/errors.hpp"
#include "framehop/pipeline.hpp"

namespace framehop {

struct SweepConfig {
    ScenarioConfig base;
    std::vector<Vec3> sweep_velocities;            // required for sweeps
    std::vector<KernelSpec> sweep_kernels;         // optional; empty = base kernel
    std::vector<Vec3> sweep_orientations;          // optional; empty = base orientation
    std::string output_path = "sweep.csv";
    bool emit_signals = false;
    std::size_t jobs = 1;
};

namespace config_detail {

using nlohmann::json;

inline void require_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ParseError("unknown key '" + it.key() + "' in " + path);
    }
}

inline double number_at(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ParseError(path + "." + key + " must be a number");
    return obj[key].get<double>();
}

inline std::size_t count_at(const json& obj, const std::string& path, const char* key) {
    if (!obj[key].is_number_integer() && !obj[key].is_number_unsigned()) {
        throw ParseError(path + "." + key + " must be a non-negative count");
    }
    const auto v = obj[key].get<long long>();
    if (v < 0) throw ParseError(path + "." + key + " must be a non-negative count");
    return static_cast<std::size_t>(v);
}

inline Vec3 vec3_at(const json& obj, const std::string& path) {
    require_keys(obj, path, {"x", "y", "z"});
    return {number_at(obj, path, "x", 0.0), number_at(obj, path, "y", 0.0), number_at(obj, path, "z", 0.0)};
}

inline Vec3 beta_at(const json& obj, const std::string& path) {
    require_keys(obj, path, {"beta_x", "beta_y", "beta_z"});
    return {number_at(obj, path, "beta_x", 0.0), number_at(obj, path, "beta_y", 0.0),
            number_at(obj, path, "beta_z", 0.0)};
}

constexpr double thz = 1.0e12;
constexpr double fs = 1.0e-15;

struct RawScenario {
    PulseSpec pulse;
    Vec3 beta{};
    KernelSpec kernel;
    Vec3 orientation{0.0, 0.0, 1.0};
    Vec3 incidence{0.0, 0.0, 1.0};
    Vec3 observation{0.0, 0.0, -1.0};
    double window_half_width = 0.0;  // resolved to 8 sigma when absent
    std::size_t n_samples = 4096;
    std::optional<std::size_t> max_lag;  // resolved to N/2 - 1 when absent
    bool refine = false;
};

inline MaterialModel parse_material(const json& obj, const std::string& path) {
    require_keys(obj, path, {"eps_inf", "omega_t_thz", "omega_l_thz", "damping_thz"});
    const MaterialModel sic = silicon_carbide();
    constexpr double tau = 2.0 * std::numbers::pi;
    MaterialModel m;
    m.eps_inf = number_at(obj, path, "eps_inf", sic.eps_inf);
    m.omega_t = tau * thz * number_at(obj, path, "omega_t_thz", sic.omega_t / (tau * thz));
    m.omega_l = tau * thz * number_at(obj, path, "omega_l_thz", sic.omega_l / (tau * thz));
    m.damping = tau * thz * number_at(obj, path, "damping_thz", sic.damping / (tau * thz));
    return m;
}

inline KernelSpec parse_kernel(const json& obj, const std::string& path) {
    require_keys(obj, path, {"kind", "radius_m", "material", "reflectivity_re", "reflectivity_im"});
    if (!obj.contains("kind") || !obj["kind"].is_string()) {
        throw ParseError(path + ".kind is required (flat_mirror | pec_sphere | dielectric_sphere)");
    }
    const std::string kind = obj["kind"].get<std::string>();
    KernelSpec k;
    if (kind == "flat_mirror") {
        k.kind = KernelKind::flat_mirror;
    } else if (kind == "pec_sphere") {
        k.kind = KernelKind::pec_sphere;
    } else if (kind == "dielectric_sphere") {
        k.kind = KernelKind::dielectric_sphere;
    } else {
        throw ParseError(path + ".kind: unrecognized kernel '" + kind + "'");
    }
    k.radius = number_at(obj, path, "radius_m", 0.0);
    if (obj.contains("material")) k.material = parse_material(obj["material"], path + ".material");
    k.reflectivity = {number_at(obj, path, "reflectivity_re", 1.0),
                      number_at(obj, path, "reflectivity_im", 0.0)};
    return k;
}

inline RawScenario parse_raw_scenario(const json& obj, const std::string& path) {
    require_keys(obj, path,
                 {"pulse", "velocity", "kernel", "orientation", "incidence", "observation", "sampling",
                  "lag_scan"});
    RawScenario raw;
    if (!obj.contains("pulse")) throw ParseError(path + ".pulse is required");
    {
        const json& p = obj["pulse"];
        const std::string pp = path + ".pulse";
        require_keys(p, pp, {"carrier_thz", "sigma_fs", "delay_fs", "amplitude"});
        raw.pulse.carrier_frequency = thz * number_at(p, pp, "carrier_thz", 0.0);
        raw.pulse.width = fs * number_at(p, pp, "sigma_fs", 0.0);
        raw.pulse.delay = fs * number_at(p, pp, "delay_fs", 0.0);
        raw.pulse.amplitude = number_at(p, pp, "amplitude", 1.0);
    }
    if (obj.contains("velocity")) raw.beta = beta_at(obj["velocity"], path + ".velocity");
    if (!obj.contains("kernel")) throw ParseError(path + ".kernel is required");
    raw.kernel = parse_kernel(obj["kernel"], path + ".kernel");
    if (obj.contains("orientation")) raw.orientation = vec3_at(obj["orientation"], path + ".orientation");
    if (obj.contains("incidence")) raw.incidence = vec3_at(obj["incidence"], path + ".incidence");
    if (obj.contains("observation")) raw.observation = vec3_at(obj["observation"], path + ".observation");
    if (obj.contains("sampling")) {
        const json& s = obj["sampling"];
        const std::string sp = path + ".sampling";
        require_keys(s, sp, {"window_half_width_fs", "n_samples"});
        raw.window_half_width = fs * number_at(s, sp, "window_half_width_fs", 0.0);
        if (s.contains("n_samples")) raw.n_samples = count_at(s, sp, "n_samples");
    }
    if (obj.contains("lag_scan")) {
        const json& l = obj["lag_scan"];
        const std::string lp = path + ".lag_scan";
        require_keys(l, lp, {"max_lag", "refine"});
        if (l.contains("max_lag")) raw.max_lag = count_at(l, lp, "max_lag");
        if (l.contains("refine")) {
            if (!l["refine"].is_boolean()) throw ParseError(lp + ".refine must be a boolean");
            raw.refine = l["refine"].get<bool>();
        }
    }
    return raw;
}

inline void collect_scenario_violations(const RawScenario& raw, const std::string& path,
                                        std::vector<std::string>& out) {
    if (!(raw.pulse.carrier_frequency > 0.0)) out.push_back(path + ": carrier frequency must be > 0");
    if (!(raw.pulse.width > 0.0)) out.push_back(path + ": pulse width must be > 0");
    if (!(raw.pulse.amplitude > 0.0)) out.push_back(path + ": pulse amplitude must be > 0");
    if (!(dot(raw.beta, raw.beta) < 1.0)) out.push_back(path + ": |beta| must be < 1 (superluminal)");
    if (raw.kernel.kind != KernelKind::flat_mirror && !(raw.kernel.radius > 0.0)) {
        out.push_back(path + ": sphere radius must be > 0");
    }
    if (raw.kernel.kind == KernelKind::dielectric_sphere && !material_valid(raw.kernel.material)) {
        out.push_back(path + ": material requires eps_inf >= 1, omega_l > omega_t > 0, damping >= 0");
    }
    if (norm(raw.orientation) == 0.0) out.push_back(path + ": orientation must be a nonzero vector");
    if (norm(raw.incidence) == 0.0) out.push_back(path + ": incidence must be a nonzero vector");
    if (norm(raw.observation) == 0.0) out.push_back(path + ": observation must be a nonzero vector");
    if (!is_power_of_two(raw.n_samples) || raw.n_samples < 2) {
        out.push_back(path + ": n_samples must be a power of two >= 2");
    }
    if (raw.pulse.width > 0.0 && raw.window_half_width > 0.0 &&
        raw.window_half_width < 6.0 * raw.pulse.width) {
        out.push_back(path + ": window_half_width must be >= 6 sigma");
    }
    if (raw.max_lag && *raw.max_lag >= raw.n_samples / 2) {
        out.push_back(path + ": max_lag must be < n_samples/2");
    }
}

inline ScenarioConfig finalize_scenario(const RawScenario& raw) {
    ScenarioConfig cfg;
    cfg.pulse = raw.pulse;
    cfg.velocity = BoostVelocity(raw.beta);
    cfg.kernel = raw.kernel;
    cfg.orientation = normalized(raw.orientation);
    cfg.incidence = normalized(raw.incidence);
    cfg.observation = normalized(raw.observation);
    cfg.sampling.window_half_width =
        raw.window_half_width > 0.0 ? raw.window_half_width : 8.0 * raw.pulse.width;
    cfg.sampling.n_samples = raw.n_samples;
    cfg.lag_scan.max_lag = raw.max_lag ? *raw.max_lag : raw.n_samples / 2 - 1;
    cfg.lag_scan.refine = raw.refine;
    return cfg;
}

}  // namespace config_detail

inline ScenarioConfig parse_scenario(const nlohmann::json& obj, const std::string& path = "scenario") {
    config_detail::RawScenario raw = config_detail::parse_raw_scenario(obj, path);
    std::vector<std::string> violations;
    config_detail::collect_scenario_violations(raw, path, violations);
    if (!violations.empty()) throw ValidationError(violations);
    return config_detail::finalize_scenario(raw);
}

inline constexpr long config_schema_version = 1;

/// Parse a full config file: a scenario block plus an optional sweep block.
inline SweepConfig parse_config(const nlohmann::json& root) {
    using config_detail::require_keys;
    require_keys(root, "config", {"schema_version", "scenario", "sweep"});
    if (root.contains("schema_version")) {
        if (!root["schema_version"].is_number_integer() ||
            root["schema_version"].get<long>() != config_schema_version) {
            throw ParseError("unsupported schema_version (this build reads version 1)");
        }
    }
    if (!root.contains("scenario")) throw ParseError("config.scenario is required");

    config_detail::RawScenario raw = config_detail::parse_raw_scenario(root["scenario"], "scenario");
    std::vector<std::string> violations;
    config_detail::collect_scenario_violations(raw, "scenario", violations);

    SweepConfig sweep;
    if (root.contains("sweep")) {
        const nlohmann::json& s = root["sweep"];
        require_keys(s, "sweep",
                     {"velocities", "kernels", "orientations", "output", "emit_signals", "jobs"});
        if (s.contains("velocities")) {
            if (!s["velocities"].is_array()) throw ParseError("sweep.velocities must be an array");
            std::size_t idx = 0;
            for (const auto& v : s["velocities"]) {
                const std::string vp = "sweep.velocities[" + std::to_string(idx++) + "]";
                const Vec3 beta = config_detail::beta_at(v, vp);
                if (!(dot(beta, beta) < 1.0)) violations.push_back(vp + ": |beta| must be < 1");
                sweep.sweep_velocities.push_back(beta);
            }
        }
        if (s.contains("kernels")) {
            if (!s["kernels"].is_array()) throw ParseError("sweep.kernels must be an array");
            std::size_t idx = 0;
            for (const auto& k : s["kernels"]) {
                const std::string kp = "sweep.kernels[" + std::to_string(idx++) + "]";
                const KernelSpec spec = config_detail::parse_kernel(k, kp);
                if (spec.kind != KernelKind::flat_mirror && !(spec.radius > 0.0)) {
                    violations.push_back(kp + ": sphere radius must be > 0");
                }
                sweep.sweep_kernels.push_back(spec);
            }
        }
        if (s.contains("orientations")) {
            if (!s["orientations"].is_array()) throw ParseError("sweep.orientations must be an array");
            std::size_t idx = 0;
            for (const auto& o : s["orientations"]) {
                const std::string op = "sweep.orientations[" + std::to_string(idx++) + "]";
                const Vec3 axis = config_detail::vec3_at(o, op);
                if (norm(axis) == 0.0) violations.push_back(op + ": orientation must be nonzero");
                sweep.sweep_orientations.push_back(axis);
            }
        }
        if (s.contains("output")) {
            if (!s["output"].is_string()) throw ParseError("sweep.output must be a string");
            sweep.output_path = s["output"].get<std::string>();
        }
        if (s.contains("emit_signals")) {
            if (!s["emit_signals"].is_boolean()) throw ParseError("sweep.emit_signals must be a boolean");
            sweep.emit_signals = s["emit_signals"].get<bool>();
        }
        if (s.contains("jobs")) {
            sweep.jobs = config_detail::count_at(s, "sweep", "jobs");
            if (sweep.jobs == 0) violations.push_back("sweep.jobs must be >= 1");
        }
        if (sweep.sweep_velocities.empty()) {
            violations.push_back("sweep.velocities must list at least one velocity");
        }
    }

    if (!violations.empty()) throw ValidationError(violations);
    sweep.base = config_detail::finalize_scenario(raw);
    if (sweep.sweep_velocities.empty()) sweep.sweep_velocities.push_back(sweep.base.velocity.beta());
    return sweep;
}

inline SweepConfig load_config(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) throw Error("cannot open config file: " + file_path);
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(file_path + ": " + e.what());
    }
    return parse_config(root);
}

/// Scenario echo in the exact schema load_config accepts (sidecars round-trip).
inline nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
    using config_detail::fs;
    using config_detail::thz;
    constexpr double tau = 2.0 * std::numbers::pi;
    nlohmann::json j;
    j["pulse"] = {{"carrier_thz", cfg.pulse.carrier_frequency / thz},
                  {"sigma_fs", cfg.pulse.width / fs},
                  {"delay_fs", cfg.pulse.delay / fs},
                  {"amplitude", cfg.pulse.amplitude}};
    j["velocity"] = {{"beta_x", cfg.velocity.beta().x},
                     {"beta_y", cfg.velocity.beta().y},
                     {"beta_z", cfg.velocity.beta().z}};
    nlohmann::json k;
    k["kind"] = to_string(cfg.kernel.kind);
    if (cfg.kernel.kind == KernelKind::flat_mirror) {
        k["reflectivity_re"] = cfg.kernel.reflectivity.real();
        k["reflectivity_im"] = cfg.kernel.reflectivity.imag();
    } else {
        k["radius_m"] = cfg.kernel.radius;
    }
    if (cfg.kernel.kind == KernelKind::dielectric_sphere) {
        k["material"] = {{"eps_inf", cfg.kernel.material.eps_inf},
                         {"omega_t_thz", cfg.kernel.material.omega_t / (tau * thz)},
                         {"omega_l_thz", cfg.kernel.material.omega_l / (tau * thz)},
                         {"damping_thz", cfg.kernel.material.damping / (tau * thz)}};
    }
    j["kernel"] = std::move(k);
    j["orientation"] = {{"x", cfg.orientation.x}, {"y", cfg.orientation.y}, {"z", cfg.orientation.z}};
    j["incidence"] = {{"x", cfg.incidence.x}, {"y", cfg.incidence.y}, {"z", cfg.incidence.z}};
    j["observation"] = {{"x", cfg.observation.x}, {"y", cfg.observation.y}, {"z", cfg.observation.z}};
    j["sampling"] = {{"window_half_width_fs", cfg.sampling.window_half_width / fs},
                     {"n_samples", cfg.sampling.n_samples}};
    j["lag_scan"] = {{"max_lag", cfg.lag_scan.max_lag}, {"refine", cfg.lag_scan.refine}};
    return j;
}

}  // namespace framehop
