#include "ewb/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ewb::cli {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& why) {
    throw Error(ErrorCode::ValidationError, path + ": " + why);
}

void expect_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> known) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (item.key() == k) { ok = true; break; }
        }
        if (!ok) invalid(path + "." + item.key(), "unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    if (!obj[key].is_number()) invalid(path + "." + key, "expected a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            int fallback) {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    if (!obj[key].is_number_integer()) invalid(path + "." + key, "expected an integer");
    return obj[key].get<int>();
}

bool get_bool(const json& obj, const std::string& path, const char* key,
              bool fallback) {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    if (!obj[key].is_boolean()) invalid(path + "." + key, "expected a boolean");
    return obj[key].get<bool>();
}

std::optional<double> get_optional(const json& obj, const std::string& path,
                                   const char* key) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    if (!obj[key].is_number()) invalid(path + "." + key, "expected a number or null");
    return obj[key].get<double>();
}

} // namespace

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError,
                    std::string("physics: ") + e.what());
    }
    wall_table.validate();
    // Window t_c is resolved later from the potential; validate the rest.
    physics::TransitionWindow probe = window;
    probe.t_c = 1.0;
    probe.validate();
    sim.validate(window.sim_duration);
    render.validate();
    frame_spec.validate();
}

void apply_overrides(RunConfig& config, const ConfigOverrides& o) {
    if (o.seed) config.seed = *o.seed;
    if (o.output_dir) config.output_dir = *o.output_dir;
    if (o.higgs_mass) config.params.higgs_mass = *o.higgs_mass;
    if (o.bubble_count) config.sim.bubble_count = *o.bubble_count;
    if (o.wall_speed) config.sim.wall_speed = *o.wall_speed;
    if (o.length_scale) config.sim.length_scale = *o.length_scale;
    if (o.sample_rate) config.render.sample_rate = *o.sample_rate;
    if (o.master_peak) config.render.master_peak = *o.master_peak;
    if (o.quantize_midi) config.render.quantize_midi = *o.quantize_midi;
    if (o.fps) config.frame_spec.fps = *o.fps;
}

RunConfig config_from_json_text(const std::string& text,
                                const std::string& source_name) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, source_name + ": " + e.what());
    }
    if (!root.is_object()) {
        throw Error(ErrorCode::ParseError, source_name + ": expected a JSON object");
    }

    RunConfig cfg;
    expect_keys(root, "$", {"seed", "output_dir", "physics", "window", "sim",
                            "densities", "audio", "frames"});

    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
            invalid("$.seed", "expected an unsigned integer");
        }
        cfg.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) invalid("$.output_dir", "expected a string");
        cfg.output_dir = root["output_dir"].get<std::string>();
    }

    if (root.contains("physics")) {
        const json& p = root["physics"];
        const std::string path = "$.physics";
        expect_keys(p, path,
                    {"higgs_mass", "vev", "mass_w", "mass_z", "mass_top",
                     "coeff_d", "coeff_e", "coeff_t0_sq", "coeff_lambda",
                     "wall_velocity_table"});
        cfg.params.higgs_mass = get_number(p, path, "higgs_mass", cfg.params.higgs_mass);
        cfg.params.vev = get_number(p, path, "vev", cfg.params.vev);
        cfg.params.mass_w = get_number(p, path, "mass_w", cfg.params.mass_w);
        cfg.params.mass_z = get_number(p, path, "mass_z", cfg.params.mass_z);
        cfg.params.mass_top = get_number(p, path, "mass_top", cfg.params.mass_top);
        cfg.params.coeff_d = get_optional(p, path, "coeff_d");
        cfg.params.coeff_e = get_optional(p, path, "coeff_e");
        cfg.params.coeff_t0_sq = get_optional(p, path, "coeff_t0_sq");
        cfg.params.coeff_lambda = get_optional(p, path, "coeff_lambda");
        if (p.contains("wall_velocity_table")) {
            const json& t = p["wall_velocity_table"];
            if (!t.is_array()) invalid(path + ".wall_velocity_table", "expected an array");
            cfg.wall_table.knots.clear();
            for (const auto& knot : t) {
                if (!knot.is_array() || knot.size() != 2 ||
                    !knot[0].is_number() || !knot[1].is_number()) {
                    invalid(path + ".wall_velocity_table",
                            "expected [mass, velocity] pairs");
                }
                cfg.wall_table.knots.emplace_back(knot[0].get<double>(),
                                                  knot[1].get<double>());
            }
        }
    }

    if (root.contains("window")) {
        const json& w = root["window"];
        const std::string path = "$.window";
        expect_keys(w, path,
                    {"temp_start_frac", "temp_end_frac", "sim_duration", "tail"});
        cfg.window.temp_start_frac =
            get_number(w, path, "temp_start_frac", cfg.window.temp_start_frac);
        cfg.window.temp_end_frac =
            get_number(w, path, "temp_end_frac", cfg.window.temp_end_frac);
        cfg.window.sim_duration =
            get_number(w, path, "sim_duration", cfg.window.sim_duration);
        cfg.window.tail = get_number(w, path, "tail", cfg.window.tail);
    }

    if (root.contains("sim")) {
        const json& s = root["sim"];
        const std::string path = "$.sim";
        expect_keys(s, path,
                    {"domain_size", "bubble_count", "wall_speed", "coverage_rate",
                     "max_placement_attempts", "length_scale"});
        cfg.sim.domain_size = get_number(s, path, "domain_size", cfg.sim.domain_size);
        cfg.sim.bubble_count = get_int(s, path, "bubble_count", cfg.sim.bubble_count);
        cfg.sim.wall_speed = get_number(s, path, "wall_speed", cfg.sim.wall_speed);
        cfg.sim.coverage_rate =
            get_number(s, path, "coverage_rate", cfg.sim.coverage_rate);
        cfg.sim.max_placement_attempts = get_int(s, path, "max_placement_attempts",
                                                 cfg.sim.max_placement_attempts);
        cfg.sim.length_scale = get_number(s, path, "length_scale", cfg.sim.length_scale);
    }

    if (root.contains("densities")) {
        const json& d = root["densities"];
        const std::string path = "$.densities";
        expect_keys(d, path, {"radius_beta_start", "radius_beta_end", "time_contrast"});
        cfg.tuning.radius_beta_start =
            get_number(d, path, "radius_beta_start", cfg.tuning.radius_beta_start);
        cfg.tuning.radius_beta_end =
            get_number(d, path, "radius_beta_end", cfg.tuning.radius_beta_end);
        cfg.tuning.time_contrast =
            get_number(d, path, "time_contrast", cfg.tuning.time_contrast);
    }

    if (root.contains("audio")) {
        const json& a = root["audio"];
        const std::string path = "$.audio";
        expect_keys(a, path, {"sample_rate", "master_peak", "quantize_midi"});
        cfg.render.sample_rate = get_int(a, path, "sample_rate", cfg.render.sample_rate);
        cfg.render.master_peak =
            get_number(a, path, "master_peak", cfg.render.master_peak);
        cfg.render.quantize_midi =
            get_bool(a, path, "quantize_midi", cfg.render.quantize_midi);
    }

    if (root.contains("frames")) {
        const json& f = root["frames"];
        const std::string path = "$.frames";
        expect_keys(f, path, {"width", "height", "fps"});
        cfg.frame_spec.width = get_int(f, path, "width", cfg.frame_spec.width);
        cfg.frame_spec.height = get_int(f, path, "height", cfg.frame_spec.height);
        cfg.frame_spec.fps = get_number(f, path, "fps", cfg.frame_spec.fps);
    }

    // Durations derived from the window; not independently configurable.
    cfg.sim.total_duration = cfg.window.total_duration();
    cfg.render.total_duration = cfg.window.total_duration();

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open config " + path.string());
    }
    std::ostringstream text;
    text << file.rdbuf();
    return config_from_json_text(text.str(), path.string());
}

std::filesystem::path resolve_config_path(const std::string& cli_value) {
    if (!cli_value.empty()) return cli_value;
    if (const char* env = std::getenv("EWBUBBLES_CONFIG")) return env;
    return {};
}

} // namespace ewb::cli
