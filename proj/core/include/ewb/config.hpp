#ifndef EWB_CONFIG_HPP
#define EWB_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ewb/audio.hpp"
#include "ewb/densities.hpp"
#include "ewb/frames.hpp"
#include "ewb/nucleation.hpp"
#include "ewb/physics.hpp"

namespace ewb::cli {

// Full run configuration. The defaults reproduce the reference setup:
// 35 GeV Higgs, 300x300 grid, 30 bubbles, 10 s transition + 3 s tail,
// 44.1 kHz stereo output.
struct RunConfig {
    std::uint64_t seed = 42;
    std::filesystem::path output_dir = "out";

    physics::PotentialParams params;
    physics::WallVelocityTable wall_table =
        physics::WallVelocityTable::standard_model();
    physics::TransitionWindow window; // t_c resolved from params at run time
    nucleation::SimConfig sim;        // total_duration resolved from window
    stochastic::DensityTuning tuning;
    audio::RenderSpec render;
    frames::FrameSpec frame_spec;

    void validate() const;
};

// Command-line overrides applied on top of a loaded config file.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    std::optional<double> higgs_mass;
    std::optional<int> bubble_count;
    std::optional<double> wall_speed;
    std::optional<double> length_scale;
    std::optional<int> sample_rate;
    std::optional<double> master_peak;
    std::optional<bool> quantize_midi;
    std::optional<double> fps;
};

void apply_overrides(RunConfig& config, const ConfigOverrides& overrides);

// Parses the documented JSON schema. Unknown keys are rejected; validation
// failures name the offending field path. Throws Error{ParseError} or
// Error{ValidationError}.
RunConfig config_from_json_text(const std::string& text,
                                const std::string& source_name = "<inline>");

RunConfig load_config(const std::filesystem::path& path);

// Resolves the config path: explicit CLI value wins, then the
// EWBUBBLES_CONFIG environment variable; empty when neither is set (all
// defaults).
std::filesystem::path resolve_config_path(const std::string& cli_value);

} // namespace ewb::cli

#endif
