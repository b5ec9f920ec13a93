// ewbubbles: deterministic electroweak bubble-nucleation simulator and
// sonification renderer. One seed drives the nucleation, dust and frame
// noise streams, so every output file is reproducible bit for bit.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ewb/pipeline.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    ewb::cli::ConfigOverrides overrides;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "JSON config file (falls back to $EWBUBBLES_CONFIG)");
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--seed", args.overrides.seed, "Random seed (u64)");
    cmd->add_option("--higgs-mass", args.overrides.higgs_mass, "Higgs mass in GeV");
    cmd->add_option("--bubble-count", args.overrides.bubble_count,
                    "Number of bubbles to nucleate");
    cmd->add_option("--wall-speed", args.overrides.wall_speed,
                    "Wall speed in grid units per second");
    cmd->add_option("--length-scale", args.overrides.length_scale,
                    "Grid units per GeV^-1");
    cmd->add_option("--sample-rate", args.overrides.sample_rate, "Audio sample rate");
    cmd->add_option("--master-peak", args.overrides.master_peak,
                    "Peak level the master mix is normalized to on overflow");
    cmd->add_option("--quantize-midi", args.overrides.quantize_midi,
                    "Round pitches to integer MIDI notes (default true)");
    cmd->add_option("--fps", args.overrides.fps, "Frame rate of the image sequence");
}

ewb::cli::RunConfig make_config(const CommonArgs& args) {
    const auto path = ewb::cli::resolve_config_path(args.config_path);
    ewb::cli::RunConfig config =
        path.empty() ? ewb::cli::RunConfig{} : ewb::cli::load_config(path);
    ewb::cli::apply_overrides(config, args.overrides);
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
    config.validate();
    return config;
}

int fail_with_json(const std::string& stage, const ewb::Error& e) {
    nlohmann::ordered_json j;
    j["error"]["stage"] = stage;
    j["error"]["code"] = ewb::error_code_name(e.code());
    j["error"]["message"] = e.what();
    std::cout << j.dump(2) << std::endl;
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electroweak phase-transition bubble simulator & sonifier"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* cmd_potential =
        app.add_subcommand("potential", "Export V(phi, T) grid as CSV");
    ewb::cli::PotentialGrid grid;
    cmd_potential->add_option("--phi-min", grid.phi_min, "Grid start (GeV)");
    cmd_potential->add_option("--phi-max", grid.phi_max,
                              "Grid end (GeV); auto when omitted");
    cmd_potential->add_option("--phi-steps", grid.steps, "Grid points per temperature");
    cmd_potential->add_option("--temp", grid.temps,
                              "Temperature(s) in GeV; default T_c and 60");

    auto* cmd_pdf = app.add_subcommand(
        "pdf", "Export the radius and formation-time densities as CSV");
    auto* cmd_simulate = app.add_subcommand(
        "simulate", "Generate events, coverage and summary files");
    auto* cmd_sonify =
        app.add_subcommand("sonify", "Render a WAV from event/coverage CSVs");
    auto* cmd_frames =
        app.add_subcommand("frames", "Render the PPM frame sequence");
    auto* cmd_run = app.add_subcommand("run", "Full pipeline from one seed");

    std::string events_csv;
    std::string coverage_csv;
    std::string wav_out;
    cmd_sonify->add_option("--events", events_csv, "events.csv input");
    cmd_sonify->add_option("--coverage", coverage_csv, "coverage.csv input");
    cmd_sonify->add_option("--wav", wav_out, "WAV output path");
    std::string frames_events_csv;
    cmd_frames->add_option("--events", frames_events_csv,
                           "events.csv input (simulates when omitted)");

    for (auto* cmd : {cmd_potential, cmd_pdf, cmd_simulate, cmd_sonify,
                      cmd_frames, cmd_run}) {
        add_common_flags(cmd, args);
    }

    CLI11_PARSE(app, argc, argv);

    std::string stage = "config";
    try {
        const ewb::cli::RunConfig config = make_config(args);
        const std::filesystem::path out = config.output_dir;

        if (cmd_potential->parsed()) {
            stage = "potential";
            std::filesystem::create_directories(out);
            ewb::cli::write_potential_csv(config, out / "potential.csv", grid);
            std::cout << "wrote " << (out / "potential.csv").string() << "\n";
        } else if (cmd_pdf->parsed()) {
            stage = "pdf";
            ewb::cli::write_pdf_csvs(config, out);
            std::cout << "wrote " << (out / "pdf_radius.csv").string() << " and "
                      << (out / "pdf_time.csv").string() << "\n";
        } else if (cmd_simulate->parsed()) {
            stage = "simulate";
            const auto result = ewb::cli::write_simulation(config, out);
            std::cout << "seed " << config.seed << ": "
                      << result.summary.bubble_count << " bubbles ("
                      << result.summary.critical_count << " critical), physical="
                      << (result.summary.physical ? "true" : "false") << "\n";
        } else if (cmd_sonify->parsed()) {
            stage = "sonify";
            const auto events = events_csv.empty()
                                    ? (out / "events.csv").string()
                                    : events_csv;
            const auto coverage = coverage_csv.empty()
                                      ? (out / "coverage.csv").string()
                                      : coverage_csv;
            const auto wav = wav_out.empty()
                                 ? (out / "sonification.wav").string()
                                 : wav_out;
            std::filesystem::create_directories(
                std::filesystem::path(wav).parent_path().empty()
                    ? "."
                    : std::filesystem::path(wav).parent_path());
            ewb::cli::sonify_files(config, events, coverage, wav);
            std::cout << "wrote " << wav << "\n";
        } else if (cmd_frames->parsed()) {
            stage = "frames";
            std::vector<ewb::nucleation::BubbleEvent> events;
            if (!frames_events_csv.empty()) {
                events = ewb::cli::read_events_csv(frames_events_csv);
            } else {
                events = ewb::cli::simulate(config).events;
            }
            const int n =
                ewb::cli::render_frames(config, events, out / "frames");
            std::cout << "wrote " << n << " frames to "
                      << (out / "frames").string() << "\n";
        } else if (cmd_run->parsed()) {
            stage = "run";
            const auto result = ewb::cli::run_all(config, out);
            std::cout << "seed " << config.seed << ": "
                      << result.sim.summary.bubble_count << " bubbles ("
                      << result.sim.summary.critical_count
                      << " critical), physical="
                      << (result.sim.summary.physical ? "true" : "false")
                      << ", " << result.frame_count << " frames, wav at "
                      << result.wav.string() << "\n";
        }
        return 0;
    } catch (const ewb::Error& e) {
        return fail_with_json(stage, e);
    } catch (const std::exception& e) {
        nlohmann::ordered_json j;
        j["error"]["stage"] = stage;
        j["error"]["code"] = "Unexpected";
        j["error"]["message"] = e.what();
        std::cout << j.dump(2) << std::endl;
        return 1;
    }
}
