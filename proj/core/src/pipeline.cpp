#include "ewb/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "ewb/audio.hpp"
#include "ewb/frames.hpp"
#include "ewb/wav.hpp"

namespace ewb::cli {

ResolvedModel resolve_model(const RunConfig& config) {
    config.validate();
    ResolvedModel model;
    model.t_c = physics::critical_temperature(config.params);
    model.sigma = physics::surface_tension(config.params);
    model.inputs.params = config.params;
    model.inputs.window = config.window;
    model.inputs.window.t_c = model.t_c;
    model.inputs.sim = config.sim;
    model.inputs.sim.total_duration = config.window.total_duration();
    model.inputs.tuning = config.tuning;
    return model;
}

SimulationResult simulate(const RunConfig& config) {
    const ResolvedModel model = resolve_model(config);
    stochastic::RngStream rng(config.seed, stochastic::StreamId::nucleation);

    SimulationResult result;
    bool exhausted = false;
    try {
        result.events = nucleation::generate_events(model.inputs, rng);
    } catch (const nucleation::PlacementExhausted& e) {
        // The domain ran out of symmetric phase; nucleation simply stops.
        result.events = e.partial();
        exhausted = true;
    }
    result.curve = nucleation::coverage_timeline(result.events, model.inputs.sim);

    RunSummary& s = result.summary;
    s.seed = config.seed;
    s.t_c = model.t_c;
    s.sigma = model.sigma;
    s.wall_velocity_c =
        physics::wall_velocity(config.params.higgs_mass, config.wall_table);
    s.r_c_grid_start =
        config.sim.length_scale *
        physics::critical_radius(model.inputs.window.temp_start(),
                                 config.params, model.t_c, model.sigma);
    s.r_c_grid_end =
        config.sim.length_scale *
        physics::critical_radius(model.inputs.window.temp_end(), config.params,
                                 model.t_c, model.sigma);
    s.bubble_count = static_cast<int>(result.events.size());
    s.critical_count = static_cast<int>(
        std::count_if(result.events.begin(), result.events.end(),
                      [](const auto& ev) { return ev.critical; }));
    if (result.events.size() >= 2) {
        s.mean_spacing = nucleation::nearest_neighbor_spacing(result.events);
    }
    s.physical = result.curve.physical;
    s.placement_exhausted = exhausted;
    return result;
}

SimulationResult write_simulation(const RunConfig& config,
                                  const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    SimulationResult result = simulate(config);
    const double total = config.window.total_duration();
    write_events_csv(out_dir / "events.csv", result.events, total);
    write_coverage_csv(out_dir / "coverage.csv", result.curve);
    write_events_json(out_dir / "events.json", result.events, config.sim);
    write_summary_json(out_dir / "summary.json", result.summary);
    return result;
}

void sonify_files(const RunConfig& config,
                  const std::filesystem::path& events_csv,
                  const std::filesystem::path& coverage_csv,
                  const std::filesystem::path& wav_path) {
    auto events = read_events_csv(events_csv);
    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.t_form < b.t_form; });
    const auto curve = read_coverage_csv(coverage_csv);

    audio::RenderSpec spec = config.render;
    spec.total_duration = config.window.total_duration();

    const auto table =
        nucleation::to_event_table(events, spec.total_duration);
    const auto voices =
        audio::voices_from_table(table, config.sim.domain_size, spec);

    std::vector<audio::StereoBuffer> chimes;
    chimes.reserve(voices.size());
    for (const auto& voice : voices) {
        chimes.push_back(audio::render_chime(voice, spec));
    }

    stochastic::RngStream dust_rng(config.seed, stochastic::StreamId::dust);
    const auto dust = audio::render_dust(curve, spec, dust_rng);
    const auto master = audio::mix_master(voices, chimes, dust, spec);
    write_wav(master, spec, wav_path);
}

int render_frames(const RunConfig& config,
                  const std::vector<nucleation::BubbleEvent>& events,
                  const std::filesystem::path& out_dir) {
    nucleation::SimConfig sim = config.sim;
    sim.total_duration = config.window.total_duration();
    return frames::write_frame_sequence(events, config.frame_spec, sim,
                                        config.seed, out_dir);
}

RunAllResult run_all(const RunConfig& config,
                     const std::filesystem::path& out_dir) {
    RunAllResult result;
    result.sim = write_simulation(config, out_dir);
    result.events_csv = out_dir / "events.csv";
    result.coverage_csv = out_dir / "coverage.csv";
    result.summary_json = out_dir / "summary.json";
    result.events_json = out_dir / "events.json";
    result.wav = out_dir / "sonification.wav";
    result.frames_dir = out_dir / "frames";
    // The WAV is rendered from the emitted CSVs, so a standalone sonify of
    // those files is bit-identical to the pipeline output.
    sonify_files(config, result.events_csv, result.coverage_csv, result.wav);
    result.frame_count = render_frames(config, result.sim.events, result.frames_dir);
    return result;
}

void write_potential_csv(const RunConfig& config,
                         const std::filesystem::path& path,
                         const PotentialGrid& grid) {
    config.params.validate();
    const double t_c = physics::critical_temperature(config.params);
    std::vector<double> temps = grid.temps;
    if (temps.empty()) temps = {t_c, 60.0};

    double phi_max = grid.phi_max;
    if (phi_max <= 0) {
        double lowest = temps.front();
        for (double t : temps) lowest = std::min(lowest, t);
        phi_max = 1.25 * physics::broken_minimum(lowest, config.params);
    }
    const int steps = std::max(grid.steps, 2);

    std::ofstream file(path, std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    file << "phi,temp,v\n";
    for (double temp : temps) {
        for (int i = 0; i < steps; ++i) {
            const double phi =
                grid.phi_min + (phi_max - grid.phi_min) * i / (steps - 1);
            file << format_fixed(phi) << ',' << format_fixed(temp) << ','
                 << format_fixed(physics::potential(phi, temp, config.params))
                 << '\n';
        }
    }
}

void write_pdf_csvs(const RunConfig& config,
                    const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const ResolvedModel model = resolve_model(config);
    const auto& window = model.inputs.window;

    {
        std::ofstream file(out_dir / "pdf_radius.csv", std::ios::trunc);
        if (!file) {
            throw Error(ErrorCode::IoFailure, "cannot open pdf_radius.csv");
        }
        file << "temp,r,density\n";
        const double mid_frac =
            0.5 * (window.temp_start_frac + window.temp_end_frac);
        for (double frac :
             {window.temp_start_frac, mid_frac, window.temp_end_frac}) {
            const double temp = frac * model.t_c;
            const double rc = physics::critical_radius(temp, config.params,
                                                       model.t_c, model.sigma);
            const auto density =
                stochastic::radius_pdf(temp, config.params, rc, config.tuning);
            const auto tab = stochastic::TabulatedPdf::build(density, 256);
            // Normalized density: knot weight over the trapezoid mass.
            double mass = 0.0;
            const auto& xs = tab.knots();
            std::vector<double> raw(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) raw[i] = density.pdf(xs[i]);
            for (std::size_t i = 1; i < xs.size(); ++i) {
                mass += 0.5 * (raw[i] + raw[i - 1]) * (xs[i] - xs[i - 1]);
            }
            for (std::size_t i = 0; i < xs.size(); ++i) {
                file << format_fixed(temp) << ',' << format_fixed(xs[i]) << ','
                     << format_fixed(raw[i] / mass) << '\n';
            }
        }
    }

    {
        std::ofstream file(out_dir / "pdf_time.csv", std::ios::trunc);
        if (!file) {
            throw Error(ErrorCode::IoFailure, "cannot open pdf_time.csv");
        }
        file << "t,density\n";
        const auto density = stochastic::formation_time_pdf(
            window, config.params, config.tuning);
        const auto tab = stochastic::TabulatedPdf::build(density, 512);
        const auto& xs = tab.knots();
        std::vector<double> raw(xs.size());
        double mass = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) raw[i] = density.pdf(xs[i]);
        for (std::size_t i = 1; i < xs.size(); ++i) {
            mass += 0.5 * (raw[i] + raw[i - 1]) * (xs[i] - xs[i - 1]);
        }
        for (std::size_t i = 0; i < xs.size(); ++i) {
            file << format_fixed(xs[i]) << ',' << format_fixed(raw[i] / mass)
                 << '\n';
        }
    }
}

} // namespace ewb::cli
