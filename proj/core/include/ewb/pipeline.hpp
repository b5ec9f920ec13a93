#ifndef EWB_PIPELINE_HPP
#define EWB_PIPELINE_HPP

#include <filesystem>
#include <vector>

#include "ewb/config.hpp"
#include "ewb/table_io.hpp"

namespace ewb::cli {

// Config with every derived quantity resolved: the critical temperature in
// the window, total durations, surface tension.
struct ResolvedModel {
    nucleation::NucleationInputs inputs;
    double t_c = 0.0;
    double sigma = 0.0;
};

ResolvedModel resolve_model(const RunConfig& config);

struct SimulationResult {
    std::vector<nucleation::BubbleEvent> events;
    nucleation::CoverageCurve curve;
    RunSummary summary;
};

// Generates events and coverage for the configured seed. A placement budget
// exhaustion (a fully transitioned domain cannot host another bubble) is not
// fatal: the partial event list is used and flagged in the summary.
SimulationResult simulate(const RunConfig& config);

// simulate() plus file outputs: events.csv, coverage.csv, events.json,
// summary.json in out_dir.
SimulationResult write_simulation(const RunConfig& config,
                                  const std::filesystem::path& out_dir);

// Standalone sonification from CSV inputs (the Table-1 interchange format):
// renders the chimes for the critical rows plus the coverage-enveloped dust
// and writes a 16-bit stereo WAV.
void sonify_files(const RunConfig& config,
                  const std::filesystem::path& events_csv,
                  const std::filesystem::path& coverage_csv,
                  const std::filesystem::path& wav_path);

// Frame sequence for an event list. Returns the frame count.
int render_frames(const RunConfig& config,
                  const std::vector<nucleation::BubbleEvent>& events,
                  const std::filesystem::path& out_dir);

struct RunAllResult {
    SimulationResult sim;
    std::filesystem::path events_csv;
    std::filesystem::path coverage_csv;
    std::filesystem::path summary_json;
    std::filesystem::path events_json;
    std::filesystem::path wav;
    std::filesystem::path frames_dir;
    int frame_count = 0;
};

// Full pipeline: simulate -> CSVs -> sonify (from the written CSVs, so the
// audio is exactly what a standalone sonify of those files produces) ->
// frames.
RunAllResult run_all(const RunConfig& config,
                     const std::filesystem::path& out_dir);

// `potential` subcommand payload: V(phi, T) on a grid, one row per (phi, T).
struct PotentialGrid {
    double phi_min = 0.0;
    double phi_max = 0.0; // <= 0 means auto: 1.25 * phi_+ at the lowest temp
    int steps = 241;
    std::vector<double> temps; // empty means {T_c, 60 GeV}
};

void write_potential_csv(const RunConfig& config,
                         const std::filesystem::path& path,
                         const PotentialGrid& grid);

// `pdf` subcommand: tabulates the shipped radius density (window start, mid,
// end temperatures) and the formation-time density.
void write_pdf_csvs(const RunConfig& config,
                    const std::filesystem::path& out_dir);

} // namespace ewb::cli

#endif
