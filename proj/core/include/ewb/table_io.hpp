#ifndef EWB_TABLE_IO_HPP
#define EWB_TABLE_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ewb/nucleation.hpp"

namespace ewb::cli {

// Canonical numeric formatting for CSV output: fixed six decimals.
std::string format_fixed(double v);

// Quantizes to the CSV precision (multiples of 1e-6). Event fields are
// quantized before derived columns are computed, so the D/E identities hold
// exactly on the emitted text and a parse -> re-derive round trip is
// field-exact.
double quantize_fixed(double v);

// Events CSV: header `id,A,B,C,D,E,r0,critical`, one row per event (critical
// and subcritical alike, sorted by formation time). A/B/C are formation
// time and center coordinates, D = total_duration - A. E is the gap to the
// next critical event along the critical subsequence; subcritical rows carry
// E = 0 since they never join the chime schedule.
void write_events_csv(const std::filesystem::path& path,
                      const std::vector<nucleation::BubbleEvent>& events,
                      double total_duration);

std::vector<nucleation::BubbleEvent> read_events_csv(
    const std::filesystem::path& path);

// Coverage CSV: header `t,broken_fraction`, fixed six decimals.
void write_coverage_csv(const std::filesystem::path& path,
                        const nucleation::CoverageCurve& curve);

nucleation::CoverageCurve read_coverage_csv(const std::filesystem::path& path);

struct RunSummary {
    std::uint64_t seed = 0;
    double t_c = 0.0;             // GeV
    double sigma = 0.0;           // GeV^3
    double wall_velocity_c = 0.0; // fraction of c at the configured mass
    double r_c_grid_start = 0.0;  // grid units at window start
    double r_c_grid_end = 0.0;    // grid units at window end
    int bubble_count = 0;
    int critical_count = 0;
    std::optional<double> mean_spacing; // absent for < 2 events
    bool physical = false;
    bool placement_exhausted = false;
};

void write_summary_json(const std::filesystem::path& path,
                        const RunSummary& summary);

// Machine-readable event dump for third-party renderers.
void write_events_json(const std::filesystem::path& path,
                       const std::vector<nucleation::BubbleEvent>& events,
                       const nucleation::SimConfig& sim);

} // namespace ewb::cli

#endif
