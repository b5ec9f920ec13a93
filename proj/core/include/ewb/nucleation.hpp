#ifndef EWB_NUCLEATION_HPP
#define EWB_NUCLEATION_HPP

#include <span>
#include <vector>

#include "ewb/densities.hpp"
#include "ewb/errors.hpp"
#include "ewb/physics.hpp"
#include "ewb/rng.hpp"

namespace ewb::nucleation {

// Grid-level simulation parameters. Lengths are in grid units on a square
// domain; length_scale converts physical GeV^-1 radii (sampled r0 and the
// critical radius alike) into grid units.
struct SimConfig {
    double domain_size            = 300.0; // square side, grid units
    int    bubble_count           = 30;
    double wall_speed             = 15.0;  // grid units / second
    double total_duration         = 13.0;  // seconds, includes the tail
    double coverage_rate          = 100.0; // coverage samples / second
    int    max_placement_attempts = 1000;  // per bubble
    double length_scale           = 60.0;  // grid units per GeV^-1

    void validate(double sim_duration) const;
};

// One nucleation event. Subcritical bubbles (r0 <= scaled critical radius at
// their formation temperature) shrink and vanish; critical ones grow for the
// rest of the run.
struct BubbleEvent {
    int    id = 0;     // 1-based, in formation order
    double t_form = 0; // seconds
    double x = 0;      // grid units
    double y = 0;
    double r0 = 0;     // grid units
    bool   critical = false;
};

// Broken-symmetry area fraction sampled on a uniform time grid.
struct CoverageCurve {
    std::vector<double> times;
    std::vector<double> broken_fraction;
    bool physical = false; // full coverage reached by t = 10 s
};

// Thrown when a bubble cannot be placed without overlapping live disks
// within the attempt budget (typically because the domain has fully
// transitioned). Carries everything placed so far; callers that treat a
// saturated domain as the natural end of nucleation proceed with `partial`.
class PlacementExhausted : public Error {
public:
    PlacementExhausted(std::vector<BubbleEvent> partial, std::string message)
        : Error(ErrorCode::PlacementExhausted, std::move(message)),
          partial_(std::move(partial)) {}

    const std::vector<BubbleEvent>& partial() const noexcept { return partial_; }

private:
    std::vector<BubbleEvent> partial_;
};

// Everything generate_events needs besides the RNG stream.
struct NucleationInputs {
    physics::PotentialParams params;
    physics::TransitionWindow window;
    SimConfig sim;
    stochastic::DensityTuning tuning;
};

// Draws bubble_count events: formation times from the formation-time
// density (sorted), centers uniform on the domain, radii from the radius
// density at T(t_form). A candidate is rejected while its disk would
// intersect any live disk (grown or still-shrinking) at its formation
// instant; positions are redrawn for the first 100 attempts, then radius and
// position together up to max_placement_attempts.
std::vector<BubbleEvent> generate_events(const NucleationInputs& inputs,
                                         stochastic::RngStream& rng);

// Disk radius at time t >= t_form: linear growth for critical bubbles,
// linear shrink clamped at zero otherwise. Throws Error{BeforeFormation}
// for t < t_form.
double radius_at(const BubbleEvent& event, double t, const SimConfig& cfg);

// Fraction of domain raster cells (cell-center test, one cell per grid unit
// by default) covered by surviving bubbles, sampled at coverage_rate over
// [0, total_duration]. Only critical bubbles count: transient subcritical
// disks appear in frames but never in coverage, which keeps the curve
// monotone.
CoverageCurve coverage_timeline(const std::vector<BubbleEvent>& events,
                                const SimConfig& cfg);

// Mean over events of the distance to the nearest other event center.
// Throws Error{TooFewEvents} for fewer than two events.
double nearest_neighbor_spacing(std::span<const BubbleEvent> events);

// One sonification table row: A = formation time, B/C = center coordinates,
// D = time until the end of the run, E = gap to the next (critical) event.
struct EventTableRow {
    int    id = 0;
    double a = 0, b = 0, c = 0, d = 0, e = 0;
};

// Derives the table over the critical events only (subcritical events are
// filtered internally, so passing a pre-filtered list yields the same rows).
// The last row's E is 0.
std::vector<EventTableRow> to_event_table(const std::vector<BubbleEvent>& events,
                                          double total_duration);

// True iff broken_fraction reaches 1 (within 1e-9) at some t <= 10 s.
bool is_physical(const CoverageCurve& curve);

} // namespace ewb::nucleation

#endif
