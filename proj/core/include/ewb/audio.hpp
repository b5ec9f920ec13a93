#ifndef EWB_AUDIO_HPP
#define EWB_AUDIO_HPP

#include <utility>
#include <vector>

#include "ewb/nucleation.hpp"
#include "ewb/rng.hpp"

namespace ewb::audio {

// Output format of the offline render.
struct RenderSpec {
    int    sample_rate    = 44100;
    int    channels       = 2;
    int    bit_depth      = 16;
    double total_duration = 13.0;
    double master_peak    = 0.9;

    // Pitch mapping rounds to integer semitones by default; the continuous
    // mapping is available behind this flag.
    bool quantize_midi = true;

    void validate() const;
    long frame_count() const;
};

// Interleaved would complicate mixing; keep planar stereo until the WAV
// writer interleaves.
struct StereoBuffer {
    std::vector<double> left;
    std::vector<double> right;

    std::size_t frames() const { return left.size(); }
    void resize(std::size_t n) { left.assign(n, 0.0); right.assign(n, 0.0); }
};

// --- parameter mappings ----------------------------------------------------

// X position -> pan in [-1, 1]. Throws Error{OutOfDomain} outside the grid.
double pan_position(double x, double domain_size);

// Equal-power stereo gains: L = cos((pan+1) pi/4), R = sin((pan+1) pi/4).
std::pair<double, double> equal_power_gains(double pan);

// Y position -> MIDI note 40..60, rounded to the nearest semitone.
int midi_from_y(double y, double domain_size);

// Continuous variant of the same map.
double midi_from_y_continuous(double y, double domain_size);

// 440 * 2^((m - 69) / 12).
double midi_to_hz(double m);

// Low notes read softer than high ones at equal amplitude; compensate
// linearly so note 40 renders at twice the gain of note 60.
double comp_gain(double m);

// Exponential 100 -> 1000 Hz ramp over sweep_duration, held at its endpoint
// afterwards. Drives both the formant frequency and the grain bandwidth.
double sweep_value(double t_local, double sweep_duration);

// --- intensity envelope -----------------------------------------------------

// Piecewise-cubic breakpoint envelope. Each segment interpolates
// v(u) = v_start + (v_end - v_start) * u^3 in normalized segment time.
class Envelope {
public:
    struct Breakpoint {
        double t;
        double value;
    };

    explicit Envelope(std::vector<Breakpoint> points);

    double value(double t) const;
    const std::vector<Breakpoint>& breakpoints() const { return points_; }
    double duration() const { return points_.back().t; }

private:
    std::vector<Breakpoint> points_;
};

// Chime intensity: 1 -> 0.3 cubically over the first second, then cubically
// toward d_own/d_max at the voice end (a single segment when d_own <= 1).
// The first chime (d_own == d_max) ends at full intensity. Throws
// Error{NonPositiveDuration} for d_own <= 0.
Envelope chime_envelope(double d_own, double d_max);

// --- voices ------------------------------------------------------------------

// Per-bubble synthesis parameters derived from one event-table row.
struct ChimeVoice {
    double onset          = 0.0; // seconds (column A)
    double pan            = 0.0;
    double midi           = 40.0;
    double fundamental    = 0.0; // Hz
    double sweep_duration = 1.0; // D of the chronologically first row
    double voice_duration = 1.0; // own D
    double comp           = 1.0;

    Envelope envelope() const { return chime_envelope(voice_duration, sweep_duration); }
};

// Builds the voice list from a critical-event table (rows sorted by A).
// Every voice shares the first row's D as sweep duration, so only the first
// chime's sweep reaches 1000 Hz.
std::vector<ChimeVoice> voices_from_table(
    const std::vector<nucleation::EventTableRow>& rows, double domain_size,
    const RenderSpec& spec);

// --- renderers ---------------------------------------------------------------

// Formant-grain synthesis: one raised-cosine grain per fundamental period,
// carrying a sine at the instantaneous sweep frequency, grain width
// 2 / sweep frequency. The grain sum is shaped by the chime envelope and
// comp gain, then panned.
StereoBuffer render_chime(const ChimeVoice& voice, const RenderSpec& spec);

// Background of random bipolar impulses at 1000/s mean density, rendered
// identically to both channels and scaled by 1 - broken_fraction(t); silent
// once the transition completes.
StereoBuffer render_dust(const nucleation::CoverageCurve& curve,
                         const RenderSpec& spec, stochastic::RngStream& rng);

// Sums the chimes (ascending id order) at floor(onset * sample_rate), then
// the dust, then rescales only if the mix peak exceeds master_peak.
StereoBuffer mix_master(const std::vector<ChimeVoice>& voices,
                        const std::vector<StereoBuffer>& chimes,
                        const StereoBuffer& dust, const RenderSpec& spec);

} // namespace ewb::audio

#endif
