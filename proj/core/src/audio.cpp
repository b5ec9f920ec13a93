#include "ewb/audio.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ewb::audio {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void RenderSpec::validate() const {
    if (sample_rate < 8000) {
        throw Error(ErrorCode::ValidationError, "sample_rate must be >= 8000");
    }
    if (channels != 2) {
        throw Error(ErrorCode::ValidationError, "only stereo output is supported");
    }
    if (bit_depth != 16) {
        throw Error(ErrorCode::ValidationError, "only 16-bit PCM is supported");
    }
    if (!(total_duration > 0)) {
        throw Error(ErrorCode::ValidationError, "total_duration must be > 0");
    }
    if (!(master_peak > 0 && master_peak <= 1)) {
        throw Error(ErrorCode::ValidationError, "master_peak must be in (0, 1]");
    }
}

long RenderSpec::frame_count() const {
    return std::lround(total_duration * sample_rate);
}

double pan_position(double x, double domain_size) {
    if (x < 0 || x > domain_size) {
        std::ostringstream oss;
        oss << "x = " << x << " outside [0, " << domain_size << "]";
        throw Error(ErrorCode::OutOfDomain, oss.str());
    }
    return 2.0 * x / domain_size - 1.0;
}

std::pair<double, double> equal_power_gains(double pan) {
    const double angle = (pan + 1.0) * kPi / 4.0;
    return {std::cos(angle), std::sin(angle)};
}

double midi_from_y_continuous(double y, double domain_size) {
    if (y < 0 || y > domain_size) {
        std::ostringstream oss;
        oss << "y = " << y << " outside [0, " << domain_size << "]";
        throw Error(ErrorCode::OutOfDomain, oss.str());
    }
    return 40.0 + 20.0 * y / domain_size;
}

int midi_from_y(double y, double domain_size) {
    return static_cast<int>(std::lround(midi_from_y_continuous(y, domain_size)));
}

double midi_to_hz(double m) {
    return 440.0 * std::exp2((m - 69.0) / 12.0);
}

double comp_gain(double m) {
    if (m < 40.0 || m > 60.0) {
        std::ostringstream oss;
        oss << "midi note " << m << " outside [40, 60]";
        throw Error(ErrorCode::OutOfRange, oss.str());
    }
    return 2.0 - (m - 40.0) / 20.0;
}

double sweep_value(double t_local, double sweep_duration) {
    const double u = std::min(t_local, sweep_duration) / sweep_duration;
    return 100.0 * std::pow(10.0, u);
}

Envelope::Envelope(std::vector<Breakpoint> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw Error(ErrorCode::InvalidParams, "envelope needs >= 2 breakpoints");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].t > points_[i - 1].t)) {
            throw Error(ErrorCode::InvalidParams,
                        "envelope breakpoints must be strictly increasing in t");
        }
    }
}

double Envelope::value(double t) const {
    if (t <= points_.front().t) return points_.front().value;
    if (t >= points_.back().t) return points_.back().value;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (t <= points_[i].t) {
            const auto& p0 = points_[i - 1];
            const auto& p1 = points_[i];
            const double u = (t - p0.t) / (p1.t - p0.t);
            return p0.value + (p1.value - p0.value) * u * u * u;
        }
    }
    return points_.back().value;
}

Envelope chime_envelope(double d_own, double d_max) {
    if (!(d_own > 0)) {
        throw Error(ErrorCode::NonPositiveDuration,
                    "chime envelope requires d_own > 0");
    }
    if (d_max < d_own) {
        throw Error(ErrorCode::InvalidParams, "d_max must be >= d_own");
    }
    const double final_value = d_own / d_max;
    if (d_own <= 1.0) {
        return Envelope({{0.0, 1.0}, {d_own, final_value}});
    }
    return Envelope({{0.0, 1.0}, {1.0, 0.3}, {d_own, final_value}});
}

std::vector<ChimeVoice> voices_from_table(
    const std::vector<nucleation::EventTableRow>& rows, double domain_size,
    const RenderSpec& spec) {
    std::vector<ChimeVoice> voices;
    if (rows.empty()) return voices;
    const double sweep_duration = rows.front().d;
    voices.reserve(rows.size());
    for (const auto& row : rows) {
        ChimeVoice v;
        v.onset = row.a;
        v.pan = pan_position(row.b, domain_size);
        v.midi = spec.quantize_midi
                     ? static_cast<double>(midi_from_y(row.c, domain_size))
                     : midi_from_y_continuous(row.c, domain_size);
        v.fundamental = midi_to_hz(v.midi);
        v.sweep_duration = sweep_duration;
        v.voice_duration = row.d;
        v.comp = comp_gain(v.midi);
        voices.push_back(v);
    }
    return voices;
}

StereoBuffer render_chime(const ChimeVoice& voice, const RenderSpec& spec) {
    spec.validate();
    StereoBuffer out;
    const long frames = std::lround(voice.voice_duration * spec.sample_rate);
    if (frames <= 0) return out;
    out.resize(static_cast<std::size_t>(frames));

    std::vector<double> mono(static_cast<std::size_t>(frames), 0.0);
    const double dt = 1.0 / spec.sample_rate;
    const double period = 1.0 / voice.fundamental;

    // One grain per fundamental period; formant frequency and grain width
    // frozen at the grain's start.
    for (double t_grain = 0.0; t_grain < voice.voice_duration; t_grain += period) {
        const double f_formant = sweep_value(t_grain, voice.sweep_duration);
        const double width = 2.0 / f_formant;
        const long s0 = static_cast<long>(std::ceil(t_grain * spec.sample_rate));
        const long s1 = std::min<long>(
            frames, static_cast<long>(std::ceil((t_grain + width) * spec.sample_rate)));
        for (long s = s0; s < s1; ++s) {
            const double tau = s * dt - t_grain;
            const double window = 0.5 * (1.0 - std::cos(2.0 * kPi * tau / width));
            mono[static_cast<std::size_t>(s)] +=
                window * std::sin(2.0 * kPi * f_formant * tau);
        }
    }

    const Envelope env = voice.envelope();
    const auto [gain_l, gain_r] = equal_power_gains(voice.pan);
    for (long s = 0; s < frames; ++s) {
        const double shaped = mono[static_cast<std::size_t>(s)] *
                              env.value(s * dt) * voice.comp;
        out.left[static_cast<std::size_t>(s)] = shaped * gain_l;
        out.right[static_cast<std::size_t>(s)] = shaped * gain_r;
    }
    return out;
}

StereoBuffer render_dust(const nucleation::CoverageCurve& curve,
                         const RenderSpec& spec, stochastic::RngStream& rng) {
    spec.validate();
    StereoBuffer out;
    const long frames = spec.frame_count();
    out.resize(static_cast<std::size_t>(frames));

    const double impulse_probability = 1000.0 / spec.sample_rate;

    // Linear interpolation of the coverage curve; constant extrapolation
    // beyond its last sample.
    auto broken_at = [&curve](double t) {
        if (curve.times.empty()) return 0.0;
        if (t <= curve.times.front()) return curve.broken_fraction.front();
        if (t >= curve.times.back()) return curve.broken_fraction.back();
        const auto it =
            std::upper_bound(curve.times.begin(), curve.times.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - curve.times.begin());
        const double f =
            (t - curve.times[i - 1]) / (curve.times[i] - curve.times[i - 1]);
        return curve.broken_fraction[i - 1] +
               f * (curve.broken_fraction[i] - curve.broken_fraction[i - 1]);
    };

    for (long s = 0; s < frames; ++s) {
        // Bernoulli draw happens every sample so the impulse pattern is
        // independent of the coverage curve.
        const bool emit = rng.uniform01() < impulse_probability;
        if (!emit) continue;
        const double amplitude = rng.uniform(-1.0, 1.0);
        const double t = static_cast<double>(s) / spec.sample_rate;
        const double level = 1.0 - broken_at(t);
        const double sample = amplitude * level;
        out.left[static_cast<std::size_t>(s)] = sample;
        out.right[static_cast<std::size_t>(s)] = sample;
    }
    return out;
}

StereoBuffer mix_master(const std::vector<ChimeVoice>& voices,
                        const std::vector<StereoBuffer>& chimes,
                        const StereoBuffer& dust, const RenderSpec& spec) {
    spec.validate();
    if (voices.size() != chimes.size()) {
        throw Error(ErrorCode::InvalidParams,
                    "voice list and chime buffer list must align");
    }
    StereoBuffer mix;
    const long frames = spec.frame_count();
    mix.resize(static_cast<std::size_t>(frames));

    for (std::size_t v = 0; v < voices.size(); ++v) {
        const long at = static_cast<long>(
            std::floor(voices[v].onset * spec.sample_rate));
        const auto& buf = chimes[v];
        for (std::size_t s = 0; s < buf.frames(); ++s) {
            const long idx = at + static_cast<long>(s);
            if (idx < 0 || idx >= frames) continue;
            mix.left[static_cast<std::size_t>(idx)] += buf.left[s];
            mix.right[static_cast<std::size_t>(idx)] += buf.right[s];
        }
    }
    for (std::size_t s = 0; s < dust.frames() && s < mix.frames(); ++s) {
        mix.left[s] += dust.left[s];
        mix.right[s] += dust.right[s];
    }

    double peak = 0.0;
    for (std::size_t s = 0; s < mix.frames(); ++s) {
        peak = std::max({peak, std::abs(mix.left[s]), std::abs(mix.right[s])});
    }
    if (peak > spec.master_peak) {
        const double scale = spec.master_peak / peak;
        for (std::size_t s = 0; s < mix.frames(); ++s) {
            mix.left[s] *= scale;
            mix.right[s] *= scale;
        }
    }
    return mix;
}

} // namespace ewb::audio
