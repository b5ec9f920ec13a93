#include "ewb/nucleation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ewb::nucleation {

void SimConfig::validate(double sim_duration) const {
    if (bubble_count < 0) {
        throw Error(ErrorCode::ValidationError, "bubble_count must be >= 0");
    }
    if (!(domain_size > 0)) {
        throw Error(ErrorCode::ValidationError, "domain_size must be > 0");
    }
    if (!(wall_speed > 0)) {
        throw Error(ErrorCode::ValidationError, "wall_speed must be > 0");
    }
    if (!(total_duration >= sim_duration)) {
        throw Error(ErrorCode::ValidationError,
                    "total_duration must cover the transition window");
    }
    if (!(coverage_rate > 0)) {
        throw Error(ErrorCode::ValidationError, "coverage_rate must be > 0");
    }
    if (max_placement_attempts < 1) {
        throw Error(ErrorCode::ValidationError,
                    "max_placement_attempts must be >= 1");
    }
    if (!(length_scale > 0)) {
        throw Error(ErrorCode::ValidationError, "length_scale must be > 0");
    }
}

double radius_at(const BubbleEvent& event, double t, const SimConfig& cfg) {
    if (t < event.t_form) {
        std::ostringstream oss;
        oss << "bubble " << event.id << " queried at t = " << t
            << " before its formation at " << event.t_form;
        throw Error(ErrorCode::BeforeFormation, oss.str());
    }
    const double dt = t - event.t_form;
    if (event.critical) return event.r0 + cfg.wall_speed * dt;
    return std::max(0.0, event.r0 - cfg.wall_speed * dt);
}

namespace {

// Live (positive-radius) disk radius at time t, or 0 for dead/unborn disks.
double live_radius(const BubbleEvent& event, double t, const SimConfig& cfg) {
    if (t < event.t_form) return 0.0;
    return radius_at(event, t, cfg);
}

bool overlaps_any(double x, double y, double r, double t,
                  const std::vector<BubbleEvent>& events,
                  const SimConfig& cfg) {
    for (const auto& ev : events) {
        const double lr = live_radius(ev, t, cfg);
        if (lr <= 0) continue;
        const double dx = x - ev.x;
        const double dy = y - ev.y;
        const double reach = r + lr;
        if (dx * dx + dy * dy < reach * reach) return true;
    }
    return false;
}

} // namespace

std::vector<BubbleEvent> generate_events(const NucleationInputs& inputs,
                                         stochastic::RngStream& rng) {
    inputs.params.validate();
    inputs.window.validate();
    inputs.sim.validate(inputs.window.sim_duration);

    std::vector<BubbleEvent> events;
    if (inputs.sim.bubble_count == 0) return events;
    events.reserve(inputs.sim.bubble_count);

    const auto time_density =
        stochastic::formation_time_pdf(inputs.window, inputs.params, inputs.tuning);
    const auto time_sampler = stochastic::TabulatedPdf::build(time_density);

    std::vector<double> times(inputs.sim.bubble_count);
    for (double& t : times) t = time_sampler.sample(rng);
    std::sort(times.begin(), times.end());

    const double t_c = physics::critical_temperature(inputs.params);
    const double sigma = physics::surface_tension(inputs.params);
    const double dom = inputs.sim.domain_size;

    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t_form = times[i];
        const double temp = physics::temperature_at(t_form, inputs.window);
        const double rc_phys =
            physics::critical_radius(temp, inputs.params, t_c, sigma);
        const double rc_grid = inputs.sim.length_scale * rc_phys;
        const auto radius_sampler = stochastic::TabulatedPdf::build(
            stochastic::radius_pdf(temp, inputs.params, rc_phys, inputs.tuning));

        double r0 = inputs.sim.length_scale * radius_sampler.sample(rng);
        bool placed = false;
        for (int attempt = 0; attempt < inputs.sim.max_placement_attempts;
             ++attempt) {
            // First 100 attempts keep the sampled radius and move the center;
            // after that the radius is redrawn too.
            if (attempt >= 100) {
                r0 = inputs.sim.length_scale * radius_sampler.sample(rng);
            }
            const double x = rng.uniform(0.0, dom);
            const double y = rng.uniform(0.0, dom);
            if (overlaps_any(x, y, r0, t_form, events, inputs.sim)) continue;
            events.push_back(BubbleEvent{
                .id = static_cast<int>(events.size()) + 1,
                .t_form = t_form,
                .x = x,
                .y = y,
                .r0 = r0,
                .critical = r0 > rc_grid,
            });
            placed = true;
            break;
        }
        if (!placed) {
            std::ostringstream oss;
            oss << "bubble " << (i + 1) << " of " << times.size()
                << " unplaceable after " << inputs.sim.max_placement_attempts
                << " attempts at t = " << t_form << " s";
            throw PlacementExhausted(std::move(events), oss.str());
        }
    }
    return events;
}

CoverageCurve coverage_timeline(const std::vector<BubbleEvent>& events,
                                const SimConfig& cfg) {
    // Cell-center raster at one cell per grid unit. Because surviving disks
    // only grow, each cell has a single first-covered time; the curve at any
    // sample is the fraction of cells whose cover time has passed. This is
    // exactly the per-sample raster count, computed in one pass.
    const int cells = static_cast<int>(std::lround(cfg.domain_size));
    const double cell = cfg.domain_size / cells;

    std::vector<const BubbleEvent*> critical;
    for (const auto& ev : events) {
        if (ev.critical) critical.push_back(&ev);
    }

    std::vector<double> cover_time;
    cover_time.reserve(static_cast<std::size_t>(cells) * cells);
    for (int iy = 0; iy < cells; ++iy) {
        const double cy = (iy + 0.5) * cell;
        for (int ix = 0; ix < cells; ++ix) {
            const double cx = (ix + 0.5) * cell;
            double best = std::numeric_limits<double>::infinity();
            for (const auto* ev : critical) {
                const double dx = cx - ev->x;
                const double dy = cy - ev->y;
                const double dist = std::sqrt(dx * dx + dy * dy);
                const double reach_time =
                    ev->t_form + std::max(0.0, dist - ev->r0) / cfg.wall_speed;
                best = std::min(best, reach_time);
            }
            cover_time.push_back(best);
        }
    }
    std::sort(cover_time.begin(), cover_time.end());

    const auto samples =
        static_cast<std::size_t>(std::lround(cfg.total_duration * cfg.coverage_rate)) + 1;
    CoverageCurve curve;
    curve.times.resize(samples);
    curve.broken_fraction.resize(samples);
    const double total = static_cast<double>(cover_time.size());
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / cfg.coverage_rate;
        const auto covered = std::upper_bound(cover_time.begin(),
                                              cover_time.end(), t) -
                             cover_time.begin();
        curve.times[k] = t;
        curve.broken_fraction[k] = static_cast<double>(covered) / total;
    }
    curve.physical = is_physical(curve);
    return curve;
}

double nearest_neighbor_spacing(std::span<const BubbleEvent> events) {
    if (events.size() < 2) {
        throw Error(ErrorCode::TooFewEvents,
                    "nearest-neighbor spacing needs >= 2 events");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < events.size(); ++j) {
            if (i == j) continue;
            const double dx = events[i].x - events[j].x;
            const double dy = events[i].y - events[j].y;
            best = std::min(best, std::sqrt(dx * dx + dy * dy));
        }
        sum += best;
    }
    return sum / static_cast<double>(events.size());
}

std::vector<EventTableRow> to_event_table(const std::vector<BubbleEvent>& events,
                                          double total_duration) {
    std::vector<const BubbleEvent*> critical;
    for (const auto& ev : events) {
        if (ev.critical) critical.push_back(&ev);
    }
    std::vector<EventTableRow> rows(critical.size());
    for (std::size_t i = 0; i < critical.size(); ++i) {
        rows[i].id = static_cast<int>(i) + 1;
        rows[i].a = critical[i]->t_form;
        rows[i].b = critical[i]->x;
        rows[i].c = critical[i]->y;
        rows[i].d = total_duration - rows[i].a;
        rows[i].e = (i + 1 < critical.size())
                        ? critical[i + 1]->t_form - rows[i].a
                        : 0.0;
    }
    return rows;
}

bool is_physical(const CoverageCurve& curve) {
    for (std::size_t k = 0; k < curve.times.size(); ++k) {
        if (curve.times[k] > 10.0) break;
        if (curve.broken_fraction[k] >= 1.0 - 1e-9) return true;
    }
    return false;
}

} // namespace ewb::nucleation
