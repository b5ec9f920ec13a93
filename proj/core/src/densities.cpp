#include "ewb/densities.hpp"

#include <algorithm>
#include <cmath>

#include "ewb/errors.hpp"

namespace ewb::stochastic {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Barrier-normalized fluctuation cost: dF(rho*rc)/dF(rc) = 3 rho^2 - 2 rho^3,
// clamped at its maximum (rho = 1). Fluctuations larger than the critical
// bubble cost the full barrier; the downhill side of dF is not a creation
// cost.
double normalized_cost(double rho) {
    const double r = std::min(rho, 1.0);
    return r * r * (3.0 - 2.0 * r);
}

} // namespace

Density radius_pdf(double temp, const physics::PotentialParams& params,
                   double rc, const DensityTuning& tuning) {
    const double t_c = physics::critical_temperature(params);
    if (temp >= t_c) {
        throw Error(ErrorCode::DivergentRadius,
                    "radius density undefined at or above T_c");
    }
    if (!(rc > 0)) {
        throw Error(ErrorCode::InvalidParams, "rc must be positive");
    }

    // beta slides linearly in T across the default transition window and is
    // clamped outside it.
    const physics::TransitionWindow window{.t_c = t_c};
    const double t_start = window.temp_start();
    const double t_end = window.temp_end();
    const double w =
        std::clamp((t_start - temp) / (t_start - t_end), 0.0, 1.0);
    const double beta = tuning.radius_beta_start +
                        (tuning.radius_beta_end - tuning.radius_beta_start) * w;

    Density density;
    density.lo = 0.0;
    density.hi = 2.0 * rc;
    density.pdf = [rc, beta](double r) {
        return std::exp(-beta * normalized_cost(r / rc));
    };
    return density;
}

Density formation_time_pdf(const physics::TransitionWindow& window,
                           const physics::PotentialParams& params,
                           const DensityTuning& tuning) {
    window.validate();
    const double sigma = physics::surface_tension(params);
    const double sigma3 = sigma * sigma * sigma;

    auto action = [&params, sigma3](double temp) {
        const double dv = physics::delta_v(temp, params);
        return 16.0 * kPi * sigma3 / (3.0 * dv * dv * temp);
    };

    const double s_start = action(window.temp_start());
    const double s_end = action(window.temp_end());
    const double span = s_start - s_end;
    const double contrast = tuning.time_contrast;
    const double t_c = window.t_c;

    Density density;
    density.lo = 0.0;
    density.hi = window.sim_duration;
    density.pdf = [window, action, s_end, span, contrast, t_c](double t) {
        const double temp = physics::temperature_at(t, window);
        const double s_hat = span > 0 ? (action(temp) - s_end) / span : 0.0;
        const double prefactor = std::pow(temp / t_c, 4);
        return prefactor * std::exp(-contrast * s_hat);
    };
    return density;
}

} // namespace ewb::stochastic
