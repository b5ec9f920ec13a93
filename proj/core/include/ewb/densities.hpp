#ifndef EWB_DENSITIES_HPP
#define EWB_DENSITIES_HPP

#include "ewb/physics.hpp"
#include "ewb/sampling.hpp"

namespace ewb::stochastic {

// Shape parameters of the shipped default densities. Both densities are
// thermodynamic Boltzmann weights whose exponent is measured in units of the
// thin-wall barrier height; the raw GeV-scale exponents (order 10^2) would
// collapse all probability mass into sub-permille slivers, so the contrast
// knobs below set how many e-folds of suppression span the window. Any
// replacement density can be injected by sampling from a caller-supplied
// Density instead.
struct DensityTuning {
    // exp(-beta * dF(min(r, R_c)) / dF(R_c)) radius weight; beta slides
    // linearly in temperature from beta at window start (strong bias toward
    // subcritical radii) to beta at window end (nearly flat).
    double radius_beta_start = 3.0;
    double radius_beta_end   = 0.8;
    // e-folds of nucleation-rate suppression between window start and end;
    // the density rises by exp(time_contrast) across the window.
    double time_contrast = 1.2;
};

// Initial-radius density at fixed temperature, supported on (0, 2*rc].
// rc is the critical radius at that temperature in the same length units as
// the returned domain. Weight exp(-dF_cost(r)/Theta) with the fluctuation
// cost clamped at the barrier: dF_cost(r) = dF(min(r, rc)),
// dF(r) = 4 pi sigma r^2 - (4/3) pi dV r^3, Theta = dF(rc)/beta_eff(T).
// Mass sits mostly below rc near the window start and spreads toward flat by
// the window end. Throws Error{DivergentRadius} when temp >= T_c.
Density radius_pdf(double temp, const physics::PotentialParams& params,
                   double rc, const DensityTuning& tuning = {});

// Formation-time density over [0, sim_duration]:
//   P_t(t) ~ T(t)^4 * exp(-time_contrast * S(T(t)))
// where S is the thin-wall action 16 pi sigma^3 / (3 dV^2 T) rescaled to
// [0, 1] across the window. Monotonically increasing in t: bubbles are far
// more likely to form near the end of the transition.
Density formation_time_pdf(const physics::TransitionWindow& window,
                           const physics::PotentialParams& params,
                           const DensityTuning& tuning = {});

} // namespace ewb::stochastic

#endif
