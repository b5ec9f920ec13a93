#ifndef EWB_PHYSICS_HPP
#define EWB_PHYSICS_HPP

#include <optional>
#include <utility>
#include <vector>

namespace ewb::physics {

// Inputs of the finite-temperature quartic Higgs potential
//
//   V(phi, T) = D (T^2 - T0^2) phi^2 - E T phi^3 + (lambda/4) phi^4
//
// with one-loop Standard Model coefficients derived from the gauge boson and
// top masses. Each coefficient can be overridden individually, which is how a
// run is calibrated against a known critical temperature.
struct PotentialParams {
    double higgs_mass = 35.0; // GeV
    double vev        = 246.0;
    double mass_w     = 80.4;
    double mass_z     = 91.2;
    double mass_top   = 120.0;

    std::optional<double> coeff_d;      // dimensionless
    std::optional<double> coeff_e;      // dimensionless
    std::optional<double> coeff_t0_sq;  // GeV^2
    std::optional<double> coeff_lambda; // dimensionless

    double d() const;       // quadratic thermal coefficient
    double e() const;       // cubic (first-order) coefficient
    double t0_sq() const;   // spinodal temperature squared
    double lambda() const;  // quartic coupling

    // Throws Error{InvalidParams} when masses/vev are non-positive or the
    // effective coefficients violate lambda > 0, d > 0, e > 0.
    void validate() const;
};

// Temperature window of the simulated transition and its mapping onto
// simulation seconds. The default window [0.9882, 0.99] * T_c is where the
// formation-time density has real support; times past sim_duration are the
// audio tail where nothing nucleates.
struct TransitionWindow {
    double t_c             = 0.0;  // GeV, set from critical_temperature()
    double temp_start_frac = 0.99;
    double temp_end_frac   = 0.9882;
    double sim_duration    = 10.0; // seconds
    double tail            = 3.0;  // seconds

    double total_duration() const { return sim_duration + tail; }
    double temp_start() const { return temp_start_frac * t_c; }
    double temp_end() const { return temp_end_frac * t_c; }

    void validate() const;
};

// V(phi, T); identically zero at phi = 0 (the symmetric phase is the
// reference level).
double potential(double phi, double temp, const PotentialParams& params);

// dV/dphi.
double potential_dphi(double phi, double temp, const PotentialParams& params);

// The nonzero stationary point that is a local minimum (larger root of
// dV/dphi = 0). Throws Error{NoBrokenMinimum} above the spinodal where only
// phi = 0 exists.
double broken_minimum(double temp, const PotentialParams& params);

// Temperature at which the symmetric and broken minima are degenerate.
// Solved in closed form for the quartic potential; throws
// Error{NoTransition} when the cubic term cannot produce degeneracy.
double critical_temperature(const PotentialParams& params);

// Same quantity via bracketed bisection on the minimum depth. Kept as an
// independent route for cross-checks; tol is in GeV.
double critical_temperature_bisect(const PotentialParams& params,
                                   double tol = 1e-10);

// Latent free-energy difference V(0,T) - V(phi_+,T) >= 0 for temp <= T_c.
double delta_v(double temp, const PotentialParams& params);

// Wall surface tension at T_c: integral of sqrt(2 V(phi, T_c)) over
// [0, phi_+(T_c)] by adaptive quadrature (1e-8 relative). Throws
// Error{QuadratureFailure} if V dips measurably negative inside the range.
double surface_tension(const PotentialParams& params);

// Thin-wall critical radius 2*sigma/delta_v in GeV^-1. Throws
// Error{DivergentRadius} for temp >= t_c. The (t_c, sigma) overload avoids
// recomputing both in hot loops.
double critical_radius(double temp, const PotentialParams& params);
double critical_radius(double temp, const PotentialParams& params,
                       double t_c, double sigma);

// Piecewise-linear wall velocity vs Higgs mass, clamped to the end knots
// outside the table range.
struct WallVelocityTable {
    std::vector<std::pair<double, double>> knots; // (mass GeV, velocity /c)

    // Only the 35 GeV point is anchored; the flanking knots exist so
    // interpolation is exercised and are freely configurable.
    static WallVelocityTable standard_model();

    void validate() const;
};

double wall_velocity(double higgs_mass, const WallVelocityTable& table);

// Linear time -> temperature map over the transition window. Throws
// Error{OutOfWindow} outside [0, sim_duration].
double temperature_at(double t_sim, const TransitionWindow& window);

} // namespace ewb::physics

#endif
