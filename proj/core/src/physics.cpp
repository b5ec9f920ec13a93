#include "ewb/physics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "ewb/errors.hpp"

namespace ewb::physics {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace

double PotentialParams::d() const {
    if (coeff_d) return *coeff_d;
    return (2 * mass_w * mass_w + mass_z * mass_z + 2 * mass_top * mass_top) /
           (8 * vev * vev);
}

double PotentialParams::e() const {
    if (coeff_e) return *coeff_e;
    const double mw3 = mass_w * mass_w * mass_w;
    const double mz3 = mass_z * mass_z * mass_z;
    return (2 * mw3 + mz3) / (4 * kPi * vev * vev * vev);
}

double PotentialParams::t0_sq() const {
    if (coeff_t0_sq) return *coeff_t0_sq;
    const double v2 = vev * vev;
    const double v4 = v2 * v2;
    const double mw4 = std::pow(mass_w, 4);
    const double mz4 = std::pow(mass_z, 4);
    const double mt4 = std::pow(mass_top, 4);
    const double b = 3.0 / (64 * kPi * kPi * v4) * (2 * mw4 + mz4 - 4 * mt4);
    return (higgs_mass * higgs_mass - 8 * b * v2) / (4 * d());
}

double PotentialParams::lambda() const {
    if (coeff_lambda) return *coeff_lambda;
    return higgs_mass * higgs_mass / (2 * vev * vev);
}

void PotentialParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v)) {
            std::ostringstream oss;
            oss << name << " must be strictly positive, got " << v;
            fail(ErrorCode::InvalidParams, oss.str());
        }
    };
    positive(higgs_mass, "higgs_mass");
    positive(vev, "vev");
    positive(mass_w, "mass_w");
    positive(mass_z, "mass_z");
    positive(mass_top, "mass_top");
    positive(lambda(), "coeff_lambda");
    positive(d(), "coeff_d");
    if (!(e() > 0)) {
        fail(ErrorCode::InvalidParams,
             "coeff_e must be > 0 for a first-order transition");
    }
    if (!std::isfinite(t0_sq())) {
        fail(ErrorCode::InvalidParams, "coeff_t0_sq is not finite");
    }
}

void TransitionWindow::validate() const {
    if (!(t_c > 0)) fail(ErrorCode::InvalidParams, "window t_c must be positive");
    if (!(temp_end_frac < temp_start_frac && temp_start_frac < 1.0)) {
        fail(ErrorCode::InvalidParams,
             "window requires temp_end_frac < temp_start_frac < 1");
    }
    if (!(sim_duration > 0)) {
        fail(ErrorCode::InvalidParams, "sim_duration must be positive");
    }
    if (tail < 0) fail(ErrorCode::InvalidParams, "tail must be >= 0");
}

double potential(double phi, double temp, const PotentialParams& params) {
    const double phi2 = phi * phi;
    return params.d() * (temp * temp - params.t0_sq()) * phi2 -
           params.e() * temp * phi2 * phi +
           0.25 * params.lambda() * phi2 * phi2;
}

double potential_dphi(double phi, double temp, const PotentialParams& params) {
    return 2 * params.d() * (temp * temp - params.t0_sq()) * phi -
           3 * params.e() * temp * phi * phi +
           params.lambda() * phi * phi * phi;
}

double broken_minimum(double temp, const PotentialParams& params) {
    // dV/dphi = 0 with phi != 0:  lambda phi^2 - 3 E T phi + 2 D (T^2-T0^2) = 0
    const double a = params.d() * (temp * temp - params.t0_sq());
    const double b = params.e() * temp;
    const double lam = params.lambda();
    const double disc = 9 * b * b - 8 * lam * a;
    if (disc < 0) {
        std::ostringstream oss;
        oss << "no broken minimum at T = " << temp
            << " GeV (above the spinodal)";
        fail(ErrorCode::NoBrokenMinimum, oss.str());
    }
    return (3 * b + std::sqrt(disc)) / (2 * lam);
}

double critical_temperature(const PotentialParams& params) {
    params.validate();
    // Degeneracy of the quartic double well:  D (T^2 - T0^2) = E^2 T^2 / lambda
    // =>  T_c^2 = T0^2 / (1 - E^2 / (lambda D)).
    const double ratio =
        params.e() * params.e() / (params.lambda() * params.d());
    if (!(ratio < 1.0) || !(params.t0_sq() > 0)) {
        fail(ErrorCode::NoTransition,
             "potential admits no degenerate-minima temperature");
    }
    return std::sqrt(params.t0_sq() / (1.0 - ratio));
}

double critical_temperature_bisect(const PotentialParams& params, double tol) {
    params.validate();
    const double t0 = std::sqrt(params.t0_sq());
    // V(phi_+, T) < 0 below T_c and > 0 between T_c and the spinodal.
    auto depth = [&](double temp) {
        return potential(broken_minimum(temp, params), temp, params);
    };
    double lo = t0;
    double hi = 5 * t0;
    // Pull hi below the spinodal where the broken minimum still exists.
    while (hi > lo) {
        const double a = params.d() * (hi * hi - params.t0_sq());
        const double b = params.e() * hi;
        if (9 * b * b - 8 * params.lambda() * a >= 0) break;
        hi = lo + 0.5 * (hi - lo);
    }
    if (!(depth(lo) < 0) || !(depth(hi) > 0)) {
        fail(ErrorCode::NoTransition, "bisection bracket does not span T_c");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (depth(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double delta_v(double temp, const PotentialParams& params) {
    return -potential(broken_minimum(temp, params), temp, params);
}

namespace {

// Adaptive Simpson with explicit error propagation.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) {
        return left + right + delta / 15;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    const double scale = std::max(std::abs(whole), 1e-300);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

} // namespace

double surface_tension(const PotentialParams& params) {
    const double t_c = critical_temperature(params);
    const double phi_plus = broken_minimum(t_c, params);
    // At T_c the quartic is a degenerate double well, so V >= 0 on the whole
    // range; a measurable negative value means the coefficients are broken.
    const double v_scale = std::abs(potential(0.5 * phi_plus, t_c, params));
    auto integrand = [&](double phi) {
        const double v = potential(phi, t_c, params);
        if (v < -1e-9 * v_scale) {
            fail(ErrorCode::QuadratureFailure,
                 "V(phi, T_c) negative inside the wall profile");
        }
        return std::sqrt(2 * std::max(v, 0.0));
    };
    return integrate(integrand, 0.0, phi_plus, 1e-8);
}

double critical_radius(double temp, const PotentialParams& params, double t_c,
                       double sigma) {
    if (temp >= t_c) {
        std::ostringstream oss;
        oss << "critical radius diverges at T = " << temp << " >= T_c = " << t_c;
        fail(ErrorCode::DivergentRadius, oss.str());
    }
    return 2 * sigma / delta_v(temp, params);
}

double critical_radius(double temp, const PotentialParams& params) {
    return critical_radius(temp, params, critical_temperature(params),
                           surface_tension(params));
}

WallVelocityTable WallVelocityTable::standard_model() {
    return WallVelocityTable{{{20.0, 0.30}, {35.0, 0.375}, {50.0, 0.45}}};
}

void WallVelocityTable::validate() const {
    if (knots.size() < 2) {
        fail(ErrorCode::EmptyTable, "wall velocity table needs >= 2 knots");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i].second > 0 && knots[i].second < 1)) {
            fail(ErrorCode::InvalidParams,
                 "wall velocities must lie in (0, 1) c");
        }
        if (i > 0 && !(knots[i].first > knots[i - 1].first)) {
            fail(ErrorCode::InvalidParams,
                 "wall velocity table must be sorted by mass");
        }
    }
}

double wall_velocity(double higgs_mass, const WallVelocityTable& table) {
    table.validate();
    const auto& k = table.knots;
    if (higgs_mass <= k.front().first) return k.front().second;
    if (higgs_mass >= k.back().first) return k.back().second;
    auto it = std::upper_bound(
        k.begin(), k.end(), higgs_mass,
        [](double m, const auto& knot) { return m < knot.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double f = (higgs_mass - lo.first) / (hi.first - lo.first);
    return lo.second + f * (hi.second - lo.second);
}

double temperature_at(double t_sim, const TransitionWindow& window) {
    if (t_sim < 0 || t_sim > window.sim_duration) {
        std::ostringstream oss;
        oss << "t = " << t_sim << " s outside [0, " << window.sim_duration
            << "]";
        fail(ErrorCode::OutOfWindow, oss.str());
    }
    const double frac =
        window.temp_start_frac + (window.temp_end_frac - window.temp_start_frac) *
                                     (t_sim / window.sim_duration);
    return window.t_c * frac;
}

} // namespace ewb::physics
