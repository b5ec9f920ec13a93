#ifndef EWB_SAMPLING_HPP
#define EWB_SAMPLING_HPP

#include <functional>
#include <vector>

#include "ewb/rng.hpp"

namespace ewb::stochastic {

// A density function together with the closed interval it lives on.
struct Density {
    std::function<double(double)> pdf;
    double lo = 0.0;
    double hi = 1.0;
};

// Tabulated probability density with a trapezoid-accumulated, normalized CDF
// and linear inverse-CDF lookup. 1024 knots resolve the shipped densities to
// well below every tolerance used in the test suite.
class TabulatedPdf {
public:
    static constexpr int default_knots = 1024;

    // Tabulates pdf_fn on [lo, hi]. Throws ZeroMass if the integral is not
    // strictly positive and NegativeDensity if any knot is below -1e-12
    // (tiny negative values from roundoff are clamped to zero).
    static TabulatedPdf build(const std::function<double(double)>& pdf_fn,
                              double lo, double hi,
                              int knot_count = default_knots);

    static TabulatedPdf build(const Density& density,
                              int knot_count = default_knots) {
        return build(density.pdf, density.lo, density.hi, knot_count);
    }

    // Inverse-CDF of one uniform draw from rng.
    double sample(RngStream& rng) const;

    // Inverse CDF (quantile) for u in [0, 1].
    double quantile(double u) const;

    // CDF by linear interpolation between knots.
    double cdf_at(double x) const;

    double lo() const noexcept { return x_.front(); }
    double hi() const noexcept { return x_.back(); }
    const std::vector<double>& knots() const noexcept { return x_; }
    const std::vector<double>& cdf() const noexcept { return cdf_; }

private:
    std::vector<double> x_;
    std::vector<double> density_;
    std::vector<double> cdf_;
};

} // namespace ewb::stochastic

#endif
