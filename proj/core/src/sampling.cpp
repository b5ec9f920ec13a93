#include "ewb/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ewb/errors.hpp"

namespace ewb::stochastic {

TabulatedPdf TabulatedPdf::build(const std::function<double(double)>& pdf_fn,
                                 double lo, double hi, int knot_count) {
    if (knot_count < 16) {
        throw Error(ErrorCode::InvalidParams, "knot_count must be >= 16");
    }
    if (!(hi > lo)) {
        throw Error(ErrorCode::InvalidParams, "domain must have hi > lo");
    }

    TabulatedPdf tab;
    tab.x_.resize(knot_count);
    tab.density_.resize(knot_count);
    const double step = (hi - lo) / (knot_count - 1);
    for (int i = 0; i < knot_count; ++i) {
        const double x = (i == knot_count - 1) ? hi : lo + i * step;
        double d = pdf_fn(x);
        if (d < -1e-12) {
            std::ostringstream oss;
            oss << "density negative at x = " << x << " (" << d << ")";
            throw Error(ErrorCode::NegativeDensity, oss.str());
        }
        tab.x_[i] = x;
        tab.density_[i] = std::max(d, 0.0);
    }

    tab.cdf_.resize(knot_count);
    tab.cdf_[0] = 0.0;
    for (int i = 1; i < knot_count; ++i) {
        const double dx = tab.x_[i] - tab.x_[i - 1];
        tab.cdf_[i] =
            tab.cdf_[i - 1] + 0.5 * (tab.density_[i] + tab.density_[i - 1]) * dx;
    }
    const double mass = tab.cdf_.back();
    if (!(mass > 0) || !std::isfinite(mass)) {
        throw Error(ErrorCode::ZeroMass, "density integrates to zero mass");
    }
    for (double& c : tab.cdf_) c /= mass;
    tab.cdf_.back() = 1.0;
    return tab;
}

double TabulatedPdf::quantile(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) return x_.front();
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    const double span = cdf_[i] - cdf_[i - 1];
    const double f = span > 0 ? (u - cdf_[i - 1]) / span : 1.0;
    return x_[i - 1] + f * (x_[i] - x_[i - 1]);
}

double TabulatedPdf::sample(RngStream& rng) const {
    return quantile(rng.uniform01());
}

double TabulatedPdf::cdf_at(double x) const {
    if (x <= x_.front()) return 0.0;
    if (x >= x_.back()) return 1.0;
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    const double f = (x - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return cdf_[i - 1] + f * (cdf_[i] - cdf_[i - 1]);
}

} // namespace ewb::stochastic
