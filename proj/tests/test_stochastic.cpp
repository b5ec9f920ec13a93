#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ewb/densities.hpp"
#include "ewb/errors.hpp"
#include "ewb/physics.hpp"
#include "ewb/rng.hpp"
#include "ewb/sampling.hpp"

using namespace ewb;
using namespace ewb::stochastic;
using doctest::Approx;

namespace {

// Kolmogorov-Smirnov statistic of samples against a reference CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = cdf(samples[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(c - static_cast<double>(i + 1) / n));
    }
    return d;
}

physics::PotentialParams defaults() { return {}; }

} // namespace

TEST_CASE("rng streams are deterministic and independent") {
    SUBCASE("same seed and stream reproduce the sequence") {
        RngStream a(1234, StreamId::nucleation);
        RngStream b(1234, StreamId::nucleation);
        for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    }

    SUBCASE("distinct stream ids diverge immediately") {
        RngStream a(1234, StreamId::nucleation);
        RngStream b(1234, StreamId::dust);
        RngStream c(1234, StreamId::frames);
        CHECK(a.next_u64() != b.next_u64());
        CHECK(b.next_u64() != c.next_u64());
    }

    SUBCASE("substreams diverge") {
        RngStream a(1234, StreamId::frames, 0);
        RngStream b(1234, StreamId::frames, 1);
        CHECK(a.next_u64() != b.next_u64());
    }

    SUBCASE("uniform01 stays inside the open interval") {
        RngStream rng(7, StreamId::dust);
        for (int i = 0; i < 100000; ++i) {
            const double u = rng.uniform01();
            CHECK(u > 0.0);
            CHECK(u < 1.0);
        }
    }
}

TEST_CASE("tabulated pdf construction") {
    SUBCASE("uniform density has the identity CDF at every knot") {
        const auto tab =
            TabulatedPdf::build([](double) { return 1.0; }, 0.0, 1.0, 64);
        for (std::size_t i = 0; i < tab.knots().size(); ++i) {
            CHECK(tab.cdf()[i] == Approx(tab.knots()[i]).epsilon(1e-12));
        }
    }

    SUBCASE("linear density 2x reproduces the quadratic CDF") {
        const auto tab =
            TabulatedPdf::build([](double x) { return 2.0 * x; }, 0.0, 1.0);
        CHECK(tab.cdf_at(0.5) == Approx(0.25).epsilon(1e-3));
    }

    SUBCASE("zero-mass densities are rejected") {
        try {
            (void)TabulatedPdf::build([](double) { return 0.0; }, 0.0, 1.0);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ZeroMass);
        }
    }

    SUBCASE("negative densities are rejected") {
        try {
            (void)TabulatedPdf::build([](double x) { return 0.5 - x; }, 0.0, 1.0);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NegativeDensity);
        }
    }

    SUBCASE("roundoff-scale negatives are clamped, not rejected") {
        CHECK_NOTHROW((void)TabulatedPdf::build(
            [](double x) { return x < 0.5 ? -5e-13 : 1.0; }, 0.0, 1.0));
    }

    SUBCASE("too few knots") {
        CHECK_THROWS_AS(
            (void)TabulatedPdf::build([](double) { return 1.0; }, 0.0, 1.0, 8),
            const Error&);
    }
}

TEST_CASE("inverse-transform sampling") {
    const auto tab = TabulatedPdf::build([](double) { return 1.0; }, 0.0, 1.0);

    SUBCASE("samples stay inside the domain") {
        const auto tri =
            TabulatedPdf::build([](double x) { return x; }, 2.0, 5.0);
        RngStream rng(99, StreamId::nucleation);
        for (int i = 0; i < 10000; ++i) {
            const double s = tri.sample(rng);
            CHECK(s >= 2.0);
            CHECK(s <= 5.0);
        }
    }

    SUBCASE("uniform KS statistic below 0.01 at 1e5 samples") {
        RngStream rng(42, StreamId::nucleation);
        std::vector<double> samples(100000);
        for (double& s : samples) s = tab.sample(rng);
        CHECK(ks_statistic(std::move(samples),
                           [](double x) { return x; }) < 0.01);
    }

    SUBCASE("fixed seed reproduces the identical sample sequence") {
        RngStream a(7, StreamId::nucleation);
        RngStream b(7, StreamId::nucleation);
        for (int i = 0; i < 1000; ++i) CHECK(tab.sample(a) == tab.sample(b));
    }

    SUBCASE("histogram round trip reproduces the CDF within 0.02") {
        // Sample, re-tabulate the empirical histogram as a density, and
        // compare its CDF with the source.
        const auto source =
            TabulatedPdf::build([](double x) { return std::exp(-x); }, 0.0, 4.0);
        RngStream rng(5, StreamId::nucleation);
        const int bins = 64;
        std::vector<double> histogram(bins, 0.0);
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double s = source.sample(rng);
            const int b = std::min(bins - 1, static_cast<int>(s / 4.0 * bins));
            histogram[static_cast<std::size_t>(b)] += 1.0;
        }
        const auto rebuilt = TabulatedPdf::build(
            [&histogram, bins](double x) {
                const int b =
                    std::clamp(static_cast<int>(x / 4.0 * bins), 0, bins - 1);
                return histogram[static_cast<std::size_t>(b)];
            },
            0.0, 4.0);
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = 4.0 * i / 200.0;
            sup = std::max(sup, std::abs(rebuilt.cdf_at(x) - source.cdf_at(x)));
        }
        CHECK(sup < 0.02);
    }
}

TEST_CASE("radius density") {
    const auto p = defaults();
    const double t_c = physics::critical_temperature(p);
    const double sigma = physics::surface_tension(p);

    SUBCASE("mass below the critical radius exceeds 1/2 at window start") {
        const double temp = 0.99 * t_c;
        const double rc = physics::critical_radius(temp, p, t_c, sigma);
        const auto density = radius_pdf(temp, p, rc);
        // Trapezoid oracle on the raw density.
        const int n = 20000;
        double below = 0.0;
        double total = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double r = density.lo + (density.hi - density.lo) * i / n;
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            const double d = density.pdf(r);
            total += w * d;
            if (r <= rc) below += w * d;
        }
        CHECK(below / total > 0.5);
    }

    SUBCASE("strictly positive on the open domain") {
        const double temp = 0.989 * t_c;
        const double rc = physics::critical_radius(temp, p, t_c, sigma);
        const auto density = radius_pdf(temp, p, rc);
        for (int i = 1; i <= 100; ++i) {
            CHECK(density.pdf(density.hi * i / 100.0) > 0.0);
        }
    }

    SUBCASE("tabulated CDF is normalized") {
        const double temp = 0.989 * t_c;
        const double rc = physics::critical_radius(temp, p, t_c, sigma);
        const auto tab = TabulatedPdf::build(radius_pdf(temp, p, rc));
        CHECK(tab.cdf().back() == Approx(1.0).epsilon(1e-9));
        CHECK(tab.cdf().front() == 0.0);
    }

    SUBCASE("rejects temperatures at or above T_c") {
        try {
            (void)radius_pdf(t_c, p, 1.0);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DivergentRadius);
        }
    }

    SUBCASE("shrink bias fades as the window cools") {
        auto below_mass = [&](double temp) {
            const double rc = physics::critical_radius(temp, p, t_c, sigma);
            const auto density = radius_pdf(temp, p, rc);
            const int n = 20000;
            double below = 0.0;
            double total = 0.0;
            for (int i = 0; i <= n; ++i) {
                const double r = density.lo + (density.hi - density.lo) * i / n;
                const double w = (i == 0 || i == n) ? 0.5 : 1.0;
                const double d = density.pdf(r);
                total += w * d;
                if (r <= rc) below += w * d;
            }
            return below / total;
        };
        CHECK(below_mass(0.99 * t_c) > below_mass(0.9882 * t_c));
        // Near the window end the split approaches even odds.
        CHECK(below_mass(0.9882 * t_c) < 0.62);
    }
}

TEST_CASE("formation-time density") {
    const auto p = defaults();
    physics::TransitionWindow window;
    window.t_c = physics::critical_temperature(p);
    const auto density = formation_time_pdf(window, p);

    SUBCASE("later formation is more likely") {
        CHECK(density.pdf(9.9) > density.pdf(0.1));
    }

    SUBCASE("monotone nondecreasing over a 1000-point scan") {
        double prev = -1.0;
        for (int i = 0; i <= 1000; ++i) {
            const double t = 10.0 * i / 1000.0;
            const double d = density.pdf(t);
            CHECK(d >= prev);
            CHECK(std::isfinite(d));
            CHECK(d >= 0.0);
            prev = d;
        }
    }

    SUBCASE("mean sampled formation time is in the second half") {
        const auto tab = TabulatedPdf::build(density);
        RngStream rng(11, StreamId::nucleation);
        double sum = 0.0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) sum += tab.sample(rng);
        CHECK(sum / n > 5.0);
    }

    SUBCASE("KS of 1e5 samples against the tabulated CDF below 0.01") {
        const auto tab = TabulatedPdf::build(density);
        RngStream rng(13, StreamId::nucleation);
        std::vector<double> samples(100000);
        for (double& s : samples) s = tab.sample(rng);
        CHECK(ks_statistic(std::move(samples), [&tab](double x) {
                  return tab.cdf_at(x);
              }) < 0.01);
    }
}

TEST_CASE("KS check for the shipped radius density") {
    const auto p = defaults();
    const double t_c = physics::critical_temperature(p);
    const double sigma = physics::surface_tension(p);
    const double temp = 0.9891 * t_c;
    const double rc = physics::critical_radius(temp, p, t_c, sigma);
    const auto tab = TabulatedPdf::build(radius_pdf(temp, p, rc));
    RngStream rng(17, StreamId::nucleation);
    std::vector<double> samples(100000);
    for (double& s : samples) s = tab.sample(rng);
    CHECK(ks_statistic(std::move(samples),
                       [&tab](double x) { return tab.cdf_at(x); }) < 0.01);
}
