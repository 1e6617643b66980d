#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "akms/channel.hpp"
#include "akms/montecarlo.hpp"
#include "oracle.hpp"

using namespace akms;
using channel::ChannelParams;
using Catch::Approx;

namespace {

const SeriesControl kTight{1000, 1e-12, 2000};

double pdf_quad_cdf(const channel::Link& link, double gamma) {
    return oracle::integrate([&](double g) { return g <= 0.0 ? 0.0 : channel::pdf(link, g); }, 0.0,
                             gamma, 1e-12);
}

} // namespace

TEST_CASE("derived constants", "[channel]") {
    SECTION("Rayleigh collapse") {
        auto k = channel::derive_constants({2.0, 0.0, 1.0, 1.0, 1.0});
        CHECK(k.alpha_tilde == 1.0);
        CHECK(k.c == Approx(1.0).epsilon(1e-13));
        CHECK(k.a == Approx(1.0).epsilon(1e-13));
        CHECK(k.b == Approx(1.0).epsilon(1e-13));
        CHECK(k.d == 0.0);
    }
    SECTION("d vanishes iff kappa = 0") {
        CHECK(channel::derive_constants({3.0, 0.0, 2.5, 7.0, 4.0}).d == 0.0);
        CHECK(channel::derive_constants({3.0, 0.1, 2.5, 7.0, 4.0}).d > 0.0);
    }
    SECTION("b = 1/(c * mean_snr^alpha_tilde) as constructed") {
        ChannelParams p{3.0, 2.0, 1.5, 5.0, 7.0};
        auto k = channel::derive_constants(p);
        CHECK(k.b == Approx(1.0 / (k.c * std::pow(p.mean_snr, k.alpha_tilde))).epsilon(1e-13));
    }
    SECTION("normalization oracle") {
        auto link = channel::make_link({2.0, 1.0, 1.0, 15.0, 1.0});
        const double norm = oracle::integrate_semi_inf([&](double g) { return channel::pdf(link, g); });
        CHECK(norm == Approx(1.0).margin(1e-8));
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(channel::derive_constants({0.0, 1.0, 1.0, 1.0, 1.0}), domain_error);
        CHECK_THROWS_AS(channel::derive_constants({2.0, -0.1, 1.0, 1.0, 1.0}), domain_error);
        CHECK_THROWS_AS(channel::derive_constants({2.0, 1.0, 1.0, 1.0, 0.0}), domain_error);
    }
}

TEST_CASE("pdf", "[channel]") {
    SECTION("Rayleigh reduction: pdf(g) = e^-g") {
        auto link = channel::make_link({2.0, 0.0, 1.0, 1.0, 1.0});
        for (double g : {0.1, 0.7, 2.0, 5.0})
            CHECK(channel::pdf(link, g) == Approx(std::exp(-g)).epsilon(1e-12));
    }
    SECTION("vanishes at the origin when alpha_tilde*mu > 1") {
        auto link = channel::make_link({3.0, 1.0, 2.0, 5.0, 1.0});
        CHECK(channel::pdf(link, 1e-12) < 1e-10);
    }
    SECTION("series form matches the direct form") {
        auto link = channel::make_link({3.0, 2.0, 2.0, 5.0, 2.0});
        auto s = channel::pdf_series(link, 1.3, kTight);
        CHECK(s.value == Approx(channel::pdf(link, 1.3)).epsilon(1e-9));
    }
    SECTION("mean equals mean_snr") {
        auto link = channel::make_link({2.5, 3.0, 2.0, 4.0, 3.5});
        const double mean =
            oracle::integrate_semi_inf([&](double g) { return g * channel::pdf(link, g); });
        CHECK(mean == Approx(3.5).epsilon(1e-7));
    }
}

TEST_CASE("pdf_series truncation accounting", "[channel]") {
    SECTION("kappa = 0 collapses to the leading term") {
        auto link = channel::make_link({2.0, 0.0, 2.0, 3.0, 1.5});
        auto s = channel::pdf_series(link, 0.8, SeriesControl{});
        CHECK(s.value == Approx(channel::pdf(link, 0.8)).epsilon(1e-13));
        CHECK(s.trunc_estimate == 0.0);
    }
    SECTION("truncation bound |series - pdf| <= trunc_estimate scale") {
        auto link = channel::make_link({2.0, 1.0, 1.0, 15.0, 1.0});
        for (double g : {0.3, 1.0, 2.0, 4.0}) {
            auto s = channel::pdf_series(link, g, SeriesControl{8, 1e-300, 200});
            const double exact = channel::pdf(link, g);
            // positive-term series truncated below its limit
            CHECK(s.value <= exact * (1.0 + 1e-12));
            CHECK(std::abs(s.value - exact) <= 2.0 * std::max(s.trunc_estimate, 1e-18));
        }
    }
    SECTION("reference config converges within 20 terms at 1e-4") {
        auto link = channel::make_link({2.0, 1.0, 1.0, 15.0, 1.0});
        auto s = channel::pdf_series(link, 2.0, SeriesControl{20, 1e-4, 200});
        CHECK(s.terms_used <= 20);
        CHECK(s.value == Approx(channel::pdf(link, 2.0)).epsilon(1e-3));
    }
    SECTION("hard cap error carries the partial value") {
        auto link = channel::make_link({2.0, 8.0, 3.0, 0.5, 1.0});
        try {
            channel::pdf_series(link, 1.0, SeriesControl{4, 1e-300, 4});
            FAIL("expected convergence_error");
        } catch (const convergence_error& e) {
            CHECK(e.partial_value > 0.0);
            CHECK(e.partial_value < channel::pdf(link, 1.0));
        }
    }
}

TEST_CASE("cdf_general", "[channel]") {
    SECTION("zero at the origin") {
        auto link = channel::make_link({2.0, 1.0, 1.7, 5.0, 2.0});
        CHECK(channel::cdf_general(link, 0.0) == 0.0);
    }
    SECTION("Rayleigh reduction") {
        auto link = channel::make_link({2.0, 0.0, 1.0, 1.0, 2.0});
        for (double g : {0.2, 1.0, 3.0, 8.0})
            CHECK(channel::cdf_general(link, g, kTight) == Approx(-std::expm1(-g / 2.0)).epsilon(1e-11));
    }
    SECTION("matches quadrature of the pdf, non-integer mu") {
        auto link = channel::make_link({3.0, 2.0, 1.7, 5.0, 2.0});
        CHECK(channel::cdf_general(link, 1.0, kTight) == Approx(pdf_quad_cdf(link, 1.0)).margin(1e-8));
    }
    SECTION("non-decreasing and saturating") {
        auto link = channel::make_link({2.5, 1.5, 2.0, 3.0, 1.0});
        double prev = 0.0;
        for (double g = 0.0; g <= 20.0; g += 0.5) {
            const double v = channel::cdf_general(link, g, kTight);
            CHECK(v >= prev - 1e-14);
            CHECK(v <= 1.0);
            prev = v;
        }
        CHECK(prev == Approx(1.0).margin(1e-6));
    }
    SECTION("derivative recovers the pdf") {
        auto link = channel::make_link({2.0, 1.0, 2.0, 4.0, 1.5});
        for (double g : {0.5, 1.0, 2.5}) {
            const double h = 1e-5 * g;
            const double fd = (channel::cdf_general(link, g + h, kTight) -
                               channel::cdf_general(link, g - h, kTight)) /
                              (2.0 * h);
            CHECK(fd == Approx(channel::pdf(link, g)).epsilon(1e-5));
        }
    }
}

TEST_CASE("cdf_series (integer mu)", "[channel]") {
    SECTION("rejects non-integer mu") {
        auto link = channel::make_link({2.0, 1.0, 1.7, 5.0, 2.0});
        CHECK_THROWS_AS(channel::cdf_series(link, 1.0), domain_error);
    }
    SECTION("Rayleigh reduction") {
        auto link = channel::make_link({2.0, 0.0, 1.0, 1.0, 3.0});
        for (double g : {0.2, 1.0, 3.0})
            CHECK(channel::cdf_series(link, g, kTight) == Approx(-std::expm1(-g / 3.0)).epsilon(1e-11));
    }
    SECTION("agrees with cdf_general across gamma") {
        for (double mu : {1.0, 2.0, 3.0}) {
            auto link = channel::make_link({2.0, 1.0, mu, 15.0, 1.0});
            for (double g = 0.1; g <= 6.0; g += 0.35)
                CHECK(channel::cdf_series(link, g, kTight) ==
                      Approx(channel::cdf_general(link, g, kTight)).margin(1e-9));
        }
    }
    SECTION("value at 0 is 0 (normalization identity)") {
        auto link = channel::make_link({3.0, 2.0, 2.0, 5.0, 1.0});
        CHECK(channel::cdf_series(link, 0.0) == 0.0);
    }
}

TEST_CASE("cdf_asymptotic", "[channel]") {
    SECTION("Rayleigh reduction: g/mean") {
        auto link = channel::make_link({2.0, 0.0, 1.0, 1.0, 4.0});
        CHECK(channel::cdf_asymptotic(link, 0.3) == Approx(0.3 / 4.0).epsilon(1e-12));
    }
    SECTION("ratio to the true CDF tends to 1 at the origin") {
        auto link = channel::make_link({3.0, 1.0, 2.0, 4.0, 1.0});
        double prev_err = 1e9;
        for (double g : {0.3, 0.1, 0.03, 0.01}) {
            const double ratio =
                channel::cdf_asymptotic(link, g) / channel::cdf_general(link, g, kTight);
            const double err = std::abs(ratio - 1.0);
            CHECK(err < prev_err + 1e-12);
            prev_err = err;
        }
        CHECK(prev_err < 1e-3);
    }
    SECTION("pure power law with slope alpha_tilde*mu") {
        auto link = channel::make_link({3.0, 1.0, 2.0, 4.0, 1.0});
        const double slope = (std::log(channel::cdf_asymptotic(link, 0.2)) -
                              std::log(channel::cdf_asymptotic(link, 0.1))) /
                             (std::log(0.2) - std::log(0.1));
        CHECK(slope == Approx(1.5 * 2.0).epsilon(1e-12));
    }
}

TEST_CASE("inverse CDF sampling", "[channel]") {
    SECTION("Rayleigh median") {
        auto link = channel::make_link({2.0, 0.0, 1.0, 1.0, 2.0});
        CHECK(channel::sample_inverse_cdf(link, 0.5) == Approx(2.0 * std::log(2.0)).epsilon(1e-9));
    }
    SECTION("round trip across quantiles") {
        auto link = channel::make_link({2.5, 2.0, 1.5, 5.0, 1.3});
        for (double u = 0.01; u < 1.0; u += 0.07) {
            const double g = channel::sample_inverse_cdf(link, u);
            CHECK(channel::cdf_general(link, g, channel::kInversionSeriesControl) ==
                  Approx(u).margin(1.1e-10));
        }
    }
    SECTION("domain errors") {
        auto link = channel::make_link({2.0, 0.0, 1.0, 1.0, 1.0});
        CHECK_THROWS_AS(channel::sample_inverse_cdf(link, 0.0), domain_error);
        CHECK_THROWS_AS(channel::sample_inverse_cdf(link, 1.0), domain_error);
    }
    SECTION("empirical distribution passes a KS test at the 1% level") {
        auto link = channel::make_link({2.0, 1.0, 2.0, 15.0, 1.0});
        mc::InverseCdfTable table(link);
        const std::uint64_t n = 100000;
        const std::uint64_t seed = mc::detail::substream_seed(7, 0);
        std::vector<double> samples(n);
        for (std::uint64_t i = 0; i < n; ++i) samples[i] = table(mc::detail::uniform_at(seed, i));
        std::sort(samples.begin(), samples.end());
        double ks = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double F = channel::cdf_general(link, samples[i], kTight);
            ks = std::max(ks, std::abs(F - (i + 1.0) / n));
            ks = std::max(ks, std::abs(F - static_cast<double>(i) / n));
        }
        const double crit_1pct = 1.6276 / std::sqrt(static_cast<double>(n));
        CHECK(ks < crit_1pct);
    }
}
