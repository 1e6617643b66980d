#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "akms/secrecy.hpp"
#include "oracle.hpp"

using namespace akms;
using channel::ChannelParams;
using secrecy::SecrecyScenario;
using Catch::Approx;

namespace {

const SeriesControl kTight{1000, 1e-12, 2000};

SecrecyScenario symmetric_scenario(double rate = 0.0) {
    ChannelParams p{2.0, 1.0, 1.0, 15.0, 10.0};
    return {p, p, rate};
}

} // namespace

TEST_CASE("threshold_phi", "[secrecy]") {
    CHECK(secrecy::threshold_phi(0.0) == 1.0);
    CHECK(secrecy::threshold_phi(1.0) == 2.0);
    CHECK(secrecy::threshold_phi(0.5) == Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(secrecy::threshold_phi(-0.1), domain_error);
}

TEST_CASE("sop_lower_numeric", "[secrecy]") {
    SECTION("identical links at zero rate give 1/2") {
        auto r = secrecy::sop_lower_numeric(symmetric_scenario());
        CHECK(r.value == Approx(0.5).margin(1e-6));
        CHECK(r.method == secrecy::Method::quadrature);
    }
    SECTION("huge target rate forces outage") {
        auto r = secrecy::sop_lower_numeric(symmetric_scenario(30.0));
        CHECK(r.value == Approx(1.0).margin(1e-6));
    }
    SECTION("monotone in rate target and eavesdropper SNR") {
        SecrecyScenario s = symmetric_scenario();
        s.eve.mean_snr = 1.0;
        double prev = -1.0;
        for (double rt : {0.0, 0.5, 1.0, 2.0, 4.0}) {
            s.rate_target = rt;
            const double v = secrecy::sop_lower_numeric(s).value;
            CHECK(v > prev);
            prev = v;
        }
        s.rate_target = 0.5;
        prev = -1.0;
        for (double ge : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            s.eve.mean_snr = ge;
            const double v = secrecy::sop_lower_numeric(s).value;
            CHECK(v > prev);
            prev = v;
        }
    }
    SECTION("works without common alpha or integer mu") {
        SecrecyScenario s{{2.0, 1.0, 1.7, 5.0, 10.0}, {3.0, 0.5, 1.2, 2.0, 1.0}, 0.5};
        auto r = secrecy::sop_lower_numeric(s);
        CHECK(r.value > 0.0);
        CHECK(r.value < 1.0);
    }
}

TEST_CASE("sop_lower_exact", "[secrecy]") {
    SECTION("identical links at zero rate give 1/2") {
        auto r = secrecy::sop_lower_exact(symmetric_scenario(), kTight);
        CHECK(r.value == Approx(0.5).margin(1e-6));
    }
    SECTION("preconditions") {
        SecrecyScenario bad_alpha{{2.0, 1.0, 1.0, 5.0, 10.0}, {3.0, 1.0, 1.0, 5.0, 1.0}, 0.5};
        CHECK_THROWS_AS(secrecy::sop_lower_exact(bad_alpha), domain_error);
        SecrecyScenario bad_mu{{2.0, 1.0, 1.7, 5.0, 10.0}, {2.0, 1.0, 1.0, 5.0, 1.0}, 0.5};
        CHECK_THROWS_AS(secrecy::sop_lower_exact(bad_mu), domain_error);
    }
    SECTION("agrees with the quadrature oracle") {
        SecrecyScenario s{{2.0, 1.0, 2.0, 15.0, 10.0}, {2.0, 0.5, 1.3, 5.0, 2.0}, 0.5};
        const double exact = secrecy::sop_lower_exact(s, kTight).value;
        const double numeric = secrecy::sop_lower_numeric(s).value;
        CHECK(exact == Approx(numeric).margin(1e-6));
    }
    SECTION("kappa = 0 on both links still matches (single-term series)") {
        SecrecyScenario s{{3.0, 0.0, 2.0, 5.0, 8.0}, {3.0, 0.0, 1.0, 5.0, 2.0}, 1.0};
        const double exact = secrecy::sop_lower_exact(s, kTight).value;
        CHECK(exact == Approx(secrecy::sop_lower_numeric(s).value).margin(1e-6));
    }
}

TEST_CASE("sop_asymptotic", "[secrecy]") {
    SECTION("pure power law in the SNR ratio") {
        SecrecyScenario s{{2.0, 1.0, 2.0, 15.0, 100.0}, {2.0, 1.0, 1.0, 15.0, 1.0}, 0.5};
        const double v1 = secrecy::sop_asymptotic(s, kTight).value;
        s.main.mean_snr *= 2.0;
        const double v2 = secrecy::sop_asymptotic(s, kTight).value;
        const double gain = secrecy::diversity_gain(s.main); // alpha_tilde * mu_h = 2
        CHECK(v1 / v2 == Approx(std::pow(2.0, gain)).epsilon(1e-10));
    }
    SECTION("approaches the numeric value at high SNR") {
        SecrecyScenario s{{2.0, 1.0, 1.0, 15.0, 1e4}, {2.0, 1.0, 1.0, 15.0, 1.0}, 0.5};
        const double asym = secrecy::sop_asymptotic(s, kTight).value;
        const double numeric = secrecy::sop_lower_numeric(s).value;
        CHECK(asym / numeric == Approx(1.0).margin(0.1));
    }
    SECTION("kappa_k = 0 collapses to a few terms") {
        SecrecyScenario s{{2.0, 1.0, 1.0, 5.0, 100.0}, {2.0, 0.0, 1.0, 5.0, 1.0}, 0.5};
        auto r = secrecy::sop_asymptotic(s, kTight);
        CHECK(r.terms_or_evals <= 3);
    }
}

TEST_CASE("diversity_gain", "[secrecy]") {
    CHECK(secrecy::diversity_gain({2.0, 1.0, 1.0, 15.0, 1.0}) == 1.0);
    CHECK(secrecy::diversity_gain({3.0, 0.5, 2.0, 4.0, 1.0}) == 3.0);
    // independent of kappa, m, mean SNR
    CHECK(secrecy::diversity_gain({3.0, 9.0, 2.0, 77.0, 123.0}) == 3.0);
}

TEST_CASE("spsc", "[secrecy]") {
    SECTION("identical links give 1/2") {
        auto r = secrecy::spsc(symmetric_scenario(), kTight);
        CHECK(r.value == Approx(0.5).margin(1e-6));
    }
    SECTION("complement identity with SOP at zero rate") {
        SecrecyScenario s{{2.0, 1.0, 2.0, 15.0, 10.0}, {2.0, 1.0, 1.0, 15.0, 1.0}, 0.7};
        SecrecyScenario s0 = s;
        s0.rate_target = 0.0;
        const double sp = secrecy::spsc(s, kTight).value;
        const double sop0 = secrecy::sop_lower_exact(s0, kTight).value;
        CHECK(sp + sop0 == Approx(1.0).margin(1e-12));
    }
    SECTION("dominant main link drives SPSC to 1") {
        SecrecyScenario s = symmetric_scenario();
        s.main.mean_snr = 1e5; // +50 dB over the eavesdropper
        s.eve.mean_snr = 1.0;
        CHECK(secrecy::spsc(s, kTight).value == Approx(1.0).margin(1e-3));
    }
    SECTION("falls back to quadrature for non-integer mu") {
        SecrecyScenario s{{2.0, 1.0, 1.7, 5.0, 10.0}, {2.0, 1.0, 1.0, 5.0, 1.0}, 0.0};
        auto r = secrecy::spsc(s, kTight);
        CHECK(r.method == secrecy::Method::quadrature);
        CHECK(r.value > 0.5);
    }
}

TEST_CASE("asc", "[secrecy]") {
    SECTION("identical links: I1 = I2 and the breakdown is consistent") {
        auto b = secrecy::asc(symmetric_scenario(), kTight);
        CHECK(b.im1 == Approx(b.im2).margin(1e-7));
        CHECK(b.asc_nats == Approx(b.im1 + b.im2 - b.im3).margin(1e-14));
        CHECK(b.asc_bits == Approx(b.asc_nats / std::log(2.0)).epsilon(1e-14));
        CHECK(b.im1 >= 0.0);
        CHECK(b.im2 >= 0.0);
        CHECK(b.im3 >= 0.0);
    }
    SECTION("vanishing eavesdropper leaves the main link's ergodic capacity") {
        SecrecyScenario s = symmetric_scenario();
        s.eve.mean_snr = 1e-6; // -60 dB
        auto b = secrecy::asc(s, kTight);
        auto link = channel::make_link(s.main);
        const double ergodic =
            oracle::integrate_semi_inf([&](double g) { return std::log1p(g) * channel::pdf(link, g); });
        CHECK(b.asc_nats == Approx(ergodic).margin(1e-3));
    }
    SECTION("matches the clipped-difference expectation computed by 2-D quadrature") {
        // E[(ln(1+gh)-ln(1+gk))^+] via nested independent integrals
        SecrecyScenario s{{2.0, 1.0, 1.0, 5.0, 4.0}, {2.0, 0.5, 1.0, 5.0, 1.0}, 0.0};
        auto h = channel::make_link(s.main);
        auto k = channel::make_link(s.eve);
        const SeriesControl tight = kTight;
        const double expect = oracle::integrate_semi_inf(
            [&](double gh) {
                if (gh <= 0.0) return 0.0;
                const double inner = oracle::integrate(
                    [&](double gk) {
                        if (gk <= 0.0) return 0.0;
                        return (std::log1p(gh) - std::log1p(gk)) * channel::pdf(k, gk);
                    },
                    0.0, gh, 1e-9);
                return channel::pdf(h, gh) * inner;
            },
            1e-8);
        auto b = secrecy::asc(s, tight);
        CHECK(b.asc_nats == Approx(expect).margin(1e-4));
    }
    SECTION("requires common alpha") {
        SecrecyScenario s{{2.0, 1.0, 1.0, 5.0, 10.0}, {3.0, 1.0, 1.0, 5.0, 1.0}, 0.0};
        CHECK_THROWS_AS(secrecy::asc(s), domain_error);
    }
}
