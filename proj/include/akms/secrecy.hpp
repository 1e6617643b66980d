#ifndef AKMS_SECRECY_HPP
#define AKMS_SECRECY_HPP

#include <cmath>
#include <string>
#include <vector>

#include "akms/channel.hpp"
#include "akms/control.hpp"
#include "akms/error.hpp"
#include "akms/quadrature.hpp"
#include "akms/specfun.hpp"

namespace akms::secrecy {

using channel::ChannelParams;
using channel::Link;

/// Main link, eavesdropper link and the target secrecy rate (bits/s/Hz).
struct SecrecyScenario {
    ChannelParams main;
    ChannelParams eve;
    double rate_target = 0.0;

    void validate() const {
        main.validate();
        eve.validate();
        if (!(rate_target >= 0.0) || !std::isfinite(rate_target))
            throw domain_error("SecrecyScenario: rate_target must be >= 0");
    }

    bool common_alpha() const { return main.alpha == eve.alpha; }
};

enum class Method { series, quadrature, asymptotic, montecarlo };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::quadrature: return "quadrature";
        case Method::asymptotic: return "asymptotic";
        case Method::montecarlo: return "montecarlo";
    }
    return "?";
}

/// Metric value with its truncation/quadrature error accounting.
struct MetricResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long terms_or_evals = 0;
    Method method = Method::series;
    bool clamped = false; // probability fell outside [0,1] by round-off and was clamped
};

/// The three ergodic-capacity integrals and their combination.
struct AscBreakdown {
    double im1 = 0.0;
    double im2 = 0.0;
    double im3 = 0.0;
    double asc_nats = 0.0;
    double asc_bits = 0.0;
    double error_estimate = 0.0;
    long evals = 0;
};

/// SNR threshold of the outage lower bound: phi = 2^{rate_target}.
inline double threshold_phi(double rate_target) {
    if (!(rate_target >= 0.0)) throw domain_error("threshold_phi: rate_target must be >= 0");
    return std::exp2(rate_target);
}

namespace detail {

inline void clamp_probability(MetricResult& r) {
    if (r.value < 0.0 || r.value > 1.0) {
        r.error_estimate += std::max(-r.value, r.value - 1.0);
        r.value = std::min(1.0, std::max(0.0, r.value));
        r.clamped = true;
    }
}

// Tight truncation used when a series stands in as a reference route.
inline constexpr SeriesControl kTightCtrl{1000, 1e-12, 2000};

// Approximate location of the bulk of a link's distribution, used to seed
// quadrature subdivision.
inline double mode_hint(const Link& link) {
    const auto& k = link.consts;
    const double atmu = k.alpha_tilde * link.params.mu;
    if (atmu > 1.0) {
        const double ga = (atmu - 1.0) / (k.alpha_tilde * k.b);
        return std::pow(ga, 1.0 / k.alpha_tilde);
    }
    return link.params.mean_snr;
}

} // namespace detail

/// Numeric reference for the outage lower bound:
///   SOP_L = int_0^inf F_h(phi g) f_k(g) dg
/// by adaptive quadrature; no common-alpha or integer-mu restriction.
inline MetricResult sop_lower_numeric(const SecrecyScenario& s) {
    s.validate();
    const Link h = channel::make_link(s.main);
    const Link k = channel::make_link(s.eve);
    const double phi = threshold_phi(s.rate_target);
    auto integrand = [&](double g) {
        return channel::cdf_general(h, phi * g, detail::kTightCtrl) * channel::pdf(k, g);
    };
    auto q = quad::integrate_semi_infinite(integrand, 1e-10, 1e-8,
                                           {detail::mode_hint(k), detail::mode_hint(h) / phi});
    MetricResult r;
    r.value = q.value;
    r.error_estimate = q.error_estimate;
    r.terms_or_evals = q.n_evals;
    r.method = Method::quadrature;
    detail::clamp_probability(r);
    return r;
}

/// Exact double-series outage lower bound. Requires a common alpha on both
/// links and integer mu on the main link.
inline MetricResult sop_lower_exact(const SecrecyScenario& s, const SeriesControl& ctrl = {}) {
    s.validate();
    ctrl.validate();
    if (!s.common_alpha())
        throw domain_error("sop_lower_exact: requires main.alpha == eve.alpha");
    if (!s.main.integer_mu())
        throw domain_error("sop_lower_exact: requires integer mu on the main link");

    const Link h = channel::make_link(s.main);
    const Link k = channel::make_link(s.eve);
    const auto& ch = h.consts;
    const auto& ck = k.consts;
    const double at = ch.alpha_tilde;
    const double phi = threshold_phi(s.rate_target);
    const double ln_phi_at = at * std::log(phi);
    const int mu_h = static_cast<int>(std::round(s.main.mu));
    // b_k + b_h phi^at, in log space
    const double ln_bsum = std::log(ck.b + ch.b * std::exp(ln_phi_at));
    const double ln_lnat = std::log(at);

    MetricResult r;
    r.method = Method::series;
    double total = 0.0;
    long terms = 0;
    double omitted = 0.0;

    auto ln_coeff_h = [&](int j) { return channel::detail::ln_series_coeff(s.main, ch, j); };
    auto ln_coeff_k = [&](int j) { return channel::detail::ln_series_coeff(s.eve, ck, j); };

    // Innermost series over the eavesdropper expansion index. max_terms is
    // the truncation knob of the outer expansion only; this sum always runs
    // to its relative-tolerance stop so the outer cap alone controls the
    // reported truncation level.
    auto inner_k = [&](int l_h) {
        const double base = ck.ln_a - ln_lnat;
        double sum = 0.0;
        double t = 0.0;
        for (int jk = 0; jk < ctrl.hard_cap; ++jk) {
            const double lt = base + ln_coeff_k(jk) - specfun::ln_gamma(s.eve.mu + jk) +
                              specfun::ln_gamma(s.eve.mu + jk + l_h) -
                              (s.eve.mu + jk + l_h) * ln_bsum;
            t = std::exp(lt);
            sum += t;
            ++terms;
            if (jk >= 2 && t <= ctrl.rel_tol * sum) return sum;
        }
        if (t > ctrl.rel_tol * sum)
            throw convergence_error("sop_lower_exact: inner series cap reached before convergence",
                                    sum, t);
        return sum;
    };

    for (int jh = 0; jh < ctrl.max_terms; ++jh) {
        // B_h coefficient (log), with Gamma(mu_h+j_h) restored
        const double lw_h = ch.ln_a - ln_lnat + ln_coeff_h(jh) - (s.main.mu + jh) * ch.ln_b;
        double contrib = 0.0;
        double ln_l = 0.0; // ln( (phi^at b_h)^l / l! )
        for (int lh = 0; lh < mu_h + jh; ++lh) {
            if (lh > 0) ln_l += ln_phi_at + ch.ln_b - std::log(static_cast<double>(lh));
            contrib += std::exp(lw_h + ln_l) * inner_k(lh);
        }
        total += contrib;
        if (jh >= 2 && contrib <= ctrl.rel_tol * total) {
            omitted += contrib;
            break;
        }
        if (jh == ctrl.max_terms - 1) {
            omitted += contrib;
            if (ctrl.max_terms >= ctrl.hard_cap && contrib > ctrl.rel_tol * total)
                throw convergence_error("sop_lower_exact: series cap reached before convergence",
                                        1.0 - total, contrib);
        }
    }

    r.value = 1.0 - total;
    r.error_estimate = omitted;
    r.terms_or_evals = terms;
    detail::clamp_probability(r);
    return r;
}

/// High-SNR outage lower bound, valid as mean_snr of the main link grows
/// with the eavesdropper's fixed. Requires a common alpha.
/// NOTE: the SNR-ratio/threshold exponent here is alpha_tilde*mu_h
/// (= diversity gain); it is sometimes printed as alpha*mu_h, but the
/// small-argument CDF expansion and the measured log-log outage slope both
/// give alpha/2 * mu_h.
inline MetricResult sop_asymptotic(const SecrecyScenario& s, const SeriesControl& ctrl = {}) {
    s.validate();
    ctrl.validate();
    if (!s.common_alpha())
        throw domain_error("sop_asymptotic: requires main.alpha == eve.alpha");
    const auto ah = channel::asymptotic_constants(s.main);
    const auto ak = channel::asymptotic_constants(s.eve);
    const double at = s.main.alpha / 2.0;
    const double atmu_h = at * s.main.mu;
    const double phi = threshold_phi(s.rate_target);
    const double ln_pref = ah.ln_a_prime + ak.ln_a_prime - 2.0 * std::log(at) - std::log(s.main.mu) +
                           atmu_h * (std::log(phi) + std::log(s.eve.mean_snr) - std::log(s.main.mean_snr));
    channel::ChannelParams eve1 = s.eve;
    eve1.mean_snr = 1.0;
    const auto ck = channel::derive_constants(eve1);
    auto ln_term = [&](int j) {
        return ln_pref + channel::detail::ln_series_coeff(eve1, ck, j) - specfun::ln_gamma(s.eve.mu + j) +
               specfun::ln_gamma(s.main.mu + s.eve.mu + j) - (s.main.mu + s.eve.mu + j) * ak.ln_b_prime;
    };
    // The remaining series runs over the eavesdropper expansion index; like
    // the inner sum of the exact route it stops at rel_tol under hard_cap,
    // while max_terms governs main-link expansions (collapsed here).
    const SeriesControl eve_ctrl{ctrl.hard_cap, ctrl.rel_tol, ctrl.hard_cap};
    auto sum = channel::detail::truncated_sum(ln_term, eve_ctrl);
    MetricResult r;
    r.value = sum.value;
    r.error_estimate = sum.trunc_estimate;
    r.terms_or_evals = sum.terms_used;
    r.method = Method::asymptotic;
    return r;
}

/// Diversity gain of the outage slope: alpha_tilde * mu of the main link.
inline double diversity_gain(const ChannelParams& main) {
    main.validate();
    return 0.5 * main.alpha * main.mu;
}

/// Probability of strictly positive secrecy capacity: 1 - SOP_L at zero
/// target rate. Uses the exact series when its preconditions hold, the
/// quadrature route otherwise.
inline MetricResult spsc(const SecrecyScenario& s, const SeriesControl& ctrl = {}) {
    SecrecyScenario zero = s;
    zero.rate_target = 0.0;
    MetricResult sop;
    if (zero.common_alpha() && zero.main.integer_mu())
        sop = sop_lower_exact(zero, ctrl);
    else
        sop = sop_lower_numeric(zero);
    MetricResult r = sop;
    r.value = 1.0 - sop.value;
    detail::clamp_probability(r);
    return r;
}

/// Average secrecy capacity by adaptive quadrature of the three defining
/// integrals; equals the mean of the clipped capacity difference.
inline AscBreakdown asc(const SecrecyScenario& s, const SeriesControl& ctrl = {}) {
    s.validate();
    if (!s.common_alpha()) throw domain_error("asc: requires main.alpha == eve.alpha");
    const Link h = channel::make_link(s.main);
    const Link k = channel::make_link(s.eve);

    auto run = [&](const char* name, auto&& f, const std::vector<double>& hints) {
        try {
            return quad::integrate_semi_infinite(f, 1e-9, 1e-8, hints);
        } catch (const numeric_error& e) {
            throw numeric_error(std::string("asc: integral ") + name + " failed: " + e.what());
        }
    };

    AscBreakdown out;
    auto i1 = run("I1",
                  [&](double g) {
                      return std::log1p(g) * channel::pdf(h, g) * channel::cdf_general(k, g, ctrl);
                  },
                  {detail::mode_hint(h)});
    auto i2 = run("I2",
                  [&](double g) {
                      return std::log1p(g) * channel::pdf(k, g) * channel::cdf_general(h, g, ctrl);
                  },
                  {detail::mode_hint(k)});
    auto i3 = run("I3", [&](double g) { return std::log1p(g) * channel::pdf(k, g); },
                  {detail::mode_hint(k)});
    out.im1 = i1.value;
    out.im2 = i2.value;
    out.im3 = i3.value;
    out.asc_nats = out.im1 + out.im2 - out.im3;
    out.asc_bits = out.asc_nats / std::log(2.0);
    out.error_estimate = i1.error_estimate + i2.error_estimate + i3.error_estimate;
    out.evals = i1.n_evals + i2.n_evals + i3.n_evals;
    return out;
}

} // namespace akms::secrecy

#endif
