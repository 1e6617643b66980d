#ifndef AKMS_CHANNEL_HPP
#define AKMS_CHANNEL_HPP

#include <cmath>
#include <string>

#include "akms/control.hpp"
#include "akms/error.hpp"
#include "akms/specfun.hpp"

namespace akms::channel {

/// Shape/scale parameters of one alpha-kappa-mu shadowed link.
/// mean_snr is linear scale; dB conversion belongs to the CLI boundary.
struct ChannelParams {
    double alpha;    // nonlinearity shape, > 0
    double kappa;    // dominant-to-scattered power ratio, >= 0
    double mu;       // number of multipath clusters, > 0
    double m;        // shadowing severity, > 0
    double mean_snr; // average SNR, linear, > 0

    void validate() const {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) throw domain_error("ChannelParams: alpha must be > 0");
        if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw domain_error("ChannelParams: kappa must be >= 0");
        if (!(mu > 0.0) || !std::isfinite(mu)) throw domain_error("ChannelParams: mu must be > 0");
        if (!(m > 0.0) || !std::isfinite(m)) throw domain_error("ChannelParams: m must be > 0");
        if (!(mean_snr > 0.0) || !std::isfinite(mean_snr)) throw domain_error("ChannelParams: mean_snr must be > 0");
    }

    bool integer_mu() const { return std::abs(mu - std::round(mu)) < 1e-9; }
};

/// Constants of the SNR PDF
///   f(g) = a g^{at*mu-1} e^{-b g^at} 1F1(m, mu; d g^at),   at = alpha/2,
/// with c chosen so that the mean of the distribution equals mean_snr.
struct DerivedConstants {
    double alpha_tilde;
    double c;
    double a;
    double b;
    double d; // 0 iff kappa == 0
    double z; // mu*kappa / (mu*kappa + m), the 2F1 argument

    // log-space copies used by the series evaluators
    double ln_a;
    double ln_b;
    double ln_d; // -inf when kappa == 0
};

/// b, d and the normalizing a with the mean-SNR factors stripped
/// (i.e. evaluated at mean_snr = 1).
struct AsymptoticConstants {
    double a_prime;
    double b_prime;
    double d_prime;
    double ln_a_prime;
    double ln_b_prime;
    double ln_d_prime;
};

namespace detail {

inline double ln_c(const ChannelParams& p) {
    const double at = p.alpha / 2.0;
    const double mk = p.mu * p.kappa;
    const double z = mk / (mk + p.m);
    // m*ln((mu*kappa+m)/m) via log1p keeps precision for very large m
    const double lnratio = p.m * std::log1p(mk / p.m);
    return at * (lnratio + specfun::ln_gamma(p.mu) - specfun::ln_gamma(p.mu + 1.0 / at) -
                 specfun::ln_hyp2f1_pos(p.m, p.mu + 1.0 / at, p.mu, z));
}

} // namespace detail

inline DerivedConstants derive_constants(const ChannelParams& p) {
    p.validate();
    DerivedConstants k;
    k.alpha_tilde = p.alpha / 2.0;
    const double at = k.alpha_tilde;
    const double mk = p.mu * p.kappa;
    k.z = mk / (mk + p.m);

    const double lc = detail::ln_c(p);
    const double ln_gbar_at = at * std::log(p.mean_snr);
    k.c = std::exp(lc);
    k.ln_b = -lc - ln_gbar_at;
    k.b = std::exp(k.ln_b);
    if (p.kappa == 0.0) {
        k.d = 0.0;
        k.ln_d = -specfun::kInf;
    } else {
        k.ln_d = std::log(mk) - lc - std::log(mk + p.m) - ln_gbar_at;
        k.d = std::exp(k.ln_d);
    }
    // Normalization fixes a given b and d:
    //   a = alpha_tilde * b^mu * (1 - d/b)^m / Gamma(mu),  with d/b = z.
    k.ln_a = std::log(at) + p.mu * k.ln_b + p.m * std::log1p(-k.z) - specfun::ln_gamma(p.mu);
    k.a = std::exp(k.ln_a);
    return k;
}

inline AsymptoticConstants asymptotic_constants(const ChannelParams& p) {
    ChannelParams q = p;
    q.mean_snr = 1.0;
    DerivedConstants k = derive_constants(q);
    return {k.a, k.b, k.d, k.ln_a, k.ln_b, k.ln_d};
}

/// One link with its precomputed constants; the unit all channel and
/// secrecy evaluations work from.
struct Link {
    ChannelParams params;
    DerivedConstants consts;
};

inline Link make_link(const ChannelParams& p) { return {p, derive_constants(p)}; }

/// ln of the SNR PDF at gamma > 0 (may be -inf in the far tail).
inline double ln_pdf(const Link& link, double gamma) {
    if (!(gamma > 0.0)) throw domain_error("pdf: gamma must be > 0");
    const auto& p = link.params;
    const auto& k = link.consts;
    const double at = k.alpha_tilde;
    const double ga = std::pow(gamma, at);
    const double x = k.d * ga;
    double ln_f1 = (x > 0.0) ? specfun::ln_hyp1f1_pos(p.m, p.mu, x) : 0.0;
    return k.ln_a + (at * p.mu - 1.0) * std::log(gamma) - k.b * ga + ln_f1;
}

inline double pdf(const Link& link, double gamma) { return std::exp(ln_pdf(link, gamma)); }

inline double pdf(const ChannelParams& p, double gamma) { return pdf(make_link(p), gamma); }

/// Truncated series evaluation: value, terms actually summed, and the
/// magnitude of the first omitted term (all series terms are positive, so
/// that magnitude bounds nothing from below but tracks the truncation).
struct SeriesEval {
    double value = 0.0;
    int terms_used = 0;
    double trunc_estimate = 0.0;
};

namespace detail {

// ln A_j + ln Gamma(mu+j) - ln Gamma(j+1) + j ln d, the log of the shared
// series coefficient Gamma(mu)Gamma(m+j)/Gamma(m) * d^j / j!
inline double ln_series_coeff(const ChannelParams& p, const DerivedConstants& k, int j) {
    if (j > 0 && k.d == 0.0) return -specfun::kInf;
    double v = specfun::ln_gamma(p.mu) + specfun::ln_gamma(p.m + j) - specfun::ln_gamma(p.m);
    if (j > 0) v += j * k.ln_d - specfun::ln_gamma(j + 1.0);
    return v;
}

// Generic positive-term truncated sum over j of exp(ln_term(j)).
// trunc_estimate is a geometric tail bound t_{J+1}/(1-r) from the last
// observed term ratio; past the term peak the ratios only decrease, so it
// bounds the true remainder.
template <class LnTerm>
inline SeriesEval truncated_sum(const LnTerm& ln_term, const SeriesControl& ctrl) {
    ctrl.validate();
    SeriesEval r;
    double last = 0.0;
    auto tail_bound = [&](double t_next) {
        if (t_next == 0.0) return 0.0;
        const double ratio = (last > 0.0) ? t_next / last : 0.5;
        return (ratio < 1.0) ? t_next / (1.0 - ratio) : 20.0 * t_next;
    };
    for (int j = 0; j < ctrl.max_terms; ++j) {
        const double t = std::exp(ln_term(j));
        r.value += t;
        r.terms_used = j + 1;
        last = t;
        if (j >= 2 && (t <= ctrl.rel_tol * r.value || t == 0.0)) {
            r.trunc_estimate = tail_bound(std::exp(ln_term(j + 1)));
            return r;
        }
    }
    r.trunc_estimate = tail_bound(std::exp(ln_term(ctrl.max_terms)));
    if (r.terms_used >= ctrl.hard_cap && r.trunc_estimate > ctrl.rel_tol * r.value)
        throw convergence_error("series hard cap reached before convergence", r.value, r.trunc_estimate);
    return r;
}

} // namespace detail

/// Series form of the PDF (expansion of the 1F1 factor), truncated per ctrl.
inline SeriesEval pdf_series(const Link& link, double gamma, const SeriesControl& ctrl = {}) {
    if (!(gamma > 0.0)) throw domain_error("pdf_series: gamma must be > 0");
    const auto& p = link.params;
    const auto& k = link.consts;
    const double at = k.alpha_tilde;
    const double lg = std::log(gamma);
    const double ga = std::pow(gamma, at);
    auto ln_term = [&](int j) {
        // a * A_j d^j / j! * gamma^{at(mu+j)-1} e^{-b gamma^at}; the
        // Gamma(mu+j) inside ln_series_coeff cancels against A_j's.
        return k.ln_a + detail::ln_series_coeff(p, k, j) - specfun::ln_gamma(p.mu + j) +
               (at * (p.mu + j) - 1.0) * lg - k.b * ga;
    };
    return detail::truncated_sum(ln_term, ctrl);
}

inline SeriesEval pdf_series(const ChannelParams& p, double gamma, const SeriesControl& ctrl = {}) {
    return pdf_series(make_link(p), gamma, ctrl);
}

/// CDF valid for any real mu > 0: term-by-term integration of the PDF
/// series through regularized lower incomplete gamma functions.
inline double cdf_general(const Link& link, double gamma, const SeriesControl& ctrl = {}) {
    if (!(gamma >= 0.0)) throw domain_error("cdf_general: gamma must be >= 0");
    if (gamma == 0.0) return 0.0;
    const auto& p = link.params;
    const auto& k = link.consts;
    const double x = k.b * std::pow(gamma, k.alpha_tilde);
    const double ln_pref = k.ln_a - std::log(k.alpha_tilde);
    auto ln_term = [&](int j) {
        const double lw = ln_pref + detail::ln_series_coeff(p, k, j) - (p.mu + j) * k.ln_b;
        const double P = specfun::gamma_p(p.mu + j, x);
        return (P > 0.0) ? lw + std::log(P) : -specfun::kInf;
    };
    double v = detail::truncated_sum(ln_term, ctrl).value;
    return std::min(1.0, std::max(0.0, v));
}

inline double cdf_general(const ChannelParams& p, double gamma, const SeriesControl& ctrl = {}) {
    return cdf_general(make_link(p), gamma, ctrl);
}

/// Closed-form CDF for integer mu: the inner incomplete-gamma factors
/// terminate into Poisson tails. Non-integer mu is rejected; use
/// cdf_general there.
inline double cdf_series(const Link& link, double gamma, const SeriesControl& ctrl = {}) {
    if (!(gamma >= 0.0)) throw domain_error("cdf_series: gamma must be >= 0");
    const auto& p = link.params;
    if (!p.integer_mu())
        throw domain_error("cdf_series: requires integer mu (got " + std::to_string(p.mu) +
                           "); use cdf_general for real mu");
    if (gamma == 0.0) return 0.0;
    const auto& k = link.consts;
    const int mu = static_cast<int>(std::round(p.mu));
    const double x = k.b * std::pow(gamma, k.alpha_tilde);
    const double ln_pref = k.ln_a - std::log(k.alpha_tilde);
    auto ln_term = [&](int j) {
        // B_j e^{-x} sum_{l=0}^{mu+j-1} x^l / l!  (Poisson upper tail)
        const double lw = ln_pref + detail::ln_series_coeff(p, k, j) - (p.mu + j) * k.ln_b;
        double ln_pois = -x; // l = 0
        double tail = std::exp(ln_pois);
        for (int l = 1; l < mu + j; ++l) {
            ln_pois += std::log(x) - std::log(static_cast<double>(l));
            tail += std::exp(ln_pois);
        }
        return (tail > 0.0) ? lw + std::log(tail) : -specfun::kInf;
    };
    double s = detail::truncated_sum(ln_term, ctrl).value;
    return std::min(1.0, std::max(0.0, 1.0 - s));
}

inline double cdf_series(const ChannelParams& p, double gamma, const SeriesControl& ctrl = {}) {
    return cdf_series(make_link(p), gamma, ctrl);
}

/// Leading-order small-gamma CDF, a pure power law a/(at*mu) * g^{at*mu}.
inline double cdf_asymptotic(const Link& link, double gamma) {
    if (!(gamma > 0.0)) throw domain_error("cdf_asymptotic: gamma must be > 0");
    const auto& k = link.consts;
    const double atmu = k.alpha_tilde * link.params.mu;
    return std::exp(k.ln_a - std::log(atmu) + atmu * std::log(gamma));
}

inline double cdf_asymptotic(const ChannelParams& p, double gamma) {
    return cdf_asymptotic(make_link(p), gamma);
}

/// Series policy tight enough for the 1e-10 inversion contract below; the
/// default metric-layer truncation saturates the CDF visibly below 1 and
/// cannot resolve deep-tail quantiles.
inline constexpr SeriesControl kInversionSeriesControl{1000, 1e-12, 2000};

/// Deterministic inverse of cdf_general: exponential bracketing followed by
/// a safeguarded Newton iteration, to |F(g) - u| <= 1e-10.
inline double sample_inverse_cdf(const Link& link, double u,
                                 const SeriesControl& ctrl = kInversionSeriesControl) {
    if (!(u > 0.0) || !(u < 1.0)) throw domain_error("sample_inverse_cdf: u must lie in (0,1)");
    const double tol = 1e-10;
    double lo = 0.0, hi = link.params.mean_snr;
    double f_hi = cdf_general(link, hi, ctrl);
    while (f_hi < u) {
        lo = hi;
        hi *= 2.0;
        f_hi = cdf_general(link, hi, ctrl);
        if (hi > 1e290)
            throw numeric_error("sample_inverse_cdf: bracketing failed for u=" + std::to_string(u));
    }
    double g = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double F = cdf_general(link, g, ctrl);
        const double resid = F - u;
        if (std::abs(resid) <= tol) return g;
        if (resid > 0.0)
            hi = g;
        else
            lo = g;
        const double dens = pdf(link, g);
        double step_g = (dens > 0.0) ? g - resid / dens : 0.0;
        if (dens > 0.0 && step_g > lo && step_g < hi)
            g = step_g;
        else
            g = 0.5 * (lo + hi);
    }
    throw numeric_error("sample_inverse_cdf: no convergence to 1e-10");
}

inline double sample_inverse_cdf(const ChannelParams& p, double u,
                                 const SeriesControl& ctrl = kInversionSeriesControl) {
    return sample_inverse_cdf(make_link(p), u, ctrl);
}

} // namespace akms::channel

#endif
