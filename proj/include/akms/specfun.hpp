#ifndef AKMS_SPECFUN_HPP
#define AKMS_SPECFUN_HPP

#include <cmath>
#include <limits>
#include <string>

#include "akms/control.hpp"
#include "akms/error.hpp"

namespace akms::specfun {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ln Gamma(x) for x > 0.
inline double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw domain_error("ln_gamma: argument must be positive and finite, got " + std::to_string(x));
    return std::lgamma(x);
}

namespace detail {

// Regularized lower incomplete gamma P(s,x) by power series, for x < s + 1.
inline double gamma_p_series(double s, double x, const AccuracyBudget& budget) {
    double sum = 1.0 / s;
    double term = sum;
    for (int n = 1; n <= budget.max_terms * 4; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * budget.rel_tol) {
            double lp = s * std::log(x) - x - ln_gamma(s);
            return std::exp(lp) * sum;
        }
    }
    throw convergence_error("gamma_p_series: no convergence", std::exp(s * std::log(x) - x - ln_gamma(s)) * sum,
                            std::abs(term / sum));
}

// Regularized upper incomplete gamma Q(s,x) by continued fraction (modified
// Lentz), for x >= s + 1.
inline double gamma_q_cf(double s, double x, const AccuracyBudget& budget) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= budget.max_terms * 4; ++i) {
        double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < budget.rel_tol) {
            double lp = s * std::log(x) - x - ln_gamma(s);
            return std::exp(lp) * h;
        }
    }
    throw convergence_error("gamma_q_cf: no convergence", std::exp(s * std::log(x) - x - ln_gamma(s)) * h, 1.0);
}

} // namespace detail

/// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s), in [0,1].
inline double gamma_p(double s, double x, const AccuracyBudget& budget = {}) {
    if (!(s > 0.0) || !std::isfinite(s)) throw domain_error("gamma_p: s must be positive");
    if (!(x >= 0.0)) throw domain_error("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return detail::gamma_p_series(s, x, budget);
    return 1.0 - detail::gamma_q_cf(s, x, budget);
}

/// Lower incomplete gamma gamma(s,x) = int_0^x t^{s-1} e^{-t} dt.
inline double lower_inc_gamma(double s, double x, const AccuracyBudget& budget = {}) {
    return gamma_p(s, x, budget) * std::exp(ln_gamma(s));
}

/// Confluent hypergeometric 1F1(a,b;z) by power series; Kummer transform
/// for negative arguments to keep the summed terms of one sign in the
/// cases this library feeds it (a,b > 0).
inline double hyp1f1(double a, double b, double z, const AccuracyBudget& budget = {}) {
    budget.validate();
    if (!(b > 0.0)) throw domain_error("hyp1f1: b must be positive");
    if (!std::isfinite(z)) throw domain_error("hyp1f1: z must be finite");
    if (z == 0.0) return 1.0;
    if (z < 0.0) return std::exp(z) * hyp1f1(b - a, b, -z, budget);

    double sum = 1.0;
    double term = 1.0;
    int small_streak = 0;
    for (int n = 0; n < budget.max_terms; ++n) {
        term *= (a + n) * z / ((b + n) * (n + 1.0));
        sum += term;
        if (std::abs(term) < std::abs(sum) * budget.rel_tol) {
            if (++small_streak >= 2 || term == 0.0) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw convergence_error("hyp1f1: series did not converge within max_terms", sum, std::abs(term / sum));
}

/// ln 1F1(a,b;x) for a,b > 0, x >= 0 (all series terms positive).
/// Large arguments switch to the e^x x^{a-b} asymptotic form, truncated at
/// its smallest term; by then the result only matters in log magnitude.
inline double ln_hyp1f1_pos(double a, double b, double x, const AccuracyBudget& budget = {}) {
    if (!(a > 0.0) || !(b > 0.0)) throw domain_error("ln_hyp1f1_pos: a,b must be positive");
    if (!(x >= 0.0)) throw domain_error("ln_hyp1f1_pos: x must be non-negative");
    if (x == 0.0) return 0.0;

    const double switch_x = 3000.0;
    if (x <= switch_x) {
        // Direct summation with running rescale against overflow.
        double sum = 1.0;
        double term = 1.0;
        double log_offset = 0.0;
        const long cap = static_cast<long>(x + 12.0 * std::sqrt(x) + 60.0) + budget.max_terms;
        for (long n = 0; n < cap; ++n) {
            term *= (a + n) * x / ((b + n) * (n + 1.0));
            sum += term;
            if (sum > 1e250) {
                log_offset += std::log(sum);
                term /= sum;
                sum = 1.0;
            }
            if (term < sum * budget.rel_tol) return log_offset + std::log(sum);
        }
        throw convergence_error("ln_hyp1f1_pos: series did not converge", log_offset + std::log(sum), term / sum);
    }

    // Asymptotic: 1F1(a,b;x) ~ Gamma(b)/Gamma(a) e^x x^{a-b} sum_k (b-a)_k (1-a)_k / (k! x^k)
    double s = 1.0;
    double t = 1.0;
    double prev = kInf;
    for (int k = 0; k < 30; ++k) {
        t *= (b - a + k) * (1.0 - a + k) / ((k + 1.0) * x);
        if (std::abs(t) >= prev) break; // divergent tail; truncate at smallest term
        prev = std::abs(t);
        s += t;
        if (std::abs(t) < std::abs(s) * budget.rel_tol) break;
    }
    if (s <= 0.0) s = 1.0; // deep tail, log magnitude dominated by x anyway
    return ln_gamma(b) - ln_gamma(a) + x + (a - b) * std::log(x) + std::log(s);
}

namespace detail {

inline double hyp2f1_series(double a, double b, double c, double z, const AccuracyBudget& budget) {
    double sum = 1.0;
    double term = 1.0;
    int small_streak = 0;
    for (int n = 0; n < budget.max_terms * 4; ++n) {
        term *= (a + n) * (b + n) * z / ((c + n) * (n + 1.0));
        sum += term;
        if (std::abs(term) < std::abs(sum) * budget.rel_tol) {
            if (++small_streak >= 2 || term == 0.0) return sum;
        } else {
            small_streak = 0;
        }
    }
    throw convergence_error("hyp2f1: series did not converge within budget", sum, std::abs(term / sum));
}

} // namespace detail

/// Gauss hypergeometric 2F1(a,b;c;z) for c > 0 and 0 <= z < 1.
/// For z close to 1 with a+b > c the Euler transform
/// 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a,c-b;c;z) tames the n^{a+b-c-1} z^n
/// term growth of the direct series.
inline double hyp2f1(double a, double b, double c, double z, const AccuracyBudget& budget = {}) {
    budget.validate();
    if (!(c > 0.0)) throw domain_error("hyp2f1: c must be positive");
    if (!(z >= 0.0) || z >= 1.0) throw domain_error("hyp2f1: z must lie in [0,1)");
    if (z == 0.0) return 1.0;
    if (z > 0.9 && a + b - c > 0.0)
        return std::pow(1.0 - z, c - a - b) * detail::hyp2f1_series(c - a, c - b, c, z, budget);
    return detail::hyp2f1_series(a, b, c, z, budget);
}

/// ln 2F1(a,b;c;z) for positive-parameter cases where the value is positive.
inline double ln_hyp2f1_pos(double a, double b, double c, double z, const AccuracyBudget& budget = {}) {
    if (z > 0.9 && a + b - c > 0.0) {
        double s = detail::hyp2f1_series(c - a, c - b, c, z, budget);
        if (!(s > 0.0)) throw numeric_error("ln_hyp2f1_pos: transformed series not positive");
        return (c - a - b) * std::log1p(-z) + std::log(s);
    }
    double s = detail::hyp2f1_series(a, b, c, z, budget);
    if (!(s > 0.0)) throw numeric_error("ln_hyp2f1_pos: series sum not positive");
    return std::log(s);
}

} // namespace akms::specfun

#endif
