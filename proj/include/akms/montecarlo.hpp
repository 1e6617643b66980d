#ifndef AKMS_MONTECARLO_HPP
#define AKMS_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "akms/channel.hpp"
#include "akms/error.hpp"
#include "akms/secrecy.hpp"

namespace akms::mc {

using channel::Link;
using secrecy::SecrecyScenario;

struct SimConfig {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t batch_size = 10'000;

    void validate() const {
        if (n_samples < 1) throw domain_error("SimConfig: n_samples must be positive");
        if (batch_size < 1 || batch_size > n_samples)
            throw domain_error("SimConfig: batch_size must lie in [1, n_samples]");
    }
};

struct EstimateWithError {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

namespace detail {

// splitmix64 output function; random access by counter keeps the sample
// stream independent of batching.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
}

// uniform in (0,1), never exactly 0 or 1
inline double uniform_at(std::uint64_t stream_seed, std::uint64_t i) {
    const std::uint64_t z = mix64(stream_seed + i * 0x9E3779B97F4A7C15ULL);
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

// Neumaier compensated accumulator
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

} // namespace detail

/// Monotone-cubic inverse-CDF table over one link. Segments whose midpoint
/// interpolation error exceeds 1e-8 in CDF units, and the far tails, fall
/// back to the exact root solve.
class InverseCdfTable {
public:
    explicit InverseCdfTable(const Link& link, int knots = 1024) : link_(link) {
        const double u_lo = 1e-5, u_hi = 1.0 - 1e-5;
        u_.resize(knots);
        g_.resize(knots);
        for (int i = 0; i < knots; ++i) {
            u_[i] = u_lo + (u_hi - u_lo) * i / (knots - 1.0);
            g_[i] = channel::sample_inverse_cdf(link_, u_[i]);
        }
        slopes_ = fritsch_carlson(u_, g_);
        exact_.assign(knots - 1, false);
        for (int i = 0; i + 1 < knots; ++i) {
            const double um = 0.5 * (u_[i] + u_[i + 1]);
            const double gm = eval_segment(i, um);
            if (std::abs(channel::cdf_general(link_, gm, channel::kInversionSeriesControl) - um) > 1e-8)
                exact_[i] = true;
        }
    }

    double operator()(double u) const {
        if (u <= u_.front() || u >= u_.back()) return channel::sample_inverse_cdf(link_, u);
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const int i = static_cast<int>(it - u_.begin()) - 1;
        if (exact_[i]) return channel::sample_inverse_cdf(link_, u);
        return eval_segment(i, u);
    }

private:
    static std::vector<double> fritsch_carlson(const std::vector<double>& x, const std::vector<double>& y) {
        const int n = static_cast<int>(x.size());
        std::vector<double> delta(n - 1), m(n);
        for (int i = 0; i < n - 1; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
        m[0] = delta[0];
        m[n - 1] = delta[n - 2];
        for (int i = 1; i < n - 1; ++i)
            m[i] = (delta[i - 1] * delta[i] > 0.0) ? 0.5 * (delta[i - 1] + delta[i]) : 0.0;
        for (int i = 0; i < n - 1; ++i) {
            if (delta[i] == 0.0) {
                m[i] = m[i + 1] = 0.0;
                continue;
            }
            const double a = m[i] / delta[i], b = m[i + 1] / delta[i];
            const double s = a * a + b * b;
            if (s > 9.0) {
                const double tau = 3.0 / std::sqrt(s);
                m[i] = tau * a * delta[i];
                m[i + 1] = tau * b * delta[i];
            }
        }
        return m;
    }

    double eval_segment(int i, double u) const {
        const double h = u_[i + 1] - u_[i];
        const double t = (u - u_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * g_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
               (-2 * t3 + 3 * t2) * g_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
    }

    Link link_;
    std::vector<double> u_, g_;
    std::vector<double> slopes_;
    std::vector<bool> exact_;
};

/// Reproducible iid (gamma_h, gamma_k) pairs; the two links use
/// decorrelated counter-based substreams of the one seed.
class PairSampler {
public:
    PairSampler(const SecrecyScenario& s, const SimConfig& cfg)
        : table_h_(channel::make_link(s.main)),
          table_k_(channel::make_link(s.eve)),
          seed_h_(detail::substream_seed(cfg.seed, 0)),
          seed_k_(detail::substream_seed(cfg.seed, 1)) {}

    std::pair<double, double> at(std::uint64_t i) const {
        return {table_h_(detail::uniform_at(seed_h_, i)), table_k_(detail::uniform_at(seed_k_, i))};
    }

private:
    InverseCdfTable table_h_, table_k_;
    std::uint64_t seed_h_, seed_k_;
};

inline std::vector<std::pair<double, double>> simulate_snr_pairs(const SecrecyScenario& s,
                                                                 const SimConfig& cfg) {
    s.validate();
    cfg.validate();
    PairSampler sampler(s, cfg);
    std::vector<std::pair<double, double>> out;
    out.reserve(cfg.n_samples);
    for (std::uint64_t i = 0; i < cfg.n_samples; ++i) out.push_back(sampler.at(i));
    return out;
}

namespace detail {

// Batched mean/variance of f(gamma_h, gamma_k); batch merge order is fixed
// by batch index so the estimate is reproducible and batch-size independent
// up to compensated-summation round-off.
template <class F>
inline EstimateWithError batched_mean(const SecrecyScenario& s, const SimConfig& cfg, const F& f) {
    s.validate();
    cfg.validate();
    PairSampler sampler(s, cfg);
    KahanSum total, total_sq;
    const std::uint64_t n = cfg.n_samples;
    for (std::uint64_t begin = 0; begin < n; begin += cfg.batch_size) {
        const std::uint64_t end = std::min(n, begin + cfg.batch_size);
        KahanSum bsum, bsq;
        for (std::uint64_t i = begin; i < end; ++i) {
            auto [gh, gk] = sampler.at(i);
            const double v = f(gh, gk);
            bsum.add(v);
            bsq.add(v * v);
        }
        total.add(bsum.value());
        total_sq.add(bsq.value());
    }
    EstimateWithError e;
    e.n = n;
    e.mean = total.value() / static_cast<double>(n);
    const double var = std::max(0.0, total_sq.value() / static_cast<double>(n) - e.mean * e.mean);
    e.std_error = std::sqrt(var / static_cast<double>(n));
    return e;
}

} // namespace detail

/// Fraction of pairs with gamma_h < phi * gamma_k (outage lower-bound event).
inline EstimateWithError estimate_sop(const SecrecyScenario& s, const SimConfig& cfg) {
    const double phi = secrecy::threshold_phi(s.rate_target);
    auto e = detail::batched_mean(s, cfg, [phi](double gh, double gk) { return gh < phi * gk ? 1.0 : 0.0; });
    // binomial proportion error
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(e.n));
    return e;
}

/// Fraction of pairs with gamma_h > gamma_k; complements estimate_sop at
/// zero target rate on the same sample stream.
inline EstimateWithError estimate_spsc(const SecrecyScenario& s, const SimConfig& cfg) {
    auto e = detail::batched_mean(s, cfg, [](double gh, double gk) { return gh > gk ? 1.0 : 0.0; });
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(e.n));
    return e;
}

struct AscEstimates {
    EstimateWithError clipped;   // mean of max(ln(1+g_h) - ln(1+g_k), 0)
    EstimateWithError unclipped; // mean of ln(1+g_h) - ln(1+g_k)
};

/// Sample means (in nats) of the clipped and unclipped capacity difference.
inline AscEstimates estimate_asc(const SecrecyScenario& s, const SimConfig& cfg) {
    AscEstimates r;
    r.clipped = detail::batched_mean(s, cfg, [](double gh, double gk) {
        return std::max(std::log1p(gh) - std::log1p(gk), 0.0);
    });
    r.unclipped = detail::batched_mean(
        s, cfg, [](double gh, double gk) { return std::log1p(gh) - std::log1p(gk); });
    return r;
}

} // namespace akms::mc

#endif
