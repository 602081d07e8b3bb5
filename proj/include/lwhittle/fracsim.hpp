#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lwhittle/series.hpp"

namespace lwhittle {

/**
 * @brief Coefficients a_k = (d)_k / k! of the fractional operator (1 - L)^{-d}.
 *
 * Uses the recursion a_0 = 1, a_k = a_{k-1} (d + k - 1) / k, valid for any real d.
 */
[[nodiscard]] inline std::vector<double> pochhammer_coeffs(double d, std::size_t count) {
    if (count == 0) throw std::invalid_argument("pochhammer_coeffs: count must be >= 1");
    std::vector<double> a(count);
    a[0] = 1.0;
    for (std::size_t k = 1; k < count; ++k) {
        a[k] = a[k - 1] * (d + static_cast<double>(k) - 1.0) / static_cast<double>(k);
    }
    return a;
}

/**
 * @brief Truncated fractional integration X_t = sum_{k=0}^{t-1} a_k u_{t-k}.
 *
 * Inputs are taken to vanish before t = 1, so this is the type II process
 * started at X_0 = 0. Negative d performs fractional differencing.
 */
[[nodiscard]] inline std::vector<double> frac_integrate(std::span<const double> u, double d) {
    if (u.empty()) throw std::invalid_argument("frac_integrate: empty input");
    const std::size_t n = u.size();
    const auto a = pochhammer_coeffs(d, n);
    std::vector<double> x(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= t; ++k) acc += a[k] * u[t - k];
        x[t] = acc;
    }
    return x;
}

/// Deterministic fractional trend (1 - L)^{-alpha} 1{t >= 1}, t = 1..n.
/// Closed form: value_t = (alpha + 1)_{t-1} / (t - 1)!.
[[nodiscard]] inline std::vector<double> frac_trend(double alpha, std::size_t n) {
    if (!(alpha > 0.0)) throw std::invalid_argument("frac_trend: alpha must be positive");
    if (n == 0) throw std::invalid_argument("frac_trend: n must be >= 1");
    return pochhammer_coeffs(alpha + 1.0, n);
}

struct IidGaussian {
    double sigma = 1.0;
};

/// u_t = sum_j c_j eps_{t-j} with eps iid N(0, 1).
struct LinearFilter {
    std::vector<double> coeffs;
};

using Innovation = std::variant<IidGaussian, LinearFilter>;

/// Deterministic trend mu * t^alpha.
struct PowerTrend {
    double mu = 1.0;
    double alpha = 1.0;
};

struct SimConfig {
    double d = 0.0;
    std::size_t n = 0;
    double x0 = 0.0;
    Innovation innovation = IidGaussian{};
    std::optional<PowerTrend> trend;
    std::uint64_t seed = 0;

    void validate() const {
        if (!std::isfinite(d)) throw std::invalid_argument("SimConfig: d must be finite");
        if (n < 2) throw std::invalid_argument("SimConfig: n must be >= 2");
        if (!std::isfinite(x0)) throw std::invalid_argument("SimConfig: x0 must be finite");
        if (const auto* g = std::get_if<IidGaussian>(&innovation)) {
            if (!(g->sigma > 0.0) || !std::isfinite(g->sigma)) {
                throw std::invalid_argument("SimConfig: sigma must be positive");
            }
        } else {
            const auto& f = std::get<LinearFilter>(innovation);
            if (f.coeffs.empty()) throw std::invalid_argument("SimConfig: filter needs >= 1 coefficient");
            for (double c : f.coeffs) {
                if (!std::isfinite(c)) throw std::invalid_argument("SimConfig: filter coefficient not finite");
            }
        }
        if (trend) {
            if (trend->mu == 0.0 || !std::isfinite(trend->mu)) {
                throw std::invalid_argument("SimConfig: trend mu must be nonzero");
            }
            if (!(trend->alpha > 0.0) || !std::isfinite(trend->alpha)) {
                throw std::invalid_argument("SimConfig: trend alpha must be positive");
            }
        }
    }
};

/**
 * @brief Draws the innovation sequence u_1..u_n for a configuration.
 *
 * Gaussian draws come from a mt19937_64 stream seeded with config.seed and
 * are consumed in time order. A linear filter of order q first draws the q
 * presample shocks eps_{1-q}..eps_0.
 */
[[nodiscard]] inline std::vector<double> draw_innovations(const SimConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = config.n;
    std::vector<double> u(n);

    if (const auto* g = std::get_if<IidGaussian>(&config.innovation)) {
        for (auto& v : u) v = g->sigma * normal(rng);
        return u;
    }

    const auto& c = std::get<LinearFilter>(config.innovation).coeffs;
    const std::size_t q = c.size() - 1;
    std::vector<double> eps(n + q);
    for (auto& e : eps) e = normal(rng);
    for (std::size_t t = 0; t < n; ++t) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= q; ++j) acc += c[j] * eps[t + q - j];
        u[t] = acc;
    }
    return u;
}

/// X_t = (1 - L)^{-d} u_t + x0 + mu t^alpha, t = 1..n.
[[nodiscard]] inline Series simulate(const SimConfig& config) {
    const auto u = draw_innovations(config);
    auto x = frac_integrate(u, config.d);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += config.x0;
        if (config.trend) {
            const double t = static_cast<double>(i + 1);
            x[i] += config.trend->mu * std::exp(config.trend->alpha * std::log(t));
        }
    }
    return Series(std::move(x));
}

}  // namespace lwhittle
