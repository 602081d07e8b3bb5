#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lwhittle/asymptotics.hpp"
#include "lwhittle/series.hpp"
#include "lwhittle/spectral.hpp"

namespace lwhittle {

/// Admissible range [lower, upper] for d, with -1/2 < lower < upper < inf.
struct Bounds {
    double lower = -0.45;
    double upper = 2.5;

    void validate() const {
        if (!(lower > -0.5)) throw std::invalid_argument("bounds: lower bound must exceed -1/2");
        if (!(upper > lower) || !std::isfinite(upper)) {
            throw std::invalid_argument("bounds: need lower < upper < inf");
        }
    }
};

enum class Method { raw, differenced };

[[nodiscard]] constexpr std::string_view to_string(Method m) noexcept {
    return m == Method::raw ? "raw" : "differenced";
}

struct WhittleFit {
    double d_hat = 0.0;
    double g_hat = 0.0;
    std::size_t m = 0;
    std::size_t n = 0;
    double r_min = 0.0;
    Bounds bounds;
    Regime regime = Regime::normal;
    std::optional<double> se;
    Method method = Method::raw;
    bool boundary_flag = false;
};

namespace tuning {
inline constexpr double grid_step = 0.01;
inline constexpr double golden_tolerance = 1e-7;
inline constexpr double boundary_tolerance = 1e-4;
inline constexpr double regime_band = 0.02;
}  // namespace tuning

/// m = floor(n^exponent), clamped to [1, n - 1].
[[nodiscard]] inline std::size_t bandwidth(std::size_t n, double exponent) {
    if (!(exponent > 0.0 && exponent < 1.0)) {
        throw std::invalid_argument("bandwidth: exponent must lie in (0, 1)");
    }
    if (n < 4) throw std::invalid_argument("bandwidth: n must be >= 4");
    // the small offset keeps exact integer powers from flooring one below
    const auto m = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), exponent) + 1e-9));
    return std::clamp<std::size_t>(m, 1, n - 1);
}

/**
 * @brief Concentrated local Whittle objective over the first m ordinates.
 *
 * Holds log lambda_j and I(lambda_j) so repeated evaluation in d is cheap.
 */
class WhittleObjective {
public:
    WhittleObjective(const Periodogram& p, std::size_t m) {
        if (m < 1 || m > p.size()) {
            throw std::invalid_argument("objective: m = " + std::to_string(m) + " outside 1.." +
                                        std::to_string(p.size()));
        }
        log_lambda_.reserve(m);
        ordinates_.assign(p.ordinates.begin(), p.ordinates.begin() + static_cast<std::ptrdiff_t>(m));
        double sum_log = 0.0;
        bool any_positive = false;
        for (std::size_t j = 1; j <= m; ++j) {
            const double l = std::log(p.frequency(j));
            log_lambda_.push_back(l);
            sum_log += l;
            any_positive = any_positive || ordinates_[j - 1] > 0.0;
        }
        if (!any_positive) throw degenerate_input("objective undefined: all periodogram ordinates are zero");
        mean_log_lambda_ = sum_log / static_cast<double>(m);
    }

    /// G(d) = m^{-1} sum lambda_j^{2d} I(lambda_j).
    [[nodiscard]] double g_hat(double d) const {
        double acc = 0.0;
        for (std::size_t j = 0; j < ordinates_.size(); ++j) acc += std::exp(2.0 * d * log_lambda_[j]) * ordinates_[j];
        return acc / static_cast<double>(ordinates_.size());
    }

    /// R(d) = log G(d) - 2 d m^{-1} sum log lambda_j.
    [[nodiscard]] double operator()(double d) const {
        return std::log(g_hat(d)) - 2.0 * d * mean_log_lambda_;
    }

    /// R'(d).
    [[nodiscard]] double slope(double d) const { return slope_and_curvature(d).first; }

    /// (R'(d), R''(d)); R'' is four times a weighted variance of log lambda_j, so R is convex.
    [[nodiscard]] std::pair<double, double> slope_and_curvature(double d) const {
        double w_sum = 0.0;
        double wl_sum = 0.0;
        double wll_sum = 0.0;
        for (std::size_t j = 0; j < ordinates_.size(); ++j) {
            const double w = std::exp(2.0 * d * log_lambda_[j]) * ordinates_[j];
            w_sum += w;
            wl_sum += w * log_lambda_[j];
            wll_sum += w * log_lambda_[j] * log_lambda_[j];
        }
        const double mean = wl_sum / w_sum;
        const double var = wll_sum / w_sum - mean * mean;
        return {2.0 * (mean - mean_log_lambda_), 4.0 * var};
    }

    [[nodiscard]] std::size_t m() const noexcept { return ordinates_.size(); }

private:
    std::vector<double> log_lambda_;
    std::vector<double> ordinates_;
    double mean_log_lambda_ = 0.0;
};

[[nodiscard]] inline double g_hat(const Periodogram& p, double d, std::size_t m) {
    return WhittleObjective(p, m).g_hat(d);
}

[[nodiscard]] inline double objective_r(const Periodogram& p, double d, std::size_t m) {
    return WhittleObjective(p, m)(d);
}

/// Golden-section search for a minimum of f on [a, b] down to a bracket of width tol.
template <class F>
[[nodiscard]] double golden_section_minimize(const F& f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace detail {

/**
 * Coarse grid at step 0.01 (smallest d wins ties), golden section on the cells
 * adjacent to the best grid point, then Newton steps on R'(d) = 0 inside those
 * cells. R is convex, so a bound is the minimizer exactly when the slope there
 * points outward.
 */
inline double minimize_on_bounds(const WhittleObjective& r, const Bounds& bounds) {
    const double step = tuning::grid_step;
    std::vector<double> grid;
    const auto cells = static_cast<std::size_t>(std::floor((bounds.upper - bounds.lower) / step + 1e-9));
    grid.reserve(cells + 2);
    for (std::size_t k = 0; k <= cells; ++k) grid.push_back(bounds.lower + static_cast<double>(k) * step);
    if (bounds.upper - grid.back() > 1e-12) grid.push_back(bounds.upper);

    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double v = r(grid[k]);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }

    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    if (lo == bounds.lower && r.slope(bounds.lower) >= 0.0) return bounds.lower;
    if (hi == bounds.upper && r.slope(bounds.upper) <= 0.0) return bounds.upper;

    double d = golden_section_minimize(r, lo, hi, tuning::golden_tolerance);
    for (int iter = 0; iter < 8; ++iter) {
        const auto [slope, curvature] = r.slope_and_curvature(d);
        if (!(curvature > 0.0)) break;
        const double next = d - slope / curvature;
        if (!(next >= lo && next <= hi)) break;
        const double moved = std::abs(next - d);
        d = next;
        if (moved <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(d))) break;
    }
    return d;
}

/// Reporting-only regime tag for an estimate.
inline Regime classify_estimate(double d_hat) {
    if (std::abs(d_hat - 0.75) < tuning::regime_band) return Regime::boundary;
    if (std::abs(d_hat - 1.0) < tuning::regime_band) return Regime::mixed_normal;
    if (d_hat < 0.75) return Regime::normal;
    if (d_hat < 1.0) return Regime::nonnormal;
    return Regime::degenerate;
}

inline std::optional<double> standard_error(Regime regime, std::size_t m) {
    switch (regime) {
        case Regime::normal: return theoretical_sd(0.5, m);
        case Regime::mixed_normal: return theoretical_sd(1.0, m);
        default: return std::nullopt;
    }
}

}  // namespace detail

/**
 * @brief Local Whittle estimate of d from the first m periodogram ordinates.
 *
 * @throws std::invalid_argument for n < 4, m outside 1..n-1 or bad bounds
 * @throws degenerate_input when the ordinates vanish (constant series)
 */
[[nodiscard]] inline WhittleFit estimate(std::span<const double> x, std::size_t m, Bounds bounds = {}) {
    const std::size_t n = x.size();
    if (n < 4) throw std::invalid_argument("estimate: need n >= 4, got " + std::to_string(n));
    if (m < 1 || m > n - 1) {
        throw std::invalid_argument("estimate: m = " + std::to_string(m) + " outside 1.." + std::to_string(n - 1));
    }
    bounds.validate();
    for (double v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument("estimate: series contains non-finite values");
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
        throw degenerate_input("estimate: series is constant");
    }

    const WhittleObjective r(periodogram(x, m), m);
    WhittleFit fit;
    fit.d_hat = detail::minimize_on_bounds(r, bounds);
    fit.g_hat = r.g_hat(fit.d_hat);
    fit.r_min = r(fit.d_hat);
    if (!(fit.g_hat > 0.0) || !std::isfinite(fit.r_min)) {
        throw degenerate_input("estimate: objective is not finite at the minimizer");
    }
    fit.m = m;
    fit.n = n;
    fit.bounds = bounds;
    fit.method = Method::raw;
    fit.boundary_flag = fit.d_hat - bounds.lower < tuning::boundary_tolerance ||
                        bounds.upper - fit.d_hat < tuning::boundary_tolerance;
    fit.regime = detail::classify_estimate(fit.d_hat);
    fit.se = detail::standard_error(fit.regime, m);
    return fit;
}

/**
 * @brief Estimates d - 1 from first differences and adds one.
 *
 * The bounds constrain the memory parameter of the differenced series; the
 * reported bounds are shifted by +1 into the scale of d. n and m in the result
 * refer to the differenced series.
 */
[[nodiscard]] inline WhittleFit estimate_differenced(std::span<const double> x, std::size_t m, Bounds bounds = {}) {
    if (x.size() < 5) throw std::invalid_argument("estimate_differenced: need n >= 5");
    const auto dx = difference(x);
    WhittleFit fit = estimate(dx, m, bounds);
    const Regime differenced_regime = fit.regime;
    fit.d_hat = 1.0 + fit.d_hat;
    fit.bounds = {bounds.lower + 1.0, bounds.upper + 1.0};
    fit.method = Method::differenced;
    fit.regime = detail::classify_estimate(fit.d_hat);
    fit.se = detail::standard_error(differenced_regime, fit.m);
    return fit;
}

/// Estimation with m derived from the length of the series actually transformed
/// (n for raw, n - 1 for differenced).
[[nodiscard]] inline WhittleFit estimate_with_exponent(std::span<const double> x, double exponent,
                                                       Method method = Method::raw, Bounds bounds = {}) {
    if (method == Method::raw) return estimate(x, bandwidth(x.size(), exponent), bounds);
    if (x.size() < 5) throw std::invalid_argument("estimate_differenced: need n >= 5");
    return estimate_differenced(x, bandwidth(x.size() - 1, exponent), bounds);
}

}  // namespace lwhittle
