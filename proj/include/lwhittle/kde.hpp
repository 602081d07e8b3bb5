#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lwhittle/series.hpp"

namespace lwhittle {

/// Silverman's rule of thumb, 0.9 min(sd, IQR / 1.34) N^{-1/5}.
[[nodiscard]] inline double silverman_bandwidth(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("silverman_bandwidth: need at least 2 samples");
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    // linear interpolation between order statistics
    auto quantile = [&](double p) {
        const double pos = p * static_cast<double>(n - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, n - 1);
        return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

/**
 * @brief Gaussian kernel density estimate evaluated on a grid.
 *
 * @throws std::invalid_argument for fewer than 2 samples or a non-positive bandwidth
 * @throws degenerate_input when the default bandwidth collapses to zero
 */
[[nodiscard]] inline std::vector<double> kde(std::span<const double> samples, std::span<const double> grid,
                                             std::optional<double> bandwidth = std::nullopt) {
    if (samples.size() < 2) throw std::invalid_argument("kde: need at least 2 samples");
    double h = 0.0;
    if (bandwidth) {
        if (!(*bandwidth > 0.0)) throw std::invalid_argument("kde: bandwidth must be positive");
        h = *bandwidth;
    } else {
        h = silverman_bandwidth(samples);
        if (!(h > 0.0)) throw degenerate_input("kde: samples have zero spread; pass an explicit bandwidth");
    }
    const double norm = 1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * std::numbers::pi));
    std::vector<double> density(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double acc = 0.0;
        for (double x : samples) {
            const double z = (grid[g] - x) / h;
            acc += std::exp(-0.5 * z * z);
        }
        density[g] = acc * norm;
    }
    return density;
}

/// Evenly spaced grid of `points` values over [lo, hi].
[[nodiscard]] inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo)) throw std::invalid_argument("linspace: need points >= 2 and lo < hi");
    std::vector<double> g(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    return g;
}

}  // namespace lwhittle
