#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lwhittle {

/// Fundamental frequency lambda_s = 2 pi s / n.
[[nodiscard]] inline double fundamental_frequency(std::size_t s, std::size_t n) {
    return 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(n);
}

/**
 * @brief Periodogram ordinates I(lambda_s) for s = 1..size().
 *
 * ordinates[s - 1] holds I(lambda_s).
 */
struct Periodogram {
    std::size_t n = 0;
    std::vector<double> ordinates;

    [[nodiscard]] std::size_t size() const noexcept { return ordinates.size(); }
    [[nodiscard]] double frequency(std::size_t s) const { return fundamental_frequency(s, n); }
    [[nodiscard]] double at(std::size_t s) const { return ordinates.at(s - 1); }
};

namespace detail {

/// e^{2 pi i k / n} for k = 0..n-1. Angles come from the reduced integer k,
/// so no precision is lost for large t * s.
class UnitRoots {
public:
    explicit UnitRoots(std::size_t n) : roots_(n) {
        for (std::size_t k = 0; k < n; ++k) roots_[k] = std::polar(1.0, fundamental_frequency(k, n));
    }
    [[nodiscard]] std::complex<double> operator()(std::size_t t, std::size_t s) const {
        return roots_[(t % roots_.size()) * (s % roots_.size()) % roots_.size()];
    }

private:
    std::vector<std::complex<double>> roots_;
};

inline std::complex<double> dft_with(std::span<const double> x, std::size_t s, const UnitRoots& roots) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 1; t <= x.size(); ++t) acc += x[t - 1] * roots(t, s);
    return acc / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(x.size()));
}

// FFTW's planner is not re-entrant.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// w(lambda_s) = (2 pi n)^{-1/2} sum_{t=1}^n x_t e^{i t lambda_s}.
[[nodiscard]] inline std::complex<double> dft(std::span<const double> x, std::size_t s) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("dft: empty series");
    if (s < 1 || s > n) {
        throw std::invalid_argument("dft: frequency index " + std::to_string(s) + " outside 1.." +
                                    std::to_string(n));
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 1; t <= n; ++t) {
        acc += x[t - 1] * std::polar(1.0, fundamental_frequency((t * s) % n, n));
    }
    return acc / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n));
}

/// Direct O(nm) periodogram at s = 1..m.
[[nodiscard]] inline Periodogram periodogram(std::span<const double> x, std::size_t m) {
    const std::size_t n = x.size();
    if (m < 1 || m > n) {
        throw std::invalid_argument("periodogram: m = " + std::to_string(m) + " outside 1.." +
                                    std::to_string(n));
    }
    const detail::UnitRoots roots(n);
    Periodogram p{n, std::vector<double>(m)};
    for (std::size_t s = 1; s <= m; ++s) p.ordinates[s - 1] = std::norm(detail::dft_with(x, s, roots));
    return p;
}

/// Full-spectrum periodogram (s = 1..n) via FFTW.
[[nodiscard]] inline Periodogram full_periodogram(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("full_periodogram: empty series");

    std::vector<double> in(x.begin(), x.end());
    std::vector<fftw_complex> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(detail::fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    // |sum_t x_t e^{i t lambda_s}| equals |Y_{s mod n}| of the forward transform
    // Y_k = sum_j x_{j+1} e^{-2 pi i j k / n}; the upper half mirrors the lower.
    const double norm = 2.0 * std::numbers::pi * static_cast<double>(n);
    Periodogram p{n, std::vector<double>(n)};
    for (std::size_t s = 1; s <= n; ++s) {
        std::size_t k = s % n;
        if (k > n / 2) k = n - k;
        p.ordinates[s - 1] = (out[k][0] * out[k][0] + out[k][1] * out[k][1]) / norm;
    }
    return p;
}

}  // namespace lwhittle
