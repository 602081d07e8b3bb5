#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lwhittle {

/// Regime of the limit law of the local Whittle estimator, indexed by d0.
enum class Regime { normal, boundary, nonnormal, mixed_normal, degenerate };

[[nodiscard]] constexpr std::string_view to_string(Regime r) noexcept {
    switch (r) {
        case Regime::normal: return "normal";
        case Regime::boundary: return "boundary";
        case Regime::nonnormal: return "nonnormal";
        case Regime::mixed_normal: return "mixed-normal";
        case Regime::degenerate: return "degenerate";
    }
    return "unknown";
}

namespace detail {
inline constexpr double regime_point_tol = 1e-12;
}

/// Exact regime of the true parameter. d0 = 3/4 and d0 = 1 are matched to 1e-12.
[[nodiscard]] inline Regime regime_of(double d0) {
    if (std::abs(d0 - 0.75) <= detail::regime_point_tol) return Regime::boundary;
    if (std::abs(d0 - 1.0) <= detail::regime_point_tol) return Regime::mixed_normal;
    if (d0 < 0.75) return Regime::normal;
    if (d0 < 1.0) return Regime::nonnormal;
    return Regime::degenerate;
}

/// J(d0) = (2 pi)^{2 d0 - 2} Gamma(d0)^{-2} (2 d0 - 1)^{-3} (1 - d0), for 1/2 < d0 < 1.
[[nodiscard]] inline double j_const(double d0) {
    if (!(d0 > 0.5 && d0 < 1.0)) {
        throw std::invalid_argument("j_const: d0 must lie in (1/2, 1), got " + std::to_string(d0));
    }
    const double g = std::tgamma(d0);
    return std::pow(2.0 * std::numbers::pi, 2.0 * d0 - 2.0) / (g * g) / std::pow(2.0 * d0 - 1.0, 3.0) *
           (1.0 - d0);
}

/// Conditional variance of the d0 = 1 mixed normal limit given W = h.
[[nodiscard]] inline double sigma2_mixed(double h) {
    const double h2 = h * h;
    if (!std::isfinite(h2)) return 0.0;
    return 0.25 * (1.0 + 2.0 * h2) / (1.0 + 2.0 * h2 + h2 * h2);
}

/// Standard normal density.
[[nodiscard]] inline double normal_pdf(double h) {
    return std::exp(-0.5 * h * h) / std::sqrt(2.0 * std::numbers::pi);
}

/**
 * @brief Variance of the d0 = 1 limit law, E[sigma^2(W)] with W ~ N(0, 1).
 *
 * Adaptive Gauss-Kronrod over [-10, 10]; the Gaussian tail beyond is below 1e-20.
 */
[[nodiscard]] inline double sigma_d2(double tolerance = 1e-10) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    const double value = gauss_kronrod<double, 21>::integrate(
        [](double h) { return sigma2_mixed(h) * normal_pdf(h); }, -10.0, 10.0, 15, tolerance, &error);
    return value;
}

/**
 * @brief Theoretical standard deviation of d_hat at bandwidth m.
 *
 * 1/(2 sqrt m) in the normal regime, sqrt(sigma_d^2 / m) at d0 = 1, and empty
 * where the limit is non-normal or degenerate.
 */
[[nodiscard]] inline std::optional<double> theoretical_sd(double d0, std::size_t m) {
    if (m < 1) throw std::invalid_argument("theoretical_sd: m must be >= 1");
    const double root_m = std::sqrt(static_cast<double>(m));
    switch (regime_of(d0)) {
        case Regime::normal:
            if (d0 <= -0.5) return std::nullopt;
            return 0.5 / root_m;
        case Regime::mixed_normal: return std::sqrt(sigma_d2()) / root_m;
        default: return std::nullopt;
    }
}

/**
 * @brief Description of the limit law of the normalized estimator.
 *
 * rate_exponent is the power of m in the normalization m^{rate_exponent}(d_hat - d0):
 * 1/2 for normal, boundary and mixed-normal; 2 - 2 d0 for nonnormal; 0 for
 * degenerate, where d_hat -> 1 in probability and no rate is known.
 */
struct LimitLaw {
    Regime regime = Regime::normal;
    double d0 = 0.0;
    double rate_exponent = 0.5;
    std::optional<double> j;        ///< J(d0) for boundary and nonnormal
    std::optional<double> sigma2;   ///< sigma_d^2 for mixed-normal

    [[nodiscard]] std::string rate_description() const {
        switch (regime) {
            case Regime::nonnormal: return "m^(2-2d0)";
            case Regime::degenerate: return "none";
            default: return "m^(1/2)";
        }
    }
};

[[nodiscard]] inline LimitLaw limit_law(double d0) {
    LimitLaw law;
    law.d0 = d0;
    law.regime = regime_of(d0);
    switch (law.regime) {
        case Regime::normal: break;
        case Regime::boundary: law.j = j_const(0.75); break;
        case Regime::nonnormal:
            law.rate_exponent = 2.0 - 2.0 * d0;
            law.j = j_const(d0);
            break;
        case Regime::mixed_normal: law.sigma2 = sigma_d2(); break;
        case Regime::degenerate: law.rate_exponent = 0.0; break;
    }
    return law;
}

/**
 * @brief Draws reps iid values of the normalized limit variable for d0.
 *
 * normal: U/2. boundary: U/2 + J(3/4) W^2. nonnormal: J(d0) W^2.
 * mixed-normal: W ~ N(0,1), then N(0, sigma^2(W)). degenerate: 1 - d0.
 */
[[nodiscard]] inline std::vector<double> sample_limit_law(double d0, std::size_t reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("sample_limit_law: reps must be >= 1");
    const LimitLaw law = limit_law(d0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(reps);
    for (auto& v : out) {
        switch (law.regime) {
            case Regime::normal: v = 0.5 * normal(rng); break;
            case Regime::boundary: {
                const double u = normal(rng);
                const double w = normal(rng);
                v = 0.5 * u + *law.j * w * w;
                break;
            }
            case Regime::nonnormal: {
                const double w = normal(rng);
                v = *law.j * w * w;
                break;
            }
            case Regime::mixed_normal: {
                const double w = normal(rng);
                v = std::sqrt(sigma2_mixed(w)) * normal(rng);
                break;
            }
            case Regime::degenerate: v = 1.0 - d0; break;
        }
    }
    return out;
}

}  // namespace lwhittle
