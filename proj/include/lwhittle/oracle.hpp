#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lwhittle/fracsim.hpp"
#include "lwhittle/spectral.hpp"

namespace lwhittle::oracle {

using complex = std::complex<double>;

inline constexpr double residual_floor = 1e-300;

/// Both sides of the exact DFT decomposition of a fractionally integrated series.
struct IdentityReport {
    complex lhs;
    complex rhs;
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    complex dn_term;        ///< D_n(e^{i lambda}; theta) w_u(lambda)
    complex utilde_term;    ///< -e^{i n lambda} U~ / sqrt(2 pi n)
    complex endpoint_term;  ///< -e^{i lambda} (e^{i n lambda} X_n - X_0) / sqrt(2 pi n)
};

/// D_n(e^{i lambda}; theta) = sum_{k=0}^n (-theta)_k / k! e^{i k lambda}.
[[nodiscard]] inline complex dn_poly(double lambda, double theta, std::size_t n) {
    if (n < 1) throw std::invalid_argument("dn_poly: n must be >= 1");
    const auto b = pochhammer_coeffs(-theta, n + 1);
    complex acc{0.0, 0.0};
    for (std::size_t k = 0; k <= n; ++k) acc += b[k] * std::polar(1.0, static_cast<double>(k) * lambda);
    return acc;
}

/**
 * @brief U~_{lambda n}(theta) = sum_{p=0}^{n-1} theta~_p e^{-i p lambda} u_{n-p}
 * with theta~_p = sum_{k=p+1}^n (-theta)_k / k! e^{i k lambda}.
 *
 * The tail sums theta~_p are accumulated backwards, so the cost is O(n).
 */
[[nodiscard]] inline complex u_tilde(double lambda, double theta, std::span<const double> u) {
    if (u.empty()) throw std::invalid_argument("u_tilde: empty input");
    const std::size_t n = u.size();
    const auto b = pochhammer_coeffs(-theta, n + 1);
    complex tail{0.0, 0.0};
    complex acc{0.0, 0.0};
    for (std::size_t p = n; p-- > 0;) {
        tail += b[p + 1] * std::polar(1.0, static_cast<double>(p + 1) * lambda);
        acc += tail * std::polar(1.0, -static_cast<double>(p) * lambda) * u[n - 1 - p];
    }
    return acc;
}

/// (1 - e^{i lambda})^theta on the principal branch, in polar form
/// |2 sin(lambda/2)|^theta exp(i theta (lambda - pi) / 2), for 0 < lambda < 2 pi.
[[nodiscard]] inline complex principal_power(double lambda, double theta) {
    const double modulus = std::pow(std::abs(2.0 * std::sin(0.5 * lambda)), theta);
    return std::polar(modulus, theta * (lambda - std::numbers::pi) / 2.0);
}

/**
 * @brief Evaluates both sides of the DFT decomposition of X = (1 - L)^{-d} u + x0
 * at lambda_s.
 *
 * w_x(l)(1 - e^{il}) = D_n(e^{il}; 1-d) w_u(l) - e^{inl} U~ / sqrt(2 pi n)
 *                      - e^{il} (e^{inl} X_n - X_0) / sqrt(2 pi n).
 * For d = 1 the short form w_u - e^{il}(e^{inl} X_n - X_0) / sqrt(2 pi n) is used.
 */
[[nodiscard]] inline IdentityReport dft_identity_residual(std::span<const double> u, double d, std::size_t s,
                                                          double x0 = 0.0) {
    const std::size_t n = u.size();
    if (n < 2) throw std::invalid_argument("dft_identity_residual: need n >= 2");
    if (s < 1 || s > n - 1) {
        throw std::invalid_argument("dft_identity_residual: s = " + std::to_string(s) + " outside 1.." +
                                    std::to_string(n - 1));
    }
    auto x = frac_integrate(u, d);
    for (auto& v : x) v += x0;

    const double lambda = fundamental_frequency(s, n);
    const complex e_l = std::polar(1.0, lambda);
    const complex e_nl = std::polar(1.0, static_cast<double>(n) * lambda);
    const double scale = std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n));
    const complex wu = dft(u, s);

    IdentityReport report;
    report.lhs = dft(x, s) * (1.0 - e_l);
    report.endpoint_term = -e_l * (e_nl * x.back() - x0) / scale;
    if (d == 1.0) {
        report.dn_term = wu;
        report.utilde_term = 0.0;
    } else {
        const double theta = 1.0 - d;
        report.dn_term = dn_poly(lambda, theta, n) * wu;
        report.utilde_term = -e_nl * u_tilde(lambda, theta, u) / scale;
    }
    report.rhs = report.dn_term + report.utilde_term + report.endpoint_term;
    report.abs_residual = std::abs(report.lhs - report.rhs);
    report.rel_residual = report.abs_residual / std::max(std::abs(report.lhs), residual_floor);
    return report;
}

/// |D_n(e^{i lambda_s}; theta) - (1 - e^{i lambda_s})^theta|.
[[nodiscard]] inline double dn_approx_error(std::size_t n, std::size_t s, double theta) {
    if (s < 1 || 4 * s > n) throw std::invalid_argument("dn_approx_error: need 1 <= s <= n/4");
    if (!(theta > -1.0)) throw std::invalid_argument("dn_approx_error: theta must exceed -1");
    const double lambda = fundamental_frequency(s, n);
    return std::abs(dn_poly(lambda, theta, n) - principal_power(lambda, theta));
}

/// Exact DFT of t^alpha, t = 1..n, at lambda_s.
[[nodiscard]] inline complex power_trend_dft(double alpha, std::size_t n, std::size_t s) {
    std::vector<double> trend(n);
    for (std::size_t t = 1; t <= n; ++t) trend[t - 1] = std::pow(static_cast<double>(t), alpha);
    return dft(trend, s);
}

/// Leading term -(1 - e^{i lambda_s})^{-1} n^alpha / sqrt(2 pi n) of the DFT of t^alpha.
[[nodiscard]] inline complex power_trend_leading(double alpha, std::size_t n, std::size_t s) {
    const double lambda = fundamental_frequency(s, n);
    const double nn = static_cast<double>(n);
    return -std::pow(nn, alpha) / std::sqrt(2.0 * std::numbers::pi * nn) / (1.0 - std::polar(1.0, lambda));
}

/// |exact / leading - 1| for the DFT of t^alpha.
[[nodiscard]] inline double trend_dft_check(double alpha, std::size_t n, std::size_t s) {
    if (!(alpha > 0.0)) throw std::invalid_argument("trend_dft_check: alpha must be positive");
    if (s < 1 || 4 * s > n) throw std::invalid_argument("trend_dft_check: need 1 <= s <= n/4");
    return std::abs(power_trend_dft(alpha, n, s) / power_trend_leading(alpha, n, s) - 1.0);
}

struct IdentityGridRow {
    double d = 0.0;
    std::size_t n = 0;
    std::size_t s = 0;
    std::size_t seeds = 0;
    double max_rel_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/**
 * @brief Runs the decomposition identity over d in {-0.3, 0.3, 0.7, 1, 1.4},
 * n in {64, 256, 1024}, s in {1, 2, 5, n/8}, with iid N(0,1) inputs.
 *
 * Tolerance is 1e-8 relative, 1e-10 for the d = 1 short form. Each row holds the
 * worst residual over seeds 1..seeds.
 */
[[nodiscard]] inline std::vector<IdentityGridRow> run_identity_grid(std::size_t seeds = 20) {
    std::vector<IdentityGridRow> rows;
    for (double d : {-0.3, 0.3, 0.7, 1.0, 1.4}) {
        for (std::size_t n : {64u, 256u, 1024u}) {
            for (std::size_t s : {std::size_t{1}, std::size_t{2}, std::size_t{5}, n / 8}) {
                IdentityGridRow row{d, n, s, seeds, 0.0, d == 1.0 ? 1e-10 : 1e-8, false};
                for (std::size_t seed = 1; seed <= seeds; ++seed) {
                    SimConfig cfg;
                    cfg.n = n;
                    cfg.seed = seed;
                    const auto u = draw_innovations(cfg);
                    row.max_rel_residual = std::max(row.max_rel_residual, dft_identity_residual(u, d, s).rel_residual);
                }
                row.pass = row.max_rel_residual <= row.tolerance;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

struct RateCheckRow {
    double theta = 0.0;
    std::string doubling;  ///< "n" or "s"
    std::size_t n = 0;
    double observed = 0.0;   ///< mean error ratio over s = 2..8
    double predicted = 0.0;  ///< 2^{-theta} for n-doubling, 1/2 for s-doubling
    bool pass = false;       ///< observed / predicted within [0.5, 2]
};

/// Convergence-rate checks of D_n towards (1 - e^{i lambda_s})^theta.
[[nodiscard]] inline std::vector<RateCheckRow> run_dn_rate_checks(std::size_t n = 512) {
    std::vector<RateCheckRow> rows;
    for (double theta : {0.3, 0.5}) {
        double n_ratio = 0.0;
        double s_ratio = 0.0;
        for (std::size_t s = 2; s <= 8; ++s) {
            const double base = dn_approx_error(n, s, theta);
            n_ratio += dn_approx_error(2 * n, s, theta) / base;
            s_ratio += dn_approx_error(n, 2 * s, theta) / base;
        }
        n_ratio /= 7.0;
        s_ratio /= 7.0;
        for (auto [kind, observed, predicted] :
             {std::tuple{"n", n_ratio, std::pow(2.0, -theta)}, std::tuple{"s", s_ratio, 0.5}}) {
            const double q = observed / predicted;
            rows.push_back({theta, kind, n, observed, predicted, q >= 0.5 && q <= 2.0});
        }
    }
    return rows;
}

}  // namespace lwhittle::oracle
