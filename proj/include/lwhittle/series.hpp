#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lwhittle {

/// Raised when the input is well-formed but numerically degenerate
/// (constant series, all-zero periodogram, zero-spread sample, ...).
class degenerate_input : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised for file and stream failures.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief A finite real-valued time series x_1..x_n with n >= 2.
 *
 * Position 0 of the underlying storage holds x_1.
 */
class Series {
public:
    Series() = default;

    explicit Series(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 2) {
            throw std::invalid_argument("series needs at least 2 observations, got " +
                                        std::to_string(values_.size()));
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw std::invalid_argument("series entry " + std::to_string(i + 1) +
                                            " is not finite");
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] const std::vector<double>& values() const& noexcept { return values_; }
    [[nodiscard]] std::vector<double> values() && noexcept { return std::move(values_); }
    [[nodiscard]] std::span<const double> span() const noexcept { return values_; }
    operator std::span<const double>() const noexcept { return values_; }

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<double> values_;
};

/// First differences x_t - x_{t-1}, t = 2..n.
[[nodiscard]] inline std::vector<double> difference(std::span<const double> x) {
    std::vector<double> out;
    if (x.size() < 2) return out;
    out.reserve(x.size() - 1);
    for (std::size_t t = 1; t < x.size(); ++t) out.push_back(x[t] - x[t - 1]);
    return out;
}

}  // namespace lwhittle
