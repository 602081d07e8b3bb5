#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lwhittle/asymptotics.hpp"
#include "lwhittle/fracsim.hpp"
#include "lwhittle/whittle.hpp"

namespace lwhittle {

struct MCSpec {
    std::vector<double> d_values;
    std::vector<std::size_t> n_values;
    std::size_t reps = 1;
    double bandwidth_exponent = 0.5;
    Method estimator = Method::raw;
    std::optional<PowerTrend> trend;
    Bounds bounds;
    std::uint64_t base_seed = 0;
    bool keep_estimates = false;

    void validate() const {
        if (d_values.empty() || n_values.empty()) throw std::invalid_argument("MCSpec: need at least one d and one n");
        if (reps < 1) throw std::invalid_argument("MCSpec: reps must be >= 1");
        for (auto n : n_values) {
            if (n < 8) throw std::invalid_argument("MCSpec: every n must be >= 8");
        }
        for (double d : d_values) {
            if (!std::isfinite(d)) throw std::invalid_argument("MCSpec: d values must be finite");
        }
        if (!(bandwidth_exponent > 0.0 && bandwidth_exponent < 1.0)) {
            throw std::invalid_argument("MCSpec: bandwidth exponent must lie in (0, 1)");
        }
        bounds.validate();
        if (trend) {
            if (trend->mu == 0.0 || !(trend->alpha > 0.0)) {
                throw std::invalid_argument("MCSpec: trend needs mu != 0 and alpha > 0");
            }
        }
    }
};

struct MCCell {
    double d = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t reps = 0;
    double bias = 0.0;
    double sd = 0.0;
    std::optional<double> tsd;
    std::vector<double> estimates;  ///< filled only when MCSpec::keep_estimates
};

struct MCResult {
    std::vector<MCCell> cells;  ///< ordered by d, then n, in the order of d_values and n_values
};

/// splitmix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream seed for one replication: chained splitmix64 over (base, bits of d, n, rep).
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t base_seed, double d, std::size_t n, std::size_t rep) {
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ std::bit_cast<std::uint64_t>(d));
    h = mix64(h ^ static_cast<std::uint64_t>(n));
    h = mix64(h ^ static_cast<std::uint64_t>(rep));
    return h;
}

/// Worker count from LONGMEM_THREADS, else the number of hardware threads.
[[nodiscard]] inline std::size_t default_workers() {
    if (const char* env = std::getenv("LONGMEM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Mean and sample standard deviation (n - 1 denominator; 0 for one value),
/// accumulated in index order.
struct Summary {
    double mean = 0.0;
    double sd = 0.0;
};

[[nodiscard]] inline Summary summarize(std::span<const double> v) {
    Summary s;
    if (v.empty()) return s;
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
    return s;
}

/// Simulates and estimates one replication of a cell.
[[nodiscard]] inline double run_replication(const MCSpec& spec, double d, std::size_t n, std::size_t rep) {
    SimConfig cfg;
    cfg.d = d;
    cfg.n = n;
    cfg.trend = spec.trend;
    cfg.seed = derive_seed(spec.base_seed, d, n, rep);
    const Series x = simulate(cfg);
    return estimate_with_exponent(x, spec.bandwidth_exponent, spec.estimator, spec.bounds).d_hat;
}

/**
 * @brief Replicated simulation and estimation over every (d, n) cell.
 *
 * Replications are spread over workers threads (0 selects default_workers()).
 * Each replication owns its RNG stream and writes to its own slot; summaries are
 * reduced afterwards in (d, n, rep) order, so results do not depend on workers.
 *
 * @throws degenerate_input naming the first failing (d, n, rep) if any estimation fails
 */
[[nodiscard]] inline MCResult run_mc(const MCSpec& spec, std::size_t workers = 0) {
    spec.validate();
    if (workers == 0) workers = default_workers();

    struct Job {
        std::size_t cell;
        double d;
        std::size_t n;
    };
    std::vector<Job> jobs;
    for (double d : spec.d_values) {
        for (std::size_t n : spec.n_values) jobs.push_back({jobs.size(), d, n});
    }
    const std::size_t total = jobs.size() * spec.reps;
    std::vector<double> estimates(total);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::size_t error_index = total;
    std::string error_message;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= total || failed.load(std::memory_order_relaxed)) return;
            const Job& job = jobs[i / spec.reps];
            const std::size_t rep = i % spec.reps + 1;
            try {
                estimates[i] = run_replication(spec, job.d, job.n, rep);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    std::ostringstream os;
                    os << "montecarlo: replication failed at d=" << job.d << " n=" << job.n << " rep=" << rep << ": "
                       << e.what();
                    error_message = os.str();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    const std::size_t threads = std::min(workers, std::max<std::size_t>(total, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failed) throw degenerate_input(error_message);

    MCResult result;
    for (const Job& job : jobs) {
        const std::span<const double> sample(estimates.data() + job.cell * spec.reps, spec.reps);
        const Summary s = summarize(sample);
        MCCell cell;
        cell.d = job.d;
        cell.n = job.n;
        const std::size_t effective_n = spec.estimator == Method::raw ? job.n : job.n - 1;
        cell.m = bandwidth(effective_n, spec.bandwidth_exponent);
        cell.reps = spec.reps;
        cell.bias = s.mean - job.d;
        cell.sd = s.sd;
        // d - 1 is what the differenced estimator targets; a trend leaves no limit law
        if (!spec.trend) {
            cell.tsd = theoretical_sd(spec.estimator == Method::raw ? job.d : job.d - 1.0, cell.m);
        }
        if (spec.keep_estimates) cell.estimates.assign(sample.begin(), sample.end());
        result.cells.push_back(std::move(cell));
    }
    return result;
}

}  // namespace lwhittle
