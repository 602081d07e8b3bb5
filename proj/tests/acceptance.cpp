// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "lwhittle/lwhittle.hpp"
#include "oracles.hpp"

using namespace lwhittle;

namespace {

constexpr std::uint64_t base_seed = 1;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s %2d  %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

struct TableRow {
    double d;
    std::size_t n;
    double bias;
    double sd;
    double tsd;
};

constexpr std::array<TableRow, 6> table1{{
    {0.7, 200, 0.0002, 0.1977, 0.1336},
    {0.7, 500, 0.0093, 0.1451, 0.1066},
    {0.7, 1000, 0.0101, 0.1162, 0.0898},
    {1.0, 200, -0.0235, 0.1779, 0.1204},
    {1.0, 500, -0.0129, 0.1280, 0.0960},
    {1.0, 1000, -0.0102, 0.1019, 0.0809},
}};

const MCCell& cell_for(const MCResult& r, double d, std::size_t n) {
    return *std::find_if(r.cells.begin(), r.cells.end(), [&](const MCCell& c) { return c.d == d && c.n == n; });
}

void table_one(const MCResult& mc) {
    bool ok = true;
    double worst = 0.0;
    for (const auto& row : table1) {
        const auto& c = cell_for(mc, row.d, row.n);
        const double db = std::abs(c.bias - row.bias);
        const double ds = std::abs(c.sd - row.sd);
        worst = std::max({worst, db, ds});
        ok = ok && db <= 0.010 && ds <= 0.010;
        std::printf("      d=%.1f n=%4zu m=%2zu bias=%s (table %s) sd=%s (table %s)\n", row.d, row.n, c.m,
                    fmt(c.bias).c_str(), fmt(row.bias).c_str(), fmt(c.sd).c_str(), fmt(row.sd).c_str());
    }
    report(1, ok, "simulation table, 1e4 reps: max |diff| = " + fmt(worst) + " (tol 0.010)");
}

void tsd_column() {
    bool ok = true;
    std::string got;
    for (const auto& row : table1) {
        const double v = *theoretical_sd(row.d, bandwidth(row.n, 0.5));
        ok = ok && std::abs(std::round(v * 1e4) / 1e4 - row.tsd) < 1e-9;
        got += fmt(v) + " ";
    }
    report(2, ok, "theoretical sd column: " + got);
}

void mixed_normal_variance() {
    const double s2 = sigma_d2();
    const auto draws = sample_limit_law(1.0, 1000000, base_seed);
    const auto sum = summarize(draws);
    const double var = sum.sd * sum.sd;
    const bool ok = std::abs(s2 - 0.2028) <= 5e-4 && std::abs(var - s2) <= 0.002;
    report(3, ok, "sigma_d2 = " + fmt(s2, 7) + ", sampled variance (1e6 draws) = " + fmt(var, 5));
}

void dispersion_ordering(const MCResult& mc) {
    bool ok = true;
    std::string detail;
    for (std::size_t n : {200u, 500u, 1000u}) {
        const double a = cell_for(mc, 1.0, n).sd;
        const double b = cell_for(mc, 0.7, n).sd;
        ok = ok && a < b;
        detail += "n=" + std::to_string(n) + ": " + fmt(a) + " < " + fmt(b) + "  ";
    }
    report(4, ok, "sd(d=1) < sd(d=0.7): " + detail);
}

void nonstationary_concentration() {
    MCSpec spec;
    spec.d_values = {1.5};
    spec.n_values = {2048};
    spec.reps = 1000;
    spec.base_seed = base_seed;
    const auto big = run_mc(spec).cells.at(0);
    const double mean = big.d + big.bias;

    spec.n_values = {500};
    spec.keep_estimates = true;
    const auto small = run_mc(spec).cells.at(0);
    const auto grid = linspace(0.5, 1.5, 2001);
    const auto dens = kde(small.estimates, grid);
    const double mode = grid[static_cast<std::size_t>(std::max_element(dens.begin(), dens.end()) - dens.begin())];

    const bool ok = big.m == 45 && mean >= 0.90 && mean <= 1.10 && std::abs(mode - 1.0) <= 0.1;
    report(5, ok,
           "d0=1.5: n=2048 m=" + std::to_string(big.m) + " mean=" + fmt(mean) + " (in [0.90,1.10]); n=500 KDE mode=" +
               fmt(mode, 3));
}

void trend_dominated() {
    MCSpec spec;
    spec.d_values = {0.7};
    spec.n_values = {2048};
    spec.reps = 1000;
    spec.trend = PowerTrend{1.0, 1.0};
    spec.base_seed = base_seed;
    const auto c = run_mc(spec).cells.at(0);
    const double mean = c.d + c.bias;
    report(6, mean >= 0.90 && mean <= 1.10, "d0=0.7 with linear trend, n=2048: mean=" + fmt(mean) + " (in [0.90,1.10])");
}

void identity_grid() {
    const auto rows = oracle::run_identity_grid(20);
    double worst = 0.0;
    bool ok = !rows.empty();
    for (const auto& r : rows) {
        ok = ok && r.pass;
        worst = std::max(worst, r.max_rel_residual / r.tolerance);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu rows x 20 seeds, worst residual/tolerance = %.2e", rows.size(), worst);
    report(7, ok, std::string("DFT decomposition identity: ") + buf);
}

void rate_checks() {
    bool ok = true;
    std::string detail;
    for (const auto& r : oracle::run_dn_rate_checks()) {
        ok = ok && r.pass;
        detail += "theta=" + fmt(r.theta, 1) + "/" + r.doubling + ": " + fmt(r.observed / r.predicted, 3) + "  ";
    }
    report(8, ok, "D_n error halving, observed/predicted: " + detail);
}

void property_suite() {
    bool parseval = true;
    bool invariance = true;
    bool composition = true;
    bool grid_oracle = true;
    double worst_parseval = 0.0;
    double worst_invariance = 0.0;
    double worst_composition = 0.0;
    double worst_grid = 0.0;

    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SimConfig cfg;
        cfg.d = -0.4 + 0.03 * static_cast<double>(seed);
        cfg.n = 128 + 7 * seed;
        cfg.seed = seed;
        const auto x = simulate(cfg);

        const auto p = full_periodogram(x);
        double energy = 0.0;
        for (double v : x.values()) energy += v * v;
        double total = 0.0;
        for (double v : p.ordinates) total += v;
        const double pe = std::abs(total - energy / (2.0 * std::numbers::pi)) / (energy / (2.0 * std::numbers::pi));
        worst_parseval = std::max(worst_parseval, pe);
        parseval = parseval && pe <= 1e-12;

        const std::size_t m = bandwidth(cfg.n, 0.6);
        const double base = estimate(x, m).d_hat;
        std::vector<double> scaled(x.values());
        std::vector<double> shifted(x.values());
        for (auto& v : scaled) v *= 7.5;
        for (auto& v : shifted) v += 3.0;
        const double dev = std::max(std::abs(estimate(scaled, m).d_hat - base), std::abs(estimate(shifted, m).d_hat - base));
        worst_invariance = std::max(worst_invariance, dev);
        invariance = invariance && dev <= 1e-10;

        const auto u = oracles::gaussian_noise(cfg.n, seed);
        const double a = 0.3 + 0.01 * static_cast<double>(seed);
        const double b = 0.45 - 0.02 * static_cast<double>(seed);
        const auto twice = frac_integrate(frac_integrate(u, a), b);
        const auto once = frac_integrate(u, a + b);
        double scale = 0.0;
        double diff = 0.0;
        for (std::size_t i = 0; i < once.size(); ++i) {
            scale = std::max(scale, std::abs(once[i]));
            diff = std::max(diff, std::abs(once[i] - twice[i]));
        }
        worst_composition = std::max(worst_composition, diff / scale);
        composition = composition && diff <= 1e-10 * scale;

        const WhittleObjective r(periodogram(x, m), m);
        const Bounds bounds;
        const double fine = oracles::grid_argmin(r, bounds.lower, bounds.upper, 0.0005);
        const double gd = std::abs(base - fine);
        worst_grid = std::max(worst_grid, gd);
        grid_oracle = grid_oracle && gd <= 1e-3;
    }

    MCSpec spec;
    spec.d_values = {0.3, 0.7, 1.0, 1.5};
    spec.n_values = {128, 256};
    spec.reps = 100;
    spec.keep_estimates = true;
    spec.base_seed = base_seed;
    const std::size_t max_workers = std::max<std::size_t>(default_workers(), 4);
    const auto one = run_mc(spec, 1);
    bool reproducible = true;
    for (std::size_t w : {std::size_t{2}, max_workers}) {
        const auto other = run_mc(spec, w);
        for (std::size_t i = 0; i < one.cells.size(); ++i) {
            reproducible = reproducible && one.cells[i].estimates == other.cells[i].estimates &&
                           one.cells[i].bias == other.cells[i].bias && one.cells[i].sd == other.cells[i].sd;
        }
    }

    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "parseval %.1e, invariance %.1e, composition %.1e, grid oracle %.1e, run_mc 1/2/%zu workers %s",
                  worst_parseval, worst_invariance, worst_composition, worst_grid, max_workers,
                  reproducible ? "identical" : "differ");
    report(9, parseval && invariance && composition && grid_oracle && reproducible, buf);
}

}  // namespace

int main() {
    MCSpec spec;
    spec.d_values = {0.7, 1.0};
    spec.n_values = {200, 500, 1000};
    spec.reps = 10000;
    spec.base_seed = base_seed;
    const auto mc = run_mc(spec);

    table_one(mc);
    tsd_column();
    mixed_normal_variance();
    dispersion_ordering(mc);
    nonstationary_concentration();
    trend_dominated();
    identity_grid();
    rate_checks();
    property_suite();
    report(10, true, "informational: empirical data table and n -> infinity limit laws are excluded as numeric targets");

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
