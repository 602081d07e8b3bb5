// Command-line front end: simulate, estimate, montecarlo, density, asymptotics, verify.
//
// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 numeric/degenerate error.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lwhittle/lwhittle.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;
constexpr int exit_numeric = 4;

class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

double parse_number(std::string_view text, std::string_view what) {
    double v = 0.0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw usage_error(std::string(what) + ": cannot parse '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

lwhittle::Bounds parse_range(const std::string& text) {
    const auto parts = split_on(text, ':');
    if (parts.size() != 2) throw usage_error("--range: expected lo:hi, got '" + text + "'");
    lwhittle::Bounds b{parse_number(parts[0], "--range"), parse_number(parts[1], "--range")};
    b.validate();
    return b;
}

std::vector<double> parse_list(const std::string& text, std::string_view what) {
    std::vector<double> out;
    for (const auto& p : split_on(text, ',')) out.push_back(parse_number(p, what));
    if (out.empty()) throw usage_error(std::string(what) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, std::string_view what) {
    std::vector<std::size_t> out;
    for (double v : parse_list(text, what)) {
        if (v < 1 || v != std::floor(v)) throw usage_error(std::string(what) + ": expected positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

/// Writes through a callback to a file, or to stdout for "-".
template <class F>
void emit(const std::string& path, F&& write) {
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        if (!std::cout) throw lwhittle::io_error("failed writing to stdout");
        return;
    }
    std::ofstream out(path);
    if (!out) throw lwhittle::io_error("cannot open '" + path + "' for writing");
    write(out);
    out.close();
    if (!out) throw lwhittle::io_error("failed writing '" + path + "'");
}

std::optional<lwhittle::PowerTrend> make_trend(const std::optional<double>& mu, const std::optional<double>& alpha) {
    if (!mu && !alpha) return std::nullopt;
    if (!mu) throw usage_error("--trend-alpha requires --trend-mu");
    return lwhittle::PowerTrend{*mu, alpha.value_or(1.0)};
}

struct SimulateOptions {
    double d = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double x0 = 0.0;
    double sigma = 1.0;
    std::optional<double> trend_mu;
    std::optional<double> trend_alpha;
    std::string filter;
    std::string out = "-";
};

struct EstimateOptions {
    std::string input;
    double m_exponent = 0.5;
    std::optional<std::size_t> m;
    std::string range = "-0.45:2.5";
    bool diff = false;
    std::string out = "-";
    std::string periodogram_out;
};

struct MonteCarloOptions {
    std::string d_list;
    std::string n_list;
    std::size_t reps = 1000;
    double m_exponent = 0.5;
    bool diff = false;
    std::optional<double> trend_mu;
    std::optional<double> trend_alpha;
    std::string range = "-0.45:2.5";
    std::uint64_t seed = 0;
    std::size_t threads = 0;
    std::string out = "-";
    // density only
    std::string grid;
    std::optional<double> bandwidth;
};

struct AsymptoticsOptions {
    double d = 0.0;
    std::size_t m = 1;
    std::string out = "-";
};

struct VerifyOptions {
    std::size_t seeds = 20;
    std::string out = "-";
};

int cmd_simulate(const SimulateOptions& o) {
    lwhittle::SimConfig cfg;
    cfg.d = o.d;
    cfg.n = o.n;
    cfg.seed = o.seed;
    cfg.x0 = o.x0;
    if (!o.filter.empty()) {
        cfg.innovation = lwhittle::LinearFilter{parse_list(o.filter, "--filter")};
    } else {
        cfg.innovation = lwhittle::IidGaussian{o.sigma};
    }
    cfg.trend = make_trend(o.trend_mu, o.trend_alpha);
    cfg.validate();
    const auto x = lwhittle::simulate(cfg);
    emit(o.out, [&](std::ostream& os) { lwhittle::io::write_series_csv(os, x); });
    return exit_ok;
}

int cmd_estimate(const EstimateOptions& o) {
    const lwhittle::Bounds bounds = parse_range(o.range);
    if (!(o.m_exponent > 0.0 && o.m_exponent < 1.0)) throw usage_error("--m-exponent must lie in (0, 1)");

    std::ifstream in(o.input);
    if (!in) throw lwhittle::io_error("cannot open '" + o.input + "'");
    const auto all = lwhittle::io::read_series_csv(in);
    const bool long_format = !(all.size() == 1 && all.front().name == "x");

    const auto method = o.diff ? lwhittle::Method::differenced : lwhittle::Method::raw;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& named : all) {
        const lwhittle::Series x(named.values);
        lwhittle::WhittleFit fit;
        if (o.m) {
            fit = o.diff ? lwhittle::estimate_differenced(x, *o.m, bounds) : lwhittle::estimate(x, *o.m, bounds);
        } else {
            fit = lwhittle::estimate_with_exponent(x, o.m_exponent, method, bounds);
        }
        if (!long_format) {
            rows = lwhittle::io::to_json(fit);
        } else {
            nlohmann::ordered_json j;
            j["series"] = named.name;
            j.update(lwhittle::io::to_json(fit));
            rows.push_back(std::move(j));
        }
        if (!o.periodogram_out.empty() && !long_format) {
            const auto dx = o.diff ? lwhittle::difference(x) : x.values();
            const auto p = lwhittle::periodogram(dx, fit.m);
            emit(o.periodogram_out, [&](std::ostream& os) { lwhittle::io::write_periodogram_csv(os, p); });
        }
    }
    if (!o.periodogram_out.empty() && long_format) {
        throw usage_error("--periodogram-out needs a single-series input");
    }
    emit(o.out, [&](std::ostream& os) { os << rows.dump(2) << '\n'; });
    return exit_ok;
}

lwhittle::MCSpec make_mc_spec(const MonteCarloOptions& o) {
    lwhittle::MCSpec spec;
    spec.d_values = parse_list(o.d_list, "--d");
    spec.n_values = parse_size_list(o.n_list, "--n");
    spec.reps = o.reps;
    spec.bandwidth_exponent = o.m_exponent;
    spec.estimator = o.diff ? lwhittle::Method::differenced : lwhittle::Method::raw;
    spec.trend = make_trend(o.trend_mu, o.trend_alpha);
    spec.bounds = parse_range(o.range);
    spec.base_seed = o.seed;
    spec.validate();
    return spec;
}

std::size_t resolve_threads(std::size_t requested) {
    return requested == 0 ? lwhittle::default_workers() : requested;
}

int cmd_montecarlo(const MonteCarloOptions& o) {
    const auto spec = make_mc_spec(o);
    const auto result = lwhittle::run_mc(spec, resolve_threads(o.threads));
    emit(o.out, [&](std::ostream& os) { lwhittle::io::write_mc_csv(os, result); });
    return exit_ok;
}

int cmd_density(const MonteCarloOptions& o) {
    auto spec = make_mc_spec(o);
    if (spec.n_values.size() != 1) throw usage_error("density: give exactly one --n");
    if (spec.reps < 2) throw usage_error("density: --reps must be >= 2");
    if (o.bandwidth && !(*o.bandwidth > 0.0)) throw usage_error("--bandwidth must be positive");
    spec.keep_estimates = true;
    const auto result = lwhittle::run_mc(spec, resolve_threads(o.threads));

    std::vector<lwhittle::io::DensityCurve> curves;
    for (const auto& cell : result.cells) {
        std::vector<double> grid;
        if (!o.grid.empty()) {
            const auto parts = split_on(o.grid, ':');
            if (parts.size() != 3) throw usage_error("--grid: expected lo:hi:points");
            const double points = parse_number(parts[2], "--grid");
            if (points < 2 || points != std::floor(points)) throw usage_error("--grid: points must be an integer >= 2");
            grid = lwhittle::linspace(parse_number(parts[0], "--grid"), parse_number(parts[1], "--grid"),
                                      static_cast<std::size_t>(points));
        } else {
            const double bw = o.bandwidth.value_or(lwhittle::silverman_bandwidth(cell.estimates));
            const auto [lo, hi] = std::minmax_element(cell.estimates.begin(), cell.estimates.end());
            grid = lwhittle::linspace(*lo - 4.0 * bw, *hi + 4.0 * bw, 401);
        }
        auto density = lwhittle::kde(cell.estimates, grid, o.bandwidth);
        curves.push_back({cell.d, std::move(grid), std::move(density)});
    }
    emit(o.out, [&](std::ostream& os) { lwhittle::io::write_density_csv(os, curves); });
    return exit_ok;
}

int cmd_asymptotics(const AsymptoticsOptions& o) {
    if (o.m < 1) throw usage_error("--m must be >= 1");
    const auto law = lwhittle::limit_law(o.d);
    emit(o.out, [&](std::ostream& os) { os << lwhittle::io::to_json(law, o.m).dump(2) << '\n'; });
    return exit_ok;
}

int cmd_verify(const VerifyOptions& o) {
    if (o.seeds < 1) throw usage_error("--seeds must be >= 1");
    const auto identity = lwhittle::oracle::run_identity_grid(o.seeds);
    const auto rates = lwhittle::oracle::run_dn_rate_checks();
    bool all_pass = true;
    emit(o.out, [&](std::ostream& os) {
        using lwhittle::io::format_double;
        os << "check,d,theta,n,s,seeds,value,tolerance,result\n";
        for (const auto& r : identity) {
            os << (r.d == 1.0 ? "identity_unit_root" : "identity_general") << ',' << format_double(r.d) << ','
               << format_double(1.0 - r.d) << ',' << r.n << ',' << r.s << ',' << r.seeds << ','
               << format_double(r.max_rel_residual) << ',' << format_double(r.tolerance) << ','
               << (r.pass ? "pass" : "fail") << '\n';
            all_pass = all_pass && r.pass;
        }
        for (const auto& r : rates) {
            // tolerance column holds the predicted ratio; pass means within [0.5x, 2x]
            os << "dn_rate_" << r.doubling << ",," << format_double(r.theta) << ',' << r.n << ",2-8,,"
               << format_double(r.observed) << ',' << format_double(r.predicted) << ','
               << (r.pass ? "pass" : "fail") << '\n';
            all_pass = all_pass && r.pass;
        }
    });
    return all_pass ? exit_ok : exit_numeric;
}

void add_mc_flags(CLI::App* cmd, MonteCarloOptions& o) {
    cmd->add_option("--d", o.d_list, "Comma-separated memory parameters")->required();
    cmd->add_option("--n", o.n_list, "Comma-separated sample sizes")->required();
    cmd->add_option("--reps", o.reps, "Replications per cell")->check(CLI::PositiveNumber);
    cmd->add_option("--m-exponent", o.m_exponent, "Bandwidth exponent q, m = floor(n^q)");
    cmd->add_flag("--diff", o.diff, "Use the differenced estimator");
    cmd->add_option("--trend-mu", o.trend_mu, "Trend coefficient mu in mu * t^alpha");
    cmd->add_option("--trend-alpha", o.trend_alpha, "Trend power alpha (default 1)");
    cmd->add_option("--range", o.range, "Admissible d range lo:hi");
    cmd->add_option("--seed", o.seed, "Base seed");
    cmd->add_option("--threads", o.threads, "Worker threads (default LONGMEM_THREADS or all cores)");
    cmd->add_option("--out", o.out, "Output path, - for stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local Whittle estimation of the memory parameter of fractional time series"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a fractionally integrated series (CSV column x)");
    simulate->add_option("--d", sim.d, "Memory parameter")->required();
    simulate->add_option("--n", sim.n, "Sample size")->required();
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--x0", sim.x0, "Initial value X_0");
    simulate->add_option("--sigma", sim.sigma, "Innovation standard deviation");
    simulate->add_option("--filter", sim.filter, "Comma-separated linear filter c_0,..,c_q for innovations");
    simulate->add_option("--trend-mu", sim.trend_mu, "Trend coefficient mu in mu * t^alpha");
    simulate->add_option("--trend-alpha", sim.trend_alpha, "Trend power alpha (default 1)");
    simulate->add_option("--out", sim.out, "Output path, - for stdout");

    EstimateOptions est;
    auto* estimate = app.add_subcommand("estimate", "Local Whittle estimate from a CSV series");
    estimate->add_option("--input", est.input, "CSV with column x (or series,x)")->required();
    auto* m_exp = estimate->add_option("--m-exponent", est.m_exponent, "Bandwidth exponent q, m = floor(n^q)");
    estimate->add_option("--m", est.m, "Explicit bandwidth")->excludes(m_exp);
    estimate->add_option("--range", est.range, "Admissible d range lo:hi");
    estimate->add_flag("--diff", est.diff, "Estimate d - 1 from first differences and add one");
    estimate->add_option("--out", est.out, "Output path, - for stdout");
    estimate->add_option("--periodogram-out", est.periodogram_out, "Also write the periodogram CSV (s,lambda,I)");

    MonteCarloOptions mc;
    auto* montecarlo = app.add_subcommand("montecarlo", "Replicated bias / s.d. table");
    add_mc_flags(montecarlo, mc);

    MonteCarloOptions dens;
    auto* density = app.add_subcommand("density", "Kernel density of simulated estimates");
    add_mc_flags(density, dens);
    density->add_option("--grid", dens.grid, "Evaluation grid lo:hi:points");
    density->add_option("--bandwidth", dens.bandwidth, "Kernel bandwidth (default Silverman)");

    AsymptoticsOptions asy;
    auto* asymptotics = app.add_subcommand("asymptotics", "Limit law description for a true d");
    asymptotics->add_option("--d", asy.d, "True memory parameter")->required();
    asymptotics->add_option("--m", asy.m, "Bandwidth")->required();
    asymptotics->add_option("--out", asy.out, "Output path, - for stdout");

    VerifyOptions ver;
    auto* verify = app.add_subcommand("verify", "Run the exact DFT identity and D_n rate checks");
    verify->add_option("--seeds", ver.seeds, "Seeds per grid point");
    verify->add_option("--out", ver.out, "Output path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*estimate) return cmd_estimate(est);
        if (*montecarlo) return cmd_montecarlo(mc);
        if (*density) return cmd_density(dens);
        if (*asymptotics) return cmd_asymptotics(asy);
        if (*verify) return cmd_verify(ver);
    } catch (const lwhittle::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numeric;
    }
    return exit_usage;
}
