#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsfd/analytic.hpp"
#include "bsfd/bs_pricer.hpp"
#include "bsfd/csv_io.hpp"
#include "bsfd/heat_kernel.hpp"
#include "bsfd/mc.hpp"
#include "bsfd/stability.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitGate = 4;

constexpr double kHeatKernelTol = 1e-9;

enum class Engine { Analytic, Pde, HeatKernel, Mc, All };

struct RunConfig {
    std::string command;
    bsfd::OptionKind kind = bsfd::OptionKind::Call;
    double strike = 10.0;
    double rate = 0.1;
    double vol = 0.4;
    double expiry = 0.5;
    double spot = 10.0;
    double s_max = 0.0;  // 0 means "4 * strike"
    std::size_t m_space = 400;
    std::size_t n_time = 400;
    bool strike_midway = false;
    Engine engine = Engine::All;
    std::uint64_t seed = 42;
    std::size_t n_paths = 100000;
    std::size_t n_steps = 250;
    double drift = std::numeric_limits<double>::quiet_NaN();  // defaults to rate
    std::size_t levels = 4;
    double min_order = 1.5;
    double vol_from = 0.05;
    double vol_to = 1.0;
    std::size_t vol_steps = 20;
    std::string out_path;
};

bsfd::OptionSpec make_spec(const RunConfig& cfg) {
    bsfd::OptionSpec spec{cfg.kind, cfg.strike, cfg.rate, cfg.vol, cfg.expiry};
    spec.validate();
    return spec;
}

double effective_smax(const RunConfig& cfg) {
    return cfg.s_max > 0.0 ? cfg.s_max : 4.0 * cfg.strike;
}

bsfd::SpatialGrid make_grid(const RunConfig& cfg) {
    const double s_max = effective_smax(cfg);
    std::size_t m = cfg.m_space;
    if (cfg.strike_midway) m = bsfd::strike_midway_intervals(m, cfg.strike, s_max);
    return bsfd::SpatialGrid(s_max, m);
}

// Runs the writer against --out when given, stdout otherwise.
template <typename Writer>
void emit(const std::string& out_path, Writer&& writer) {
    if (out_path.empty()) {
        writer(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    writer(out);
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

double pde_price(const RunConfig& cfg, const bsfd::OptionSpec& spec) {
    const bsfd::SpatialGrid grid = make_grid(cfg);
    const bsfd::TimeGrid tgrid(cfg.n_time, spec.expiry);
    const bsfd::PriceSurface surface = bsfd::cn_bs_solve(spec, grid, tgrid);
    return bsfd::price_at(surface, cfg.spot, 0.0);
}

int run_price(const RunConfig& cfg) {
    const bsfd::OptionSpec spec = make_spec(cfg);
    const bsfd::MarketQuery query{cfg.spot, 0.0};
    query.validate(spec);

    std::cout.precision(12);
    const bool all = cfg.engine == Engine::All;
    if (all || cfg.engine == Engine::Analytic)
        std::cout << "analytic," << bsfd::price(spec, query) << '\n';
    if (all || cfg.engine == Engine::Pde)
        std::cout << "pde," << pde_price(cfg, spec) << '\n';
    if (all || cfg.engine == Engine::HeatKernel)
        std::cout << "heatkernel," << bsfd::price_via_heat_kernel(spec, query, kHeatKernelTol)
                  << '\n';
    if (all || cfg.engine == Engine::Mc) {
        const bsfd::McEstimate est = bsfd::mc_price(spec, cfg.spot, cfg.n_paths, cfg.seed);
        std::cout << "mc," << est.mean << ',' << est.std_error << '\n';
    }
    return kExitOk;
}

int run_surface(const RunConfig& cfg) {
    const bsfd::OptionSpec spec = make_spec(cfg);
    const bsfd::SpatialGrid grid = make_grid(cfg);
    const bsfd::TimeGrid tgrid(cfg.n_time, spec.expiry);
    const bsfd::PriceSurface surface = bsfd::cn_bs_solve(spec, grid, tgrid);
    emit(cfg.out_path, [&](std::ostream& out) { bsfd::write_surface_csv(out, surface); });
    return kExitOk;
}

int run_converge(const RunConfig& cfg) {
    const bsfd::OptionSpec spec = make_spec(cfg);
    const bsfd::ConvergenceReport report = bsfd::convergence_study(
        spec, cfg.m_space, cfg.n_time, cfg.levels, effective_smax(cfg), cfg.strike_midway);
    emit(cfg.out_path, [&](std::ostream& out) { bsfd::write_convergence_csv(out, report); });
    const double fitted = report.fitted_order();
    std::cerr << "fitted order: " << fitted << '\n';
    if (fitted < cfg.min_order) {
        std::cerr << "error: fitted order " << fitted << " below gate " << cfg.min_order
                  << '\n';
        return kExitGate;
    }
    return kExitOk;
}

int run_stability(const RunConfig& cfg) {
    const std::vector<double> c_values{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8,
                                       1.0, 2.0, 5.0, 10.0, 100.0};
    std::vector<double> theta_values(64);
    constexpr double kPi = 3.14159265358979323846;
    for (std::size_t j = 0; j < theta_values.size(); ++j)
        theta_values[j] = kPi * static_cast<double>(j + 1) / 64.0;
    emit(cfg.out_path, [&](std::ostream& out) {
        bsfd::write_stability_csv(out, c_values, theta_values);
    });
    return kExitOk;
}

int run_mc(const RunConfig& cfg) {
    const bsfd::OptionSpec spec = make_spec(cfg);
    const bsfd::MarketQuery query{cfg.spot, 0.0};
    query.validate(spec);
    const bsfd::McEstimate est = bsfd::mc_price(spec, cfg.spot, cfg.n_paths, cfg.seed);
    std::cout.precision(12);
    std::cout << "mc," << est.mean << ',' << est.std_error << ',' << est.n_paths << ','
              << est.seed << '\n';
    return kExitOk;
}

int run_paths(const RunConfig& cfg) {
    const double drift = std::isnan(cfg.drift) ? cfg.rate : cfg.drift;
    const bsfd::GbmParams params{drift, cfg.vol, cfg.spot};
    const std::vector<double> path =
        bsfd::simulate_path(params, cfg.expiry, cfg.n_steps, cfg.seed);
    const double dt = cfg.expiry / static_cast<double>(cfg.n_steps);
    emit(cfg.out_path, [&](std::ostream& out) { bsfd::write_path_csv(out, path, dt); });
    return kExitOk;
}

int run_volsweep(const RunConfig& cfg) {
    if (cfg.vol_steps < 2) throw std::invalid_argument("volsweep: --vol-steps must be >= 2");
    if (!(cfg.vol_from > 0.0) || !(cfg.vol_to >= cfg.vol_from))
        throw std::invalid_argument("volsweep: need 0 < --vol-from <= --vol-to");

    std::vector<bsfd::VolSweepRow> rows;
    rows.reserve(cfg.vol_steps);
    const double step =
        (cfg.vol_to - cfg.vol_from) / static_cast<double>(cfg.vol_steps - 1);
    for (std::size_t i = 0; i < cfg.vol_steps; ++i) {
        RunConfig point = cfg;
        point.vol = cfg.vol_from + step * static_cast<double>(i);
        const bsfd::OptionSpec spec = make_spec(point);
        const bsfd::MarketQuery query{cfg.spot, 0.0};
        query.validate(spec);
        rows.push_back({point.vol, bsfd::price(spec, query), pde_price(point, spec)});
    }
    emit(cfg.out_path, [&](std::ostream& out) { bsfd::write_volsweep_csv(out, rows); });
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"European option pricing: Crank-Nicolson PDE solver with closed-form, "
                 "heat-kernel and Monte Carlo cross-checks"};
    app.require_subcommand(1);

    const std::map<std::string, bsfd::OptionKind> kind_map{
        {"call", bsfd::OptionKind::Call}, {"put", bsfd::OptionKind::Put}};
    const std::map<std::string, Engine> engine_map{{"analytic", Engine::Analytic},
                                                   {"pde", Engine::Pde},
                                                   {"heatkernel", Engine::HeatKernel},
                                                   {"mc", Engine::Mc},
                                                   {"all", Engine::All}};

    auto add_contract_flags = [&](CLI::App* cmd) {
        cmd->add_option("--kind", cfg.kind, "option kind: call|put")
            ->transform(CLI::CheckedTransformer(kind_map, CLI::ignore_case));
        cmd->add_option("--strike", cfg.strike, "exercise price, > 0");
        cmd->add_option("--rate", cfg.rate, "continuously compounded rate, >= 0");
        cmd->add_option("--vol", cfg.vol, "volatility per sqrt(year), >= 0");
        cmd->add_option("--expiry", cfg.expiry, "expiry in years, > 0");
    };
    auto add_grid_flags = [&](CLI::App* cmd) {
        cmd->add_option("--smax", cfg.s_max, "grid upper price bound (default 4*strike)");
        cmd->add_option("--mspace", cfg.m_space, "spatial intervals");
        cmd->add_option("--ntime", cfg.n_time, "time steps");
        cmd->add_flag("--strike-midway", cfg.strike_midway,
                      "nudge the grid so the strike falls midway between nodes");
    };
    auto add_out_flag = [&](CLI::App* cmd) {
        cmd->add_option("--out", cfg.out_path, "output CSV path (default: stdout)");
    };

    CLI::App* price = app.add_subcommand("price", "value one option across engines");
    add_contract_flags(price);
    add_grid_flags(price);
    price->add_option("--spot", cfg.spot, "asset price the value is asked at");
    price->add_option("--engine", cfg.engine, "analytic|pde|heatkernel|mc|all")
        ->transform(CLI::CheckedTransformer(engine_map, CLI::ignore_case));
    price->add_option("--seed", cfg.seed, "Monte Carlo seed");
    price->add_option("--npaths", cfg.n_paths, "Monte Carlo path count");

    CLI::App* surface = app.add_subcommand("surface", "export the full price surface");
    add_contract_flags(surface);
    add_grid_flags(surface);
    add_out_flag(surface);

    CLI::App* converge = app.add_subcommand("converge", "grid-refinement convergence table");
    add_contract_flags(converge);
    add_grid_flags(converge);
    add_out_flag(converge);
    converge->add_option("--levels", cfg.levels, "refinement levels (each doubles M and N)");
    converge->add_option("--min-order", cfg.min_order,
                         "exit nonzero when the fitted order falls below this");

    CLI::App* stability = app.add_subcommand("stability", "Von Neumann growth-factor table");
    add_out_flag(stability);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo estimate with standard error");
    add_contract_flags(mc);
    mc->add_option("--spot", cfg.spot, "asset price the value is asked at");
    mc->add_option("--seed", cfg.seed, "Monte Carlo seed");
    mc->add_option("--npaths", cfg.n_paths, "Monte Carlo path count");

    CLI::App* paths = app.add_subcommand("paths", "one simulated asset-price path");
    paths->add_option("--spot", cfg.spot, "starting price");
    paths->add_option("--vol", cfg.vol, "volatility per sqrt(year)");
    paths->add_option("--expiry", cfg.expiry, "horizon in years");
    paths->add_option("--rate", cfg.rate, "risk-free rate (drift fallback)");
    paths->add_option("--drift", cfg.drift, "real-world drift (default: --rate)");
    paths->add_option("--nsteps", cfg.n_steps, "steps along the path");
    paths->add_option("--seed", cfg.seed, "path seed");
    add_out_flag(paths);

    CLI::App* volsweep = app.add_subcommand("volsweep", "prices over a volatility grid");
    add_contract_flags(volsweep);
    add_grid_flags(volsweep);
    add_out_flag(volsweep);
    volsweep->add_option("--spot", cfg.spot, "asset price the value is asked at");
    volsweep->add_option("--vol-from", cfg.vol_from, "first volatility");
    volsweep->add_option("--vol-to", cfg.vol_to, "last volatility");
    volsweep->add_option("--vol-steps", cfg.vol_steps, "number of volatilities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (price->parsed()) return run_price(cfg);
        if (surface->parsed()) return run_surface(cfg);
        if (converge->parsed()) {
            // the study starts coarse by default so the refinement is visible
            if (converge->get_option("--mspace")->count() == 0) cfg.m_space = 100;
            if (converge->get_option("--ntime")->count() == 0) cfg.n_time = 100;
            return run_converge(cfg);
        }
        if (stability->parsed()) return run_stability(cfg);
        if (mc->parsed()) return run_mc(cfg);
        if (paths->parsed()) return run_paths(cfg);
        if (volsweep->parsed()) return run_volsweep(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
