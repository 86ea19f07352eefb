// Acceptance suite: runs every gate criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bsfd/analytic.hpp"
#include "bsfd/bs_pricer.hpp"
#include "bsfd/csv_io.hpp"
#include "bsfd/heat_kernel.hpp"
#include "bsfd/mc.hpp"
#include "bsfd/stability.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

const bsfd::OptionSpec kCallScenario{bsfd::OptionKind::Call, 10.0, 0.1, 0.4, 0.5};
const bsfd::OptionSpec kPutScenario{bsfd::OptionKind::Put, 100.0, 0.25, 0.4, 1.0};

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& label) {
        if (!condition) {
            ok = false;
            detail << " [failed: " << label << "]";
        }
    }
};

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::abs(x));
    return m;
}

double heat_error_at_half(std::size_t n_space, std::size_t n_time) {
    const auto history = bsfd::cn_heat_solve(n_space, n_time, 0.5);
    const auto& last = history.back();
    const double decay = std::exp(-kPi * kPi * 0.5);
    double err = 0.0;
    for (std::size_t i = 0; i < last.size(); ++i)
        err = std::max(err, std::abs(last.values[i] - decay * std::sin(kPi * last.node(i))));
    return err;
}

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// 1. Second-order convergence on the heat model problem.
Check criterion_heat_order() {
    Check c;
    std::vector<double> log_h, log_e;
    for (const std::size_t m : {10u, 20u, 40u}) {
        const double err = heat_error_at_half(m, m / 2);  // dt = h
        log_h.push_back(std::log2(1.0 / static_cast<double>(m)));
        log_e.push_back(std::log2(err));
    }
    const double order = lsq_slope(log_h, log_e);
    c.detail << "fitted order " << order;
    c.require(order >= 1.9 && order <= 2.1, "order in [1.9, 2.1]");
    return c;
}

// 2. PDE vs closed form on the $10 call scenario, strike midway.
Check criterion_pde_vs_closed_form() {
    Check c;
    const double reference = bsfd::price(kCallScenario, {10.0, 0.0});
    const std::size_t m = bsfd::strike_midway_intervals(400, 10.0, 40.0);
    const bsfd::SpatialGrid grid(40.0, m);
    const bsfd::TimeGrid tgrid(400, kCallScenario.expiry);
    const auto surface = bsfd::cn_bs_solve(kCallScenario, grid, tgrid);
    const double rel =
        std::abs(bsfd::price_at(surface, 10.0, 0.0) - reference) / reference;
    c.detail << "rel err " << rel;
    c.require(rel <= 0.002, "|PDE - closed form| <= 0.2% at the strike");

    const auto report = bsfd::convergence_study(kCallScenario, 100, 100, 4, 40.0, true);
    const double order = report.fitted_order();
    c.detail << ", study order " << order;
    c.require(order >= 1.7 && order <= 2.2, "fitted order in [1.7, 2.2]");
    return c;
}

// 3. Put scenario parity, analytic and at the PDE level.
Check criterion_put_parity() {
    Check c;
    bsfd::OptionSpec call = kPutScenario;
    call.kind = bsfd::OptionKind::Call;

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> spots(1.0, 399.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const bsfd::MarketQuery q{spots(rng), 0.0};
        const double residual = bsfd::call_price(call, q) - bsfd::put_price(kPutScenario, q) -
                                (q.spot - 100.0 * std::exp(-0.25));
        worst = std::max(worst, std::abs(residual));
    }
    c.detail << "analytic residual " << worst;
    c.require(worst <= 1e-10 * 100.0, "analytic parity residual <= 1e-10 E");

    const auto report = bsfd::convergence_study(kPutScenario, 100, 100, 2, 400.0);
    const double grid_error = report.rows.back().error;
    const bsfd::SpatialGrid grid(400.0, 200);
    const bsfd::TimeGrid tgrid(200, 1.0);
    const auto call_surface = bsfd::cn_bs_solve(call, grid, tgrid);
    const auto put_surface = bsfd::cn_bs_solve(kPutScenario, grid, tgrid);
    const std::size_t last = tgrid.n_time;
    double worst_pde = 0.0;
    for (std::size_t i = 1; i + 1 < call_surface.n_nodes(); ++i) {
        const double forward = call_surface.s_axis[i] - 100.0 * std::exp(-0.25);
        worst_pde = std::max(worst_pde, std::abs(call_surface.at(i, last) -
                                                 put_surface.at(i, last) - forward));
    }
    c.detail << ", PDE residual " << worst_pde << " vs bound " << 5.0 * grid_error;
    c.require(worst_pde <= 5.0 * grid_error, "PDE parity residual <= 5x grid error");
    return c;
}

// 4. Unconditional stability of CN; conditional instability of the
// explicit scheme.
Check criterion_stability() {
    Check c;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> cs(1e-12, 100.0);
    std::uniform_real_distribution<double> thetas(1e-12, kPi);
    bool all_below_one = true;
    for (int i = 0; i < 10000; ++i)
        all_below_one &= std::abs(bsfd::amp_cn(cs(rng), thetas(rng))) < 1.0;
    c.require(all_below_one, "|amp_cn| < 1 on 10^4 samples");

    const auto unstable = bsfd::explicit_heat_solve(20, 200, 0.6);
    const double growth =
        max_abs(unstable.back().values) / max_abs(unstable.front().values);
    c.detail << "C=0.6 growth " << growth;
    c.require(growth > 1e3, "explicit C=0.6 grows by > 10^3");

    const auto stable = bsfd::explicit_heat_solve(20, 200, 0.4);
    double prev = max_abs(stable.front().values);
    bool monotone = true;
    for (std::size_t n = 1; n < stable.size(); ++n) {
        const double cur = max_abs(stable[n].values);
        monotone &= cur <= prev + 1e-15;
        prev = cur;
    }
    c.require(monotone, "explicit C=0.4 decays monotonically");
    return c;
}

// 5. Heat-kernel quadrature oracle vs the closed form on a 20-case panel
// spanning S/E in [0.5, 2], sigma in [0.1, 0.8], T-t in [0.1, 2].
Check criterion_heat_kernel_oracle() {
    Check c;
    struct PanelCase {
        bsfd::OptionKind kind;
        double moneyness, sigma, horizon, rate;
    };
    using enum bsfd::OptionKind;
    const PanelCase panel[] = {
        {Call, 1.00, 0.40, 0.5, 0.10}, {Put, 1.00, 0.40, 1.0, 0.25},
        {Call, 0.50, 0.80, 2.0, 0.05}, {Put, 0.50, 0.40, 1.0, 0.10},
        {Call, 2.00, 0.10, 0.5, 0.05}, {Put, 2.00, 0.80, 2.0, 0.10},
        {Call, 0.80, 0.25, 0.5, 0.10}, {Put, 0.80, 0.25, 1.0, 0.05},
        {Call, 1.25, 0.40, 0.1, 0.25}, {Put, 1.00, 0.10, 0.1, 0.05},
        {Call, 1.00, 0.80, 2.0, 0.25}, {Put, 1.25, 0.80, 0.5, 0.20},
        {Call, 0.50, 0.40, 2.0, 0.25}, {Put, 0.50, 0.80, 1.0, 0.25},
        {Call, 2.00, 0.40, 1.0, 0.10}, {Put, 2.00, 0.40, 2.0, 0.05},
        {Call, 1.00, 0.10, 1.0, 0.10}, {Put, 1.00, 0.25, 2.0, 0.05},
        {Call, 1.40, 0.25, 1.0, 0.25}, {Put, 0.90, 0.10, 0.5, 0.10},
    };
    double worst = 0.0;
    int cases = 0;
    for (const auto& entry : panel) {
        const bsfd::OptionSpec spec{entry.kind, 10.0, entry.rate, entry.sigma, entry.horizon};
        const bsfd::MarketQuery q{entry.moneyness * 10.0, 0.0};
        const double reference = bsfd::price(spec, q);
        const double got = bsfd::price_via_heat_kernel(spec, q, 1e-9);
        worst = std::max(worst, std::abs(got - reference) / reference);
        ++cases;
    }
    c.detail << cases << " cases, worst rel " << worst;
    c.require(cases >= 20, "at least 20 panel cases");
    c.require(worst <= 1e-6, "heat kernel within 1e-6 relative of closed form");
    return c;
}

// 6. Monte Carlo cross-check on both scenarios plus the martingale identity.
Check criterion_monte_carlo() {
    Check c;
    const std::uint64_t seed = 20240808;
    const std::size_t n = 1000000;

    for (const auto& spec : {kCallScenario, kPutScenario}) {
        const double s0 = spec.strike;  // both scenarios price at the money
        const double reference = bsfd::price(spec, {s0, 0.0});
        const auto est = bsfd::mc_price(spec, s0, n, seed);
        const double gap = std::abs(est.mean - reference);
        c.detail << (spec.kind == bsfd::OptionKind::Call ? "call gap/se " : ", put gap/se ")
                 << gap / est.std_error;
        c.require(gap <= 4.0 * est.std_error, "mc within 4 standard errors");
    }

    // martingale identity on the call scenario's dynamics
    const double horizon = kCallScenario.expiry;
    const double discount = std::exp(-kCallScenario.rate * horizon);
    const double drift_term =
        (kCallScenario.rate - 0.5 * kCallScenario.volatility * kCallScenario.volatility) *
        horizon;
    const double vol_term = kCallScenario.volatility * std::sqrt(horizon);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double terminal =
            10.0 * std::exp(drift_term + vol_term * bsfd::detail::normal_draw(seed, i));
        const double discounted = discount * terminal;
        sum += discounted;
        sum_sq += discounted * discounted;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = (sum_sq - static_cast<double>(n) * mean * mean) /
                       static_cast<double>(n - 1);
    const double se = std::sqrt(var / static_cast<double>(n));
    c.detail << ", martingale gap/se " << std::abs(mean - 10.0) / se;
    c.require(std::abs(mean - 10.0) <= 5.0 * se, "discounted mean within 5 se of spot");
    return c;
}

// 7. Surface integrity on emitted surfaces.
Check criterion_surface_integrity() {
    Check c;
    struct Scene {
        bsfd::OptionSpec spec;
        double s_max;
        double bound;
    };
    const Scene scenes[] = {{kCallScenario, 40.0, 40.0}, {kPutScenario, 400.0, 100.0}};

    for (const auto& scene : scenes) {
        const bsfd::SpatialGrid grid(scene.s_max, 120);
        const bsfd::TimeGrid tgrid(100, scene.spec.expiry);
        const auto surface = bsfd::cn_bs_solve(scene.spec, grid, tgrid);

        const auto payoff_col = bsfd::terminal_payoff(scene.spec, grid);
        bool terminal_exact = true;
        for (std::size_t i = 0; i < surface.n_nodes(); ++i)
            terminal_exact &= surface.at(i, 0) == payoff_col[i];
        c.require(terminal_exact, "tau = 0 slice equals the payoff exactly");

        bool boundaries_exact = true;
        for (std::size_t j = 0; j < surface.n_steps(); ++j) {
            const auto bc =
                bsfd::boundary_values(scene.spec, scene.s_max, surface.tau_axis[j]);
            boundaries_exact &= surface.at(0, j) == bc.low;
            boundaries_exact &= surface.at(surface.n_nodes() - 1, j) == bc.high;
        }
        c.require(boundaries_exact, "boundary rows equal boundary_values exactly");

        bool bounded = true;
        for (const double v : surface.values)
            bounded &= v >= -1e-9 * scene.bound && v <= scene.bound * (1.0 + 1e-9);
        c.require(bounded, "no value exceeds the no-arbitrage bound");
    }

    // the same invariants must survive serialization
    const auto surface = bsfd::cn_bs_solve(kCallScenario, bsfd::SpatialGrid(40.0, 12),
                                           bsfd::TimeGrid(10, 0.5));
    std::ostringstream out;
    bsfd::write_surface_csv(out, surface);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    c.require(line == "S,tau,value", "surface CSV header");
    std::size_t rows = 0, payoff_matches = 0;
    const auto payoff_col = bsfd::terminal_payoff(kCallScenario, bsfd::SpatialGrid(40.0, 12));
    while (std::getline(in, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double s = std::stod(line.substr(0, c1));
        const double tau = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double value = std::stod(line.substr(c2 + 1));
        if (tau == 0.0 &&
            value == payoff_col[static_cast<std::size_t>(std::round(s / (40.0 / 12.0)))])
            ++payoff_matches;
        ++rows;
    }
    c.require(rows == 13 * 11, "surface CSV row count");
    c.require(payoff_matches == 13, "tau = 0 rows equal the payoff in the file");
    return c;
}

struct Criterion {
    std::string name;
    double time_budget_s;
    std::function<Check()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"1 heat-model second order (h=1/10..1/40, dt=h)", 1.0, criterion_heat_order},
        {"2 call $10 PDE vs closed form + convergence order", 10.0,
         criterion_pde_vs_closed_form},
        {"3 put $100 parity, analytic and PDE level", 10.0, criterion_put_parity},
        {"4 CN unconditional / explicit conditional stability", 1.0, criterion_stability},
        {"5 heat-kernel oracle equivalence (20-case panel)", 5.0,
         criterion_heat_kernel_oracle},
        {"6 Monte Carlo cross-check, 10^6 paths", 30.0, criterion_monte_carlo},
        {"7 surface integrity and serialization", 5.0, criterion_surface_integrity},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check check = criterion.run();
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= criterion.time_budget_s)
            check.require(false, "runtime budget exceeded");
        std::printf("%s criterion %s (%.2fs): %s\n", check.ok ? "PASS" : "FAIL",
                    criterion.name.c_str(), elapsed, check.detail.str().c_str());
        if (!check.ok) ++failures;
    }
    return failures;
}
