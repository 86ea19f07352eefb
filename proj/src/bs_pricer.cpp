#include "bsfd/bs_pricer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bsfd {

namespace {

struct RowCoeffs {
    double lower;  // coupling to node i-1
    double diag;
    double upper;  // coupling to node i+1
};

RowCoeffs bs_row_coeffs(const OptionSpec& spec, const SpatialGrid& grid, std::size_t i) {
    const double s = grid.node(i);
    const double ds = grid.spacing;
    const double diffusion = 0.5 * spec.volatility * spec.volatility * s * s / (ds * ds);
    const double convection = spec.rate * s / (2.0 * ds);
    return {diffusion - convection, -2.0 * diffusion - spec.rate, diffusion + convection};
}

}  // namespace

SpatialGrid::SpatialGrid(double s_max_, std::size_t n_space_)
    : s_max(s_max_), n_space(n_space_) {
    if (!(s_max > 0.0)) throw std::invalid_argument("SpatialGrid: s_max must be > 0");
    if (n_space < 3) throw std::invalid_argument("SpatialGrid: n_space must be >= 3");
    spacing = s_max / static_cast<double>(n_space);
}

TimeGrid::TimeGrid(std::size_t n_time_, double expiry) : n_time(n_time_) {
    if (n_time < 1) throw std::invalid_argument("TimeGrid: n_time must be >= 1");
    if (!(expiry > 0.0)) throw std::invalid_argument("TimeGrid: expiry must be > 0");
    step = expiry / static_cast<double>(n_time);
}

Tridiagonal build_bs_operator(const OptionSpec& spec, const SpatialGrid& grid) {
    const std::size_t interior = grid.n_space - 1;
    Tridiagonal op;
    op.lower.assign(interior - 1, 0.0);
    op.diag.assign(interior, 0.0);
    op.upper.assign(interior - 1, 0.0);
    for (std::size_t i = 1; i <= interior; ++i) {
        const RowCoeffs rc = bs_row_coeffs(spec, grid, i);
        op.diag[i - 1] = rc.diag;
        if (i > 1) op.lower[i - 2] = rc.lower;
        if (i < interior) op.upper[i - 1] = rc.upper;
    }
    return op;
}

std::vector<double> terminal_payoff(const OptionSpec& spec, const SpatialGrid& grid) {
    std::vector<double> values(grid.n_space + 1);
    for (std::size_t i = 0; i <= grid.n_space; ++i)
        values[i] = payoff(spec.kind, grid.node(i), spec.strike);
    return values;
}

BoundaryValues boundary_values(const OptionSpec& spec, double s_max, double tau) {
    const double discounted_strike = spec.strike * std::exp(-spec.rate * tau);
    if (spec.kind == OptionKind::Call) return {0.0, s_max - discounted_strike};
    return {discounted_strike, 0.0};
}

PriceSurface cn_bs_solve(const OptionSpec& spec, const SpatialGrid& grid,
                         const TimeGrid& tgrid) {
    spec.validate();
    const std::size_t m = grid.n_space;
    const std::size_t n = tgrid.n_time;
    const std::size_t interior = m - 1;
    const double dt = tgrid.step;

    PriceSurface surface;
    surface.s_axis.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) surface.s_axis[i] = grid.node(i);
    surface.tau_axis.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) surface.tau_axis[j] = dt * static_cast<double>(j);
    surface.values.resize((m + 1) * (n + 1));

    // full interior row coefficients, including the couplings to the
    // boundary nodes that build_bs_operator leaves outside the bands
    std::vector<double> lo(interior), di(interior), up(interior);
    for (std::size_t i = 1; i <= interior; ++i) {
        const RowCoeffs rc = bs_row_coeffs(spec, grid, i);
        lo[i - 1] = rc.lower;
        di[i - 1] = rc.diag;
        up[i - 1] = rc.upper;
    }

    // implicit side, I - dt/2 L
    Tridiagonal lhs;
    lhs.lower.resize(interior - 1);
    lhs.diag.resize(interior);
    lhs.upper.resize(interior - 1);
    for (std::size_t i = 0; i < interior; ++i) lhs.diag[i] = 1.0 - 0.5 * dt * di[i];
    for (std::size_t i = 0; i + 1 < interior; ++i) {
        lhs.lower[i] = -0.5 * dt * lo[i + 1];
        lhs.upper[i] = -0.5 * dt * up[i];
    }

    std::vector<double> cur = terminal_payoff(spec, grid);
    for (std::size_t i = 0; i <= m; ++i) surface.at(i, 0) = cur[i];

    std::vector<double> rhs(interior);
    for (std::size_t j = 0; j < n; ++j) {
        const BoundaryValues bc = boundary_values(spec, grid.s_max, surface.tau_axis[j + 1]);
        for (std::size_t i = 1; i <= interior; ++i)
            rhs[i - 1] = cur[i] + 0.5 * dt *
                                      (lo[i - 1] * cur[i - 1] + di[i - 1] * cur[i] +
                                       up[i - 1] * cur[i + 1]);
        rhs.front() += 0.5 * dt * lo.front() * bc.low;
        rhs.back() += 0.5 * dt * up.back() * bc.high;

        std::vector<double> next;
        try {
            next = thomas_solve(lhs, rhs);
        } catch (const SingularSystemError& e) {
            throw std::runtime_error("cn_bs_solve: singular system at time step " +
                                     std::to_string(j + 1) + " (pivot row " +
                                     std::to_string(e.pivot_index()) + ")");
        }
        cur[0] = bc.low;
        cur[m] = bc.high;
        std::copy(next.begin(), next.end(), cur.begin() + 1);
        for (std::size_t i = 0; i <= m; ++i) surface.at(i, j + 1) = cur[i];
    }
    return surface;
}

double price_at(const PriceSurface& surface, double spot, double time) {
    const double expiry = surface.tau_axis.back();
    if (!(spot >= surface.s_axis.front() && spot <= surface.s_axis.back()))
        throw std::out_of_range("price_at: spot outside the grid");
    if (!(time >= 0.0 && time <= expiry))
        throw std::out_of_range("price_at: time outside [0, expiry]");

    const double tau = expiry - time;
    const double ds = surface.s_axis[1] - surface.s_axis[0];
    const double dt = surface.tau_axis[1] - surface.tau_axis[0];

    std::size_t i = static_cast<std::size_t>(spot / ds);
    i = std::min(i, surface.n_nodes() - 2);
    std::size_t j = static_cast<std::size_t>(tau / dt);
    j = std::min(j, surface.n_steps() - 2);
    const double ws = (spot - surface.s_axis[i]) / ds;
    const double wt = (tau - surface.tau_axis[j]) / dt;

    return (1.0 - ws) * (1.0 - wt) * surface.at(i, j) + ws * (1.0 - wt) * surface.at(i + 1, j) +
           (1.0 - ws) * wt * surface.at(i, j + 1) + ws * wt * surface.at(i + 1, j + 1);
}

double ConvergenceReport::fitted_order() const {
    if (rows.size() < 2) return 0.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
        const double x = std::log2(row.h);
        const double y = std::log2(row.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double order_between(double err_coarse, double err_fine) {
    return std::log2(err_coarse / err_fine);
}

std::size_t strike_midway_intervals(std::size_t n_space, double strike, double s_max) {
    const double p = strike / s_max;  // fractional strike position
    const double slot = std::round(static_cast<double>(n_space) * p - 0.5);
    const double adjusted = std::round((slot + 0.5) / p);
    return adjusted < 3.0 ? 3 : static_cast<std::size_t>(adjusted);
}

ConvergenceReport convergence_study(const OptionSpec& spec, std::size_t base_m,
                                    std::size_t base_n, std::size_t levels, double s_max,
                                    bool strike_midway) {
    if (levels < 2) throw std::invalid_argument("convergence_study: levels must be >= 2");
    spec.validate();

    const MarketQuery probe{spec.strike, 0.0};
    const double reference = price(spec, probe);

    ConvergenceReport report;
    report.rows.reserve(levels);
    for (std::size_t level = 0; level < levels; ++level) {
        std::size_t m = base_m << level;
        const std::size_t n = base_n << level;
        if (strike_midway) m = strike_midway_intervals(m, spec.strike, s_max);
        const SpatialGrid grid(s_max, m);
        const TimeGrid tgrid(n, spec.expiry);
        const PriceSurface surface = cn_bs_solve(spec, grid, tgrid);
        const double error = std::abs(price_at(surface, spec.strike, 0.0) - reference);

        ConvergenceRow row{m, n, grid.spacing, tgrid.step, error, std::nullopt};
        if (!report.rows.empty()) row.order = order_between(report.rows.back().error, error);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace bsfd
