#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bsfd/analytic.hpp"
#include "bsfd/fd_core.hpp"

namespace bsfd {

/// Uniform asset-price grid S_i = i * spacing, i = 0..n_space.
struct SpatialGrid {
    double s_max;
    std::size_t n_space;  // interval count; the grid has n_space+1 nodes
    double spacing;

    SpatialGrid(double s_max_, std::size_t n_space_);
    double node(std::size_t i) const { return spacing * static_cast<double>(i); }
};

/// Uniform grid in time-to-expiry with step = expiry / n_time.
struct TimeGrid {
    std::size_t n_time;
    double step;

    TimeGrid(std::size_t n_time_, double expiry);
};

/// Option values over (asset price, time to expiry). Column j holds the
/// values at tau_axis[j]; column 0 is the terminal payoff and the first and
/// last rows carry the boundary values at every step.
struct PriceSurface {
    std::vector<double> s_axis;    // node prices, n_space+1 entries
    std::vector<double> tau_axis;  // times from expiry, n_time+1 entries
    std::vector<double> values;    // node-major, (n_space+1) x (n_time+1)

    double at(std::size_t node, std::size_t step) const {
        return values[node * tau_axis.size() + step];
    }
    double& at(std::size_t node, std::size_t step) {
        return values[node * tau_axis.size() + step];
    }
    std::size_t n_nodes() const { return s_axis.size(); }
    std::size_t n_steps() const { return tau_axis.size(); }
};

/// Spatial operator of the pricing PDE on the interior nodes, discretized
/// with the central differences: (LV)_i = sigma^2 S_i^2 / 2 * V'' + r S_i V' - r V_i.
/// Bands cover interior-to-interior couplings; row 1's coupling to node 0
/// and row n-1's coupling to node n fall outside the matrix and are handled
/// by the solver's boundary corrections.
Tridiagonal build_bs_operator(const OptionSpec& spec, const SpatialGrid& grid);

/// Exercise values over all grid nodes.
std::vector<double> terminal_payoff(const OptionSpec& spec, const SpatialGrid& grid);

struct BoundaryValues {
    double low;   // value at S = 0
    double high;  // value at S = s_max
};

/// Dirichlet data at time-to-expiry tau: calls pin (0, s_max - E e^{-r tau}),
/// puts pin (E e^{-r tau}, 0).
BoundaryValues boundary_values(const OptionSpec& spec, double s_max, double tau);

/// Crank-Nicolson march of the pricing PDE from the payoff at tau = 0 to
/// tau = expiry; every step solves one tridiagonal system.
PriceSurface cn_bs_solve(const OptionSpec& spec, const SpatialGrid& grid,
                         const TimeGrid& tgrid);

/// Bilinear interpolation on the surface at calendar time `time`; exact at
/// grid nodes. Out-of-range queries are range errors.
double price_at(const PriceSurface& surface, double spot, double time);

struct ConvergenceRow {
    std::size_t m_space;
    std::size_t n_time;
    double h;
    double dt;
    double error;
    std::optional<double> order;  // absent on the first (coarsest) row
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;

    /// Least-squares slope of log2(error) against log2(h).
    double fitted_order() const;
};

/// log2 error ratio between two consecutive refinement levels.
double order_between(double err_coarse, double err_fine);

/// Interval count near n_space for which the strike falls midway between
/// two grid nodes.
std::size_t strike_midway_intervals(std::size_t n_space, double strike, double s_max);

/// Doubles the grid in space and time per level and records the error at
/// the probe S = strike, t = 0 against the closed-form value.
ConvergenceReport convergence_study(const OptionSpec& spec, std::size_t base_m,
                                    std::size_t base_n, std::size_t levels, double s_max,
                                    bool strike_midway = false);

}  // namespace bsfd
