#pragma once

#include "bsfd/analytic.hpp"

namespace bsfd {

/// Dimensionless coordinates after the change of variables that turns the
/// pricing PDE into the pure heat equation u_tau = u_xx.
struct HeatCoords {
    double x;      // log-moneyness, ln(S/E)
    double tau;    // scaled time to expiry, sigma^2 (T - t) / 2
    double k_dim;  // rate ratio, r / (sigma^2 / 2)
    double alpha;  // -(k_dim - 1)/2
    double beta;   // -(k_dim + 1)^2/4
};

HeatCoords to_heat_coords(const OptionSpec& spec, const MarketQuery& q);

/// Exercise value expressed in heat variables.
double transformed_payoff(OptionKind kind, double k_dim, double x);

/// Convolution of the transformed payoff with the Gaussian heat kernel,
/// evaluated by composite Simpson quadrature on a truncated domain that is
/// refined until the estimated relative change drops below tol.
/// tau = 0 returns the payoff itself; tau < 0 is a domain error.
double heat_convolution(OptionKind kind, double k_dim, double x, double tau, double tol);

/// Prices by undoing the change of variables around heat_convolution.
/// Independent of the closed-form pricer.
double price_via_heat_kernel(const OptionSpec& spec, const MarketQuery& q, double tol);

namespace detail {

/// Simpson evaluation of the truncated convolution at a fixed panel count,
/// exposed so tests can measure the quadrature convergence rate.
double heat_convolution_panels(OptionKind kind, double k_dim, double x, double tau,
                               int panels);

}  // namespace detail

}  // namespace bsfd
