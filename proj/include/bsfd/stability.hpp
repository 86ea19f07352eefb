#pragma once

#include "bsfd/fd_core.hpp"

namespace bsfd {

/// One evaluated Von Neumann growth factor.
struct AmplificationSample {
    double c_ratio;  // mesh ratio D*dt/h^2
    double theta;    // wavenumber angle, in (0, pi]
    double a_value;  // per-step growth factor A
};

/// Growth factor of the forward-Euler update: 1 - 4C sin^2(theta/2).
/// Magnitude stays within 1 for every mode iff C <= 1/2.
double amp_explicit(double c_ratio, double theta);

/// Growth factor of the Crank-Nicolson update:
/// (1 - 2C sin^2(theta/2)) / (1 + 2C sin^2(theta/2)).
/// |A| < 1 for every C > 0 and theta in (0, pi].
double amp_cn(double c_ratio, double theta);

AmplificationSample sample_explicit(double c_ratio, double theta);
AmplificationSample sample_cn(double c_ratio, double theta);

/// Forward-Euler march of the model heat problem from sin(pi x) with zero
/// boundaries, parametrized by the mesh ratio alone; the full history lets
/// callers measure growth or decay.
std::vector<GridFunction> explicit_heat_solve(std::size_t n_space, std::size_t n_time,
                                              double c_ratio);

}  // namespace bsfd
