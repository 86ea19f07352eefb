#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bsfd/bs_pricer.hpp"

namespace bsfd {

struct VolSweepRow {
    double sigma;
    double price_analytic;
    double price_pde;
};

/// `S,tau,value`; node-major, then time; values carry enough digits to
/// round-trip through a parser bit-exactly.
void write_surface_csv(std::ostream& out, const PriceSurface& surface);
void write_surface_csv(const PriceSurface& surface, const std::string& path);

/// `M,N,h,dt,error,order`; the order field is empty on the first row.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

/// `C,theta,A_explicit,A_cn` over the cross product of the two axes.
void write_stability_csv(std::ostream& out, std::span<const double> c_values,
                         std::span<const double> theta_values);

/// `step,time,price` for one simulated path.
void write_path_csv(std::ostream& out, std::span<const double> path, double dt);

/// `sigma,price_analytic,price_pde,abs_diff`.
void write_volsweep_csv(std::ostream& out, std::span<const VolSweepRow> rows);

}  // namespace bsfd
