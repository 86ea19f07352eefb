#include "bsfd/csv_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "bsfd/stability.hpp"

namespace bsfd {

namespace {

struct PrecisionGuard {
    explicit PrecisionGuard(std::ostream& out)
        : out_(out), old_(out.precision(std::numeric_limits<double>::max_digits10)) {}
    ~PrecisionGuard() { out_.precision(old_); }
    std::ostream& out_;
    std::streamsize old_;
};

}  // namespace

void write_surface_csv(std::ostream& out, const PriceSurface& surface) {
    PrecisionGuard guard(out);
    out << "S,tau,value\n";
    for (std::size_t i = 0; i < surface.n_nodes(); ++i)
        for (std::size_t j = 0; j < surface.n_steps(); ++j)
            out << surface.s_axis[i] << ',' << surface.tau_axis[j] << ','
                << surface.at(i, j) << '\n';
}

void write_surface_csv(const PriceSurface& surface, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_surface_csv(out, surface);
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
    PrecisionGuard guard(out);
    out << "M,N,h,dt,error,order\n";
    for (const auto& row : report.rows) {
        out << row.m_space << ',' << row.n_time << ',' << row.h << ',' << row.dt << ','
            << row.error << ',';
        if (row.order) out << *row.order;
        out << '\n';
    }
}

void write_stability_csv(std::ostream& out, std::span<const double> c_values,
                         std::span<const double> theta_values) {
    PrecisionGuard guard(out);
    out << "C,theta,A_explicit,A_cn\n";
    for (const double c : c_values)
        for (const double theta : theta_values)
            out << c << ',' << theta << ',' << amp_explicit(c, theta) << ','
                << amp_cn(c, theta) << '\n';
}

void write_path_csv(std::ostream& out, std::span<const double> path, double dt) {
    PrecisionGuard guard(out);
    out << "step,time,price\n";
    for (std::size_t j = 0; j < path.size(); ++j)
        out << j << ',' << dt * static_cast<double>(j) << ',' << path[j] << '\n';
}

void write_volsweep_csv(std::ostream& out, std::span<const VolSweepRow> rows) {
    PrecisionGuard guard(out);
    out << "sigma,price_analytic,price_pde,abs_diff\n";
    for (const auto& row : rows)
        out << row.sigma << ',' << row.price_analytic << ',' << row.price_pde << ','
            << std::abs(row.price_analytic - row.price_pde) << '\n';
}

}  // namespace bsfd
