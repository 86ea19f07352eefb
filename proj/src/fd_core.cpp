#include "bsfd/fd_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bsfd {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

MeshParams::MeshParams(double h_, double dt_, double diffusivity_)
    : h(h_), dt(dt_), diffusivity(diffusivity_) {
    if (!(h > 0.0) || !(dt > 0.0) || !(diffusivity > 0.0))
        throw std::invalid_argument("MeshParams: h, dt and diffusivity must be > 0");
    s_ratio = h * h / dt;
    diag_r = 2.0 * (1.0 + s_ratio);
    c_ratio = diffusivity * dt / (h * h);
}

SingularSystemError::SingularSystemError(std::size_t pivot_index)
    : std::runtime_error("thomas_solve: zero pivot at row " + std::to_string(pivot_index)),
      pivot_index_(pivot_index) {}

double central_first_diff(const GridFunction& f, std::size_t i) {
    if (f.size() < 3)
        throw std::invalid_argument("central_first_diff: need at least 3 nodes");
    if (i < 1 || i + 1 >= f.size())
        throw std::out_of_range("central_first_diff: index on or outside the boundary");
    return (f.values[i + 1] - f.values[i - 1]) / (2.0 * f.h);
}

double central_second_diff(const GridFunction& f, std::size_t i) {
    if (f.size() < 3)
        throw std::invalid_argument("central_second_diff: need at least 3 nodes");
    if (i < 1 || i + 1 >= f.size())
        throw std::out_of_range("central_second_diff: index on or outside the boundary");
    return (f.values[i + 1] + f.values[i - 1] - 2.0 * f.values[i]) / (f.h * f.h);
}

std::vector<double> thomas_solve(const Tridiagonal& m, std::span<const double> rhs) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("thomas_solve: empty system");
    if (m.lower.size() != n - 1 || m.upper.size() != n - 1)
        throw std::invalid_argument("thomas_solve: inconsistent band lengths");
    if (rhs.size() != n) throw std::invalid_argument("thomas_solve: rhs length mismatch");

    std::vector<double> upper_scaled(n > 1 ? n - 1 : 0);
    std::vector<double> x(n);

    double pivot = m.diag[0];
    if (pivot == 0.0) throw SingularSystemError(0);
    if (n > 1) upper_scaled[0] = m.upper[0] / pivot;
    x[0] = rhs[0] / pivot;

    for (std::size_t i = 1; i < n; ++i) {
        pivot = m.diag[i] - m.lower[i - 1] * upper_scaled[i - 1];
        if (pivot == 0.0) throw SingularSystemError(i);
        if (i + 1 < n) upper_scaled[i] = m.upper[i] / pivot;
        x[i] = (rhs[i] - m.lower[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper_scaled[i] * x[i + 1];
    return x;
}

std::vector<GridFunction> cn_heat_solve(std::size_t n_space, std::size_t n_time,
                                        double t_end, std::span<const double> initial) {
    if (n_space < 3) throw std::invalid_argument("cn_heat_solve: n_space must be >= 3");
    if (n_time < 1) throw std::invalid_argument("cn_heat_solve: n_time must be >= 1");
    if (!(t_end > 0.0)) throw std::invalid_argument("cn_heat_solve: t_end must be > 0");
    if (initial.size() != n_space + 1)
        throw std::invalid_argument("cn_heat_solve: initial data must have n_space+1 nodes");

    const double h = 1.0 / static_cast<double>(n_space);
    const double dt = t_end / static_cast<double>(n_time);
    const MeshParams mesh(h, dt);
    const std::size_t interior = n_space - 1;

    Tridiagonal lhs;
    lhs.lower.assign(interior - 1, -1.0);
    lhs.diag.assign(interior, mesh.diag_r);
    lhs.upper.assign(interior - 1, -1.0);

    std::vector<GridFunction> history;
    history.reserve(n_time + 1);
    GridFunction first{std::vector<double>(initial.begin(), initial.end()), h, 0.0};
    first.values.front() = 0.0;
    first.values.back() = 0.0;
    history.push_back(std::move(first));

    const double explicit_diag = 2.0 * (mesh.s_ratio - 1.0);
    std::vector<double> rhs(interior);
    for (std::size_t step = 0; step < n_time; ++step) {
        const auto& u = history.back().values;
        for (std::size_t i = 1; i <= interior; ++i)
            rhs[i - 1] = u[i - 1] + explicit_diag * u[i] + u[i + 1];
        std::vector<double> next = thomas_solve(lhs, rhs);
        GridFunction slice{std::vector<double>(n_space + 1, 0.0), h, 0.0};
        std::copy(next.begin(), next.end(), slice.values.begin() + 1);
        history.push_back(std::move(slice));
    }
    return history;
}

std::vector<GridFunction> cn_heat_solve(std::size_t n_space, std::size_t n_time,
                                        double t_end) {
    if (n_space < 3) throw std::invalid_argument("cn_heat_solve: n_space must be >= 3");
    std::vector<double> initial(n_space + 1);
    const double h = 1.0 / static_cast<double>(n_space);
    for (std::size_t i = 0; i <= n_space; ++i)
        initial[i] = std::sin(kPi * static_cast<double>(i) * h);
    return cn_heat_solve(n_space, n_time, t_end, initial);
}

}  // namespace bsfd
