#include "bsfd/stability.hpp"

#include <cmath>

namespace bsfd {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double amp_explicit(double c_ratio, double theta) {
    const double s = std::sin(0.5 * theta);
    return 1.0 - 4.0 * c_ratio * s * s;
}

double amp_cn(double c_ratio, double theta) {
    const double s = std::sin(0.5 * theta);
    const double half_term = 2.0 * c_ratio * s * s;
    return (1.0 - half_term) / (1.0 + half_term);
}

AmplificationSample sample_explicit(double c_ratio, double theta) {
    return {c_ratio, theta, amp_explicit(c_ratio, theta)};
}

AmplificationSample sample_cn(double c_ratio, double theta) {
    return {c_ratio, theta, amp_cn(c_ratio, theta)};
}

std::vector<GridFunction> explicit_heat_solve(std::size_t n_space, std::size_t n_time,
                                              double c_ratio) {
    if (n_space < 3)
        throw std::invalid_argument("explicit_heat_solve: n_space must be >= 3");
    const double h = 1.0 / static_cast<double>(n_space);

    std::vector<GridFunction> history;
    history.reserve(n_time + 1);
    GridFunction first{std::vector<double>(n_space + 1), h, 0.0};
    for (std::size_t i = 0; i <= n_space; ++i)
        first.values[i] = std::sin(kPi * static_cast<double>(i) * h);
    first.values.front() = 0.0;
    first.values.back() = 0.0;
    history.push_back(std::move(first));

    for (std::size_t step = 0; step < n_time; ++step) {
        const auto& u = history.back().values;
        GridFunction next{std::vector<double>(n_space + 1, 0.0), h, 0.0};
        for (std::size_t i = 1; i < n_space; ++i)
            next.values[i] = u[i] + c_ratio * (u[i - 1] - 2.0 * u[i] + u[i + 1]);
        history.push_back(std::move(next));
    }
    return history;
}

}  // namespace bsfd
