#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bsfd {

/// Samples of a function on a uniform 1-D grid; node i sits at origin + i*h.
struct GridFunction {
    std::vector<double> values;
    double h = 1.0;
    double origin = 0.0;

    std::size_t size() const { return values.size(); }
    double node(std::size_t i) const { return origin + static_cast<double>(i) * h; }
};

/// Mesh constants of the Crank-Nicolson model problem. Both dimensionless
/// groups show up in the scheme: s_ratio = h^2/dt drives the tridiagonal
/// assembly, c_ratio = D*dt/h^2 drives the stability analysis, and they are
/// reciprocal up to the diffusivity (c_ratio = D / s_ratio).
struct MeshParams {
    double h;
    double dt;
    double diffusivity;
    double s_ratio;  // h^2 / dt
    double diag_r;   // 2 * (1 + s_ratio), the implicit-side diagonal entry
    double c_ratio;  // diffusivity * dt / h^2

    MeshParams(double h_, double dt_, double diffusivity_ = 1.0);
};

/// Three-band matrix: lower/upper have length n-1, diag length n.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t size() const { return diag.size(); }
};

/// Zero pivot met during the Thomas recursion.
class SingularSystemError : public std::runtime_error {
public:
    explicit SingularSystemError(std::size_t pivot_index);
    std::size_t pivot_index() const { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

/// (f_{i+1} - f_{i-1}) / 2h, O(h^2); interior indices only.
double central_first_diff(const GridFunction& f, std::size_t i);

/// (f_{i+1} + f_{i-1} - 2 f_i) / h^2, O(h^2); interior indices only.
double central_second_diff(const GridFunction& f, std::size_t i);

/// O(n) Thomas recursion without pivoting. All systems assembled by this
/// library are diagonally dominant; a vanishing pivot raises
/// SingularSystemError naming the row.
std::vector<double> thomas_solve(const Tridiagonal& m, std::span<const double> rhs);

/// Crank-Nicolson march for u_t = u_xx on [0,1] with u(0,t) = u(1,t) = 0
/// from the given initial data (n_space+1 nodes); returns every time slice
/// including t = 0.
std::vector<GridFunction> cn_heat_solve(std::size_t n_space, std::size_t n_time,
                                        double t_end, std::span<const double> initial);

/// Same march from the model problem's initial data u(x,0) = sin(pi x).
std::vector<GridFunction> cn_heat_solve(std::size_t n_space, std::size_t n_time,
                                        double t_end);

}  // namespace bsfd
