#include "bsfd/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsfd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Half-width w such that the Gaussian tail times the exponential growth of
// the transformed payoff is below machine noise outside [x - w, x + w].
double truncation_half_width(double k_dim, double tau) {
    constexpr double kLogInvEps = 36.841361487904734;  // ln(1e16)
    return std::sqrt(4.0 * tau * kLogInvEps) + (k_dim + 1.0) * tau;
}

struct QuadDomain {
    double lo;
    double hi;
    bool empty() const { return lo >= hi; }
};

// The transformed payoff is one-sided in x, so the truncated window is
// clipped to where it is nonzero; that also keeps the payoff kink at the
// domain edge instead of inside a Simpson panel.
QuadDomain quadrature_domain(OptionKind kind, double k_dim, double x, double tau) {
    const double w = truncation_half_width(k_dim, tau);
    QuadDomain d{x - w, x + w};
    if (kind == OptionKind::Call)
        d.lo = std::max(d.lo, 0.0);
    else
        d.hi = std::min(d.hi, 0.0);
    return d;
}

double integrand(OptionKind kind, double k_dim, double x, double tau, double s) {
    const double d = x - s;
    return transformed_payoff(kind, k_dim, s) * std::exp(-d * d / (4.0 * tau));
}

double simpson(OptionKind kind, double k_dim, double x, double tau, const QuadDomain& d,
               int panels) {
    const double h = (d.hi - d.lo) / panels;
    double acc = integrand(kind, k_dim, x, tau, d.lo) + integrand(kind, k_dim, x, tau, d.hi);
    for (int i = 1; i < panels; ++i) {
        const double weight = (i % 2 == 1) ? 4.0 : 2.0;
        acc += weight * integrand(kind, k_dim, x, tau, d.lo + i * h);
    }
    return acc * h / 3.0;
}

}  // namespace

HeatCoords to_heat_coords(const OptionSpec& spec, const MarketQuery& q) {
    spec.validate();
    q.validate(spec);
    if (q.spot <= 0.0) throw std::domain_error("to_heat_coords: spot must be > 0");
    if (spec.volatility <= 0.0) throw std::domain_error("to_heat_coords: volatility must be > 0");
    const double half_var = 0.5 * spec.volatility * spec.volatility;
    const double k = spec.rate / half_var;
    HeatCoords hc;
    hc.x = std::log(q.spot / spec.strike);
    hc.tau = half_var * (spec.expiry - q.time);
    hc.k_dim = k;
    hc.alpha = -0.5 * (k - 1.0);
    hc.beta = -0.25 * (k + 1.0) * (k + 1.0);
    return hc;
}

double transformed_payoff(OptionKind kind, double k_dim, double x) {
    const double up = std::exp(0.5 * (k_dim + 1.0) * x);
    const double down = std::exp(0.5 * (k_dim - 1.0) * x);
    return std::max(kind == OptionKind::Call ? up - down : down - up, 0.0);
}

double heat_convolution(OptionKind kind, double k_dim, double x, double tau, double tol) {
    if (tau < 0.0) throw std::domain_error("heat_convolution: tau must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("heat_convolution: tol must be > 0");
    if (tau == 0.0) return transformed_payoff(kind, k_dim, x);

    const QuadDomain d = quadrature_domain(kind, k_dim, x, tau);
    if (d.empty()) return 0.0;

    int panels = 64;
    double prev = simpson(kind, k_dim, x, tau, d, panels);
    double cur = prev;
    for (int round = 0; round < 18; ++round) {
        panels *= 2;
        cur = simpson(kind, k_dim, x, tau, d, panels);
        if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-300)) break;
        prev = cur;
    }
    return cur / (2.0 * std::sqrt(kPi * tau));
}

double price_via_heat_kernel(const OptionSpec& spec, const MarketQuery& q, double tol) {
    const HeatCoords hc = to_heat_coords(spec, q);
    const double u = heat_convolution(spec.kind, hc.k_dim, hc.x, hc.tau, tol);
    return spec.strike * std::exp(hc.alpha * hc.x + hc.beta * hc.tau) * u;
}

namespace detail {

double heat_convolution_panels(OptionKind kind, double k_dim, double x, double tau,
                               int panels) {
    if (!(tau > 0.0)) throw std::domain_error("heat_convolution_panels: tau must be > 0");
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("heat_convolution_panels: panel count must be even");
    const QuadDomain d = quadrature_domain(kind, k_dim, x, tau);
    if (d.empty()) return 0.0;
    return simpson(kind, k_dim, x, tau, d, panels) / (2.0 * std::sqrt(kPi * tau));
}

}  // namespace detail

}  // namespace bsfd
