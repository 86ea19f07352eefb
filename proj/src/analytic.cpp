#include "bsfd/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsfd {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;  // 1/sqrt(2)
}

void OptionSpec::validate() const {
    if (!std::isfinite(strike) || strike <= 0.0)
        throw std::invalid_argument("OptionSpec: strike must be > 0");
    if (!std::isfinite(expiry) || expiry <= 0.0)
        throw std::invalid_argument("OptionSpec: expiry must be > 0");
    if (!std::isfinite(volatility) || volatility < 0.0)
        throw std::invalid_argument("OptionSpec: volatility must be >= 0");
    if (!std::isfinite(rate) || rate < 0.0)
        throw std::invalid_argument("OptionSpec: rate must be >= 0");
}

void MarketQuery::validate(const OptionSpec& spec) const {
    if (!std::isfinite(spot) || spot < 0.0)
        throw std::invalid_argument("MarketQuery: spot must be >= 0");
    if (!std::isfinite(time) || time < 0.0 || time > spec.expiry)
        throw std::invalid_argument("MarketQuery: time must lie in [0, expiry]");
}

double norm_cdf(double x) {
    if (!std::isfinite(x)) throw std::domain_error("norm_cdf: non-finite input");
    if (x > 8.0) return 1.0;
    if (x < -8.0) return 0.0;
    // erfc keeps full relative accuracy in the left tail
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

D1D2 d1_d2(const OptionSpec& spec, const MarketQuery& q) {
    spec.validate();
    q.validate(spec);
    const double tau = spec.expiry - q.time;
    if (q.spot <= 0.0 || spec.volatility <= 0.0 || tau <= 0.0)
        throw std::domain_error("d1_d2: degenerate input (spot = 0, sigma = 0, or t = T)");
    const double sig_sqrt_tau = spec.volatility * std::sqrt(tau);
    const double log_moneyness = std::log(q.spot / spec.strike);
    const double half_var = 0.5 * spec.volatility * spec.volatility;
    return {(log_moneyness + (spec.rate + half_var) * tau) / sig_sqrt_tau,
            (log_moneyness + (spec.rate - half_var) * tau) / sig_sqrt_tau};
}

double call_price(const OptionSpec& spec, const MarketQuery& q) {
    spec.validate();
    q.validate(spec);
    const double tau = spec.expiry - q.time;
    if (tau <= 0.0) return payoff(OptionKind::Call, q.spot, spec.strike);
    const double discounted_strike = spec.strike * std::exp(-spec.rate * tau);
    if (q.spot <= 0.0 || spec.volatility <= 0.0)
        return std::max(q.spot - discounted_strike, 0.0);
    const auto [d1, d2] = d1_d2(spec, q);
    return q.spot * norm_cdf(d1) - discounted_strike * norm_cdf(d2);
}

double put_price(const OptionSpec& spec, const MarketQuery& q) {
    spec.validate();
    q.validate(spec);
    const double tau = spec.expiry - q.time;
    if (tau <= 0.0) return payoff(OptionKind::Put, q.spot, spec.strike);
    const double discounted_strike = spec.strike * std::exp(-spec.rate * tau);
    if (q.spot <= 0.0 || spec.volatility <= 0.0)
        return std::max(discounted_strike - q.spot, 0.0);
    const auto [d1, d2] = d1_d2(spec, q);
    return discounted_strike * norm_cdf(-d2) - q.spot * norm_cdf(-d1);
}

double price(const OptionSpec& spec, const MarketQuery& q) {
    return spec.kind == OptionKind::Call ? call_price(spec, q) : put_price(spec, q);
}

double payoff(OptionKind kind, double spot, double strike) {
    return kind == OptionKind::Call ? std::max(spot - strike, 0.0)
                                    : std::max(strike - spot, 0.0);
}

}  // namespace bsfd
