#pragma once

namespace bsfd {

enum class OptionKind { Call, Put };

/// Contract terms of a European vanilla option.
struct OptionSpec {
    OptionKind kind = OptionKind::Call;
    double strike = 0.0;      // exercise price, > 0
    double rate = 0.0;        // continuously compounded, per annum, >= 0
    double volatility = 0.0;  // per sqrt(annum), >= 0
    double expiry = 0.0;      // years, > 0

    void validate() const;
};

/// Point in the (spot, calendar time) domain a value is asked at.
struct MarketQuery {
    double spot = 0.0;  // asset price, >= 0
    double time = 0.0;  // years, in [0, expiry]

    void validate(const OptionSpec& spec) const;
};

struct D1D2 {
    double d1;
    double d2;
};

/// Standard normal CDF, absolute error well below 1e-10 on |x| <= 8;
/// saturates to exactly 0/1 outside that range. Non-finite input is a
/// domain error.
double norm_cdf(double x);

/// The two Gaussian arguments of the closed-form price. Rejects the
/// degenerate inputs (spot = 0, zero volatility, t = expiry); the price
/// functions below resolve those limits themselves.
D1D2 d1_d2(const OptionSpec& spec, const MarketQuery& q);

double call_price(const OptionSpec& spec, const MarketQuery& q);
double put_price(const OptionSpec& spec, const MarketQuery& q);

/// Dispatches to call_price or put_price on spec.kind.
double price(const OptionSpec& spec, const MarketQuery& q);

/// Exercise value: max(S-E, 0) for a call, max(E-S, 0) for a put.
double payoff(OptionKind kind, double spot, double strike);

}  // namespace bsfd
