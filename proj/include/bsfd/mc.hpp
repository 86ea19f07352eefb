#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bsfd/analytic.hpp"

namespace bsfd {

/// Lognormal asset dynamics. drift is the real-world growth rate and only
/// feeds path realizations; pricing always substitutes the risk-free rate.
struct GbmParams {
    double drift;
    double volatility;
    double s0;
};

struct McEstimate {
    double mean;
    double std_error;
    std::uint64_t n_paths;
    std::uint64_t seed;
};

/// One path realization with the exact per-step lognormal increment (no
/// Euler discretization error). Equal seeds reproduce the path bitwise.
std::vector<double> simulate_path(const GbmParams& params, double horizon,
                                  std::size_t n_steps, std::uint64_t seed);

/// Risk-neutral Monte Carlo estimate from terminal draws; mean and standard
/// error are both discounted.
McEstimate mc_price(const OptionSpec& spec, double s0, std::size_t n_paths,
                    std::uint64_t seed);

/// Same estimator with an explicit accumulation batch size. Draws are
/// counter-based per path index, so the batch layout only reorders the
/// floating-point reduction.
McEstimate mc_price_batched(const OptionSpec& spec, double s0, std::size_t n_paths,
                            std::uint64_t seed, std::size_t batch_size);

namespace detail {

/// SplitMix64 output word for the given (seed, counter) pair.
std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter);

/// Standard normal draw via Box-Muller on two SplitMix64 words; depends only
/// on (seed, counter), never on generator state.
double normal_draw(std::uint64_t seed, std::uint64_t counter);

}  // namespace detail

}  // namespace bsfd
