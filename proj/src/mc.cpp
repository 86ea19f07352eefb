#include "bsfd/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsfd {

namespace detail {

std::uint64_t mix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double normal_draw(std::uint64_t seed, std::uint64_t counter) {
    // top 53 bits mapped into the open interval (0,1)
    const double u1 = (static_cast<double>(mix64(seed, 2 * counter) >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(mix64(seed, 2 * counter + 1) >> 11) + 0.5) * 0x1.0p-53;
    constexpr double kTwoPi = 6.28318530717958647693;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace detail

namespace {

/// Welford accumulator with Chan's merge, so batch partial results combine
/// exactly and constant samples give a literal zero variance.
struct RunningMoments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const RunningMoments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double delta = other.mean - mean;
        const double total = static_cast<double>(count + other.count);
        const double weight = static_cast<double>(other.count) / total;
        mean += delta * weight;
        m2 += other.m2 + delta * delta * static_cast<double>(count) * weight;
        count += other.count;
    }
};

}  // namespace

std::vector<double> simulate_path(const GbmParams& params, double horizon,
                                  std::size_t n_steps, std::uint64_t seed) {
    if (n_steps < 1) throw std::invalid_argument("simulate_path: n_steps must be >= 1");
    if (!(params.s0 > 0.0)) throw std::invalid_argument("simulate_path: s0 must be > 0");
    if (!(params.volatility >= 0.0))
        throw std::invalid_argument("simulate_path: volatility must be >= 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("simulate_path: horizon must be > 0");

    const double dt = horizon / static_cast<double>(n_steps);
    const double drift_term = (params.drift - 0.5 * params.volatility * params.volatility) * dt;
    const double vol_term = params.volatility * std::sqrt(dt);

    std::vector<double> path(n_steps + 1);
    path[0] = params.s0;
    for (std::size_t j = 0; j < n_steps; ++j)
        path[j + 1] = path[j] * std::exp(drift_term + vol_term * detail::normal_draw(seed, j));
    return path;
}

McEstimate mc_price_batched(const OptionSpec& spec, double s0, std::size_t n_paths,
                            std::uint64_t seed, std::size_t batch_size) {
    if (n_paths < 2) throw std::invalid_argument("mc_price: n_paths must be >= 2");
    if (batch_size < 1) throw std::invalid_argument("mc_price: batch_size must be >= 1");
    if (!(s0 > 0.0)) throw std::invalid_argument("mc_price: s0 must be > 0");

    const double horizon = spec.expiry;
    const double discount = std::exp(-spec.rate * horizon);
    const double drift_term = (spec.rate - 0.5 * spec.volatility * spec.volatility) * horizon;
    const double vol_term = spec.volatility * std::sqrt(horizon);

    RunningMoments total;
    for (std::size_t start = 0; start < n_paths; start += batch_size) {
        const std::size_t stop = std::min(n_paths, start + batch_size);
        RunningMoments batch;
        for (std::size_t i = start; i < stop; ++i) {
            const double z = detail::normal_draw(seed, i);
            const double terminal = s0 * std::exp(drift_term + vol_term * z);
            batch.add(discount * payoff(spec.kind, terminal, spec.strike));
        }
        total.merge(batch);
    }

    const double variance = total.m2 / static_cast<double>(n_paths - 1);
    return {total.mean, std::sqrt(variance / static_cast<double>(n_paths)),
            static_cast<std::uint64_t>(n_paths), seed};
}

McEstimate mc_price(const OptionSpec& spec, double s0, std::size_t n_paths,
                    std::uint64_t seed) {
    return mc_price_batched(spec, s0, n_paths, seed, 1u << 16);
}

}  // namespace bsfd
