#pragma once

#include <cstdint>

#include "npi/asian_pricing.hpp"
#include "npi/market_data.hpp"

namespace npi {

/// Geometric Brownian motion per-step parameters and the history/future
/// split used by the simulation study.
struct GbmParams {
    double drift = 0.0;             // mu per step
    double volatility = 0.0;        // sigma per step, >= 0
    double initial_price = 0.0;
    std::size_t total_steps = 0;
    std::size_t history_steps = 0;  // < total_steps

    std::size_t future_steps() const { return total_steps - history_steps; }
    void validate() const;
};

/// One simulated path split into the historical segment (steps 0..history)
/// and the future segment (steps history..total); the split price appears
/// in both so the future segment carries m+1 prices for m future steps.
struct SplitPath {
    PriceSeries history;
    PriceSeries future;
};

/// S_{t+1} = S_t * exp((mu - sigma^2/2) + sigma * Z_t). Fully determined
/// by (seed, path_id); dates are a synthetic daily grid.
SplitPath simulate_path(const GbmParams& params, std::uint64_t seed, std::uint64_t path_id);

/// Realized discounted payoff from the future segment: average the m
/// future prices per the convention (with the split price as the initial
/// price when included) and apply the positive part and discount.
double benchmark_price(const PriceSeries& future, const OptionContract& contract,
                       const AveragingConvention& convention = {});

} // namespace npi
