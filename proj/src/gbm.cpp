#include "npi/gbm.hpp"

#include <cmath>
#include <vector>

#include "npi/errors.hpp"
#include "npi/rng.hpp"

namespace npi {

void GbmParams::validate() const {
    if (!(initial_price > 0.0)) throw DataError("GBM initial price must be positive");
    if (volatility < 0.0) throw DataError("GBM volatility must be non-negative");
    if (total_steps < 2) throw DataError("GBM needs at least 2 steps");
    if (history_steps < 1 || history_steps >= total_steps) {
        throw DataError("history_steps must be in [1, total_steps)");
    }
}

SplitPath simulate_path(const GbmParams& params, std::uint64_t seed, std::uint64_t path_id) {
    params.validate();
    CounterRng rng(seed, path_id);
    const double step_drift = params.drift - 0.5 * params.volatility * params.volatility;

    std::vector<double> prices(params.total_steps + 1);
    prices[0] = params.initial_price;
    for (std::size_t t = 0; t < params.total_steps; ++t) {
        const double z = next_normal(rng);
        prices[t + 1] = prices[t] * std::exp(step_drift + params.volatility * z);
    }

    Date date{2000, 1, 1};
    std::vector<Observation> history, future;
    for (std::size_t t = 0; t <= params.total_steps; ++t) {
        if (t <= params.history_steps) history.push_back({date, prices[t]});
        if (t >= params.history_steps) future.push_back({date, prices[t]});
        date = date.next_day();
    }
    return SplitPath{PriceSeries(std::move(history)), PriceSeries(std::move(future))};
}

double benchmark_price(const PriceSeries& future, const OptionContract& contract,
                       const AveragingConvention& convention) {
    contract.validate();
    const auto& obs = future.observations();
    if (obs.size() != contract.horizon + 1) {
        throw DataError("future segment has " + std::to_string(obs.size()) +
                        " prices, expected horizon + 1 = " +
                        std::to_string(contract.horizon + 1));
    }
    double sum = convention.include_initial ? obs[0].price : 0.0;
    for (std::size_t t = 1; t < obs.size(); ++t) sum += obs[t].price;
    const double divisor =
        static_cast<double>(convention.include_initial ? contract.horizon + 1 : contract.horizon);
    const double avg = sum / divisor;
    const double payoff = contract.kind == OptionKind::call
        ? std::max(avg - contract.strike, 0.0)
        : std::max(contract.strike - avg, 0.0);
    return contract.discount.factor(contract.horizon) * payoff;
}

} // namespace npi
