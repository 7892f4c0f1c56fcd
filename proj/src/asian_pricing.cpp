#include "npi/asian_pricing.hpp"

#include <vector>

namespace npi {

void OptionContract::validate() const {
    if (!(strike > 0.0)) throw DataError("strike must be positive");
    if (horizon < 1) throw DataError("horizon must be at least 1");
    if (!(initial_price > 0.0)) throw DataError("initial price must be positive");
    const double b = discount.factor(horizon);
    if (!(b > 0.0) || b > 1.0) throw DataError("discount factor must be in (0, 1]");
}

std::pair<double, double> average_price_bounds(const AggregateBounds& bounds,
                                               double initial_price,
                                               const AveragingConvention& convention) {
    const std::size_t m = bounds.lower.size();
    double lo = convention.include_initial ? initial_price : 0.0;
    double hi = lo;
    for (std::size_t i = 1; i <= m; ++i) {
        const double horizon = static_cast<double>(i);
        lo += initial_price * std::exp(horizon * bounds.lower[i - 1]);
        hi += initial_price * std::exp(horizon * bounds.upper[i - 1]);
    }
    const double divisor = static_cast<double>(convention.include_initial ? m + 1 : m);
    return {lo / divisor, hi / divisor};
}

namespace {

// Per-ordering payoff bounds before discounting.
inline std::pair<double, double> payoff_bounds(OptionKind kind, double strike,
                                               double avg_lo, double avg_hi) {
    if (kind == OptionKind::call) {
        return {std::max(avg_lo - strike, 0.0), std::max(avg_hi - strike, 0.0)};
    }
    return {std::max(strike - avg_hi, 0.0), std::max(strike - avg_lo, 0.0)};
}

} // namespace

PriceInterval price_interval(const OptionContract& contract, const ReturnLadder& ladder,
                             const OrderingSource& source,
                             const AveragingConvention& convention) {
    contract.validate();
    const bool mc = source.mode == OrderingMode::monte_carlo;
    std::uint64_t slots = source.sample_count;
    if (!mc) {
        const BigInt total = ordering_count(ladder.rung_count(), contract.horizon);
        if (total > source.enumeration_cap) {
            throw CapacityError("exact mode needs " + total.str() +
                                " orderings, above the cap of " +
                                std::to_string(source.enumeration_cap));
        }
        slots = static_cast<std::uint64_t>(total);
    }
    std::vector<double> lower_payoffs(slots);
    std::vector<double> upper_payoffs(slots);

    const std::uint64_t count =
        for_each_ordering(ladder, contract.horizon, source,
                          [&](std::uint64_t index, const AggregateBounds& bounds) {
                              const auto [avg_lo, avg_hi] =
                                  average_price_bounds(bounds, contract.initial_price, convention);
                              const auto [pl, pu] =
                                  payoff_bounds(contract.kind, contract.strike, avg_lo, avg_hi);
                              lower_payoffs[index] = pl;
                              upper_payoffs[index] = pu;
                          });

    // Reduce in fixed index order so results are schedule-independent.
    const double b = contract.discount.factor(contract.horizon);
    const double nd = static_cast<double>(count);
    double sum_lo = 0.0, sum_hi = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
        sum_lo += lower_payoffs[i];
        sum_hi += upper_payoffs[i];
    }
    PriceInterval out;
    out.max_buying = b * sum_lo / nd;
    out.min_selling = b * sum_hi / nd;
    if (mc && count > 1) {
        const double mean_lo = sum_lo / nd;
        const double mean_hi = sum_hi / nd;
        double var_lo = 0.0, var_hi = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double dl = lower_payoffs[i] - mean_lo;
            const double dh = upper_payoffs[i] - mean_hi;
            var_lo += dl * dl;
            var_hi += dh * dh;
        }
        var_lo /= nd - 1.0;
        var_hi /= nd - 1.0;
        out.max_buying_se = b * std::sqrt(var_lo / nd);
        out.min_selling_se = b * std::sqrt(var_hi / nd);
    }
    return out;
}

} // namespace npi
