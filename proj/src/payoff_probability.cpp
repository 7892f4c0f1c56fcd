#include "npi/payoff_probability.hpp"

#include <vector>

namespace npi {

ProbabilityInterval payoff_probability(const OptionContract& contract,
                                       const ReturnLadder& ladder,
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
    std::vector<std::uint8_t> lower_hits(slots);
    std::vector<std::uint8_t> upper_hits(slots);

    const double k = contract.strike;
    const bool call = contract.kind == OptionKind::call;
    const std::uint64_t count =
        for_each_ordering(ladder, contract.horizon, source,
                          [&](std::uint64_t index, const AggregateBounds& bounds) {
                              const auto [avg_lo, avg_hi] =
                                  average_price_bounds(bounds, contract.initial_price, convention);
                              if (call) {
                                  lower_hits[index] = avg_lo > k;
                                  upper_hits[index] = avg_hi > k;
                              } else {
                                  lower_hits[index] = avg_hi < k;
                                  upper_hits[index] = avg_lo < k;
                              }
                          });

    std::uint64_t sum_lo = 0, sum_hi = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        sum_lo += lower_hits[i];
        sum_hi += upper_hits[i];
    }
    const double nd = static_cast<double>(count);
    ProbabilityInterval out;
    out.lower = static_cast<double>(sum_lo) / nd;
    out.upper = static_cast<double>(sum_hi) / nd;
    if (mc && count > 1) {
        // Bernoulli sample standard errors.
        out.lower_se = std::sqrt(out.lower * (1.0 - out.lower) / (nd - 1.0));
        out.upper_se = std::sqrt(out.upper * (1.0 - out.upper) / (nd - 1.0));
    }
    return out;
}

TradingDecision compare_for_trade(const ProbabilityInterval& prob_a,
                                  const ProbabilityInterval& prob_b) {
    TradingDecision decision;
    const bool a_fires = prob_a.lower > prob_b.lower || prob_a.upper > prob_b.upper;
    const bool b_fires = prob_b.lower > prob_a.lower || prob_b.upper > prob_a.upper;
    if (a_fires && !b_fires) {
        decision.speculator_choice = AssetChoice::a;
    } else if (b_fires && !a_fires) {
        decision.speculator_choice = AssetChoice::b;
    }
    if (prob_a.lower > prob_b.upper) {
        decision.hedger_choice = HedgerChoice::a;
    } else if (prob_b.lower > prob_a.upper) {
        decision.hedger_choice = HedgerChoice::b;
    }
    return decision;
}

const char* to_string(AssetChoice c) {
    switch (c) {
        case AssetChoice::a: return "A";
        case AssetChoice::b: return "B";
        default: return "indifferent";
    }
}

const char* to_string(HedgerChoice c) {
    switch (c) {
        case HedgerChoice::a: return "A";
        case HedgerChoice::b: return "B";
        default: return "abstain";
    }
}

} // namespace npi
