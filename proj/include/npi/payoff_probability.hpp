#pragma once

#include "npi/asian_pricing.hpp"

namespace npi {

/// NPI upper and lower probability of a positive payoff. Standard errors
/// are zero in exact mode.
struct ProbabilityInterval {
    double lower = 0.0;
    double upper = 0.0;
    double lower_se = 0.0;
    double upper_se = 0.0;
};

enum class AssetChoice { a, b, indifferent };
enum class HedgerChoice { a, b, abstain };

/// Pairwise trading criteria for two assets' positive-payoff probability
/// intervals. The hedger requires strict dominance (lower of one above
/// upper of the other); the speculator compares endpoints and falls back
/// to indifferent when the endpoint rules conflict or tie.
struct TradingDecision {
    AssetChoice speculator_choice = AssetChoice::indifferent;
    HedgerChoice hedger_choice = HedgerChoice::abstain;
};

ProbabilityInterval payoff_probability(const OptionContract& contract,
                                       const ReturnLadder& ladder,
                                       const OrderingSource& source,
                                       const AveragingConvention& convention = {});

TradingDecision compare_for_trade(const ProbabilityInterval& prob_a,
                                  const ProbabilityInterval& prob_b);

const char* to_string(AssetChoice c);
const char* to_string(HedgerChoice c);

} // namespace npi
