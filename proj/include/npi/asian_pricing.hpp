#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "npi/market_data.hpp"
#include "npi/npi_core.hpp"

namespace npi {

enum class OptionKind { call, put };

/// Flat continuously compounded rate per step; factor over m steps is
/// exp(-rate_per_step * m).
struct DiscountSpec {
    double rate_per_step = 0.0;

    double factor(std::size_t horizon) const {
        return std::exp(-rate_per_step * static_cast<double>(horizon));
    }
};

/// Fixed-strike arithmetic Asian option.
struct OptionContract {
    OptionKind kind = OptionKind::call;
    double strike = 0.0;
    std::size_t horizon = 0; // m future steps
    double initial_price = 0.0;
    DiscountSpec discount;

    void validate() const; // throws DataError on invariant violations
};

/// Whether the initial price enters the average. Divisor m when excluded,
/// m+1 when included.
struct AveragingConvention {
    bool include_initial = false;
};

/// Expected NPI price interval: max_buying is the lower expected price,
/// min_selling the upper. Standard errors are zero in exact mode.
struct PriceInterval {
    double max_buying = 0.0;
    double min_selling = 0.0;
    double max_buying_se = 0.0;
    double min_selling_se = 0.0;
};

/// Bounds on the arithmetic average price over the horizon for one
/// ordering's aggregate-return bounds.
std::pair<double, double> average_price_bounds(const AggregateBounds& bounds,
                                               double initial_price,
                                               const AveragingConvention& convention = {});

/// Expected minimum selling and maximum buying price over orderings, per
/// the ordering source.
PriceInterval price_interval(const OptionContract& contract, const ReturnLadder& ladder,
                             const OrderingSource& source,
                             const AveragingConvention& convention = {});

} // namespace npi
