#include "npi/npi_core.hpp"

#include <algorithm>
#include <ostream>

namespace npi {

BigInt ordering_count(std::size_t n, std::size_t m) {
    if (n < 1 || m < 1) throw DataError("ordering_count requires n >= 1 and m >= 1");
    BigInt result = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        result *= static_cast<std::uint64_t>(n + k);
        result /= k; // exact: C(n+k, k) is an integer
    }
    return result;
}

OrderingAssignment sample_ordering(std::size_t n, std::size_t m, CounterRng& rng) {
    if (n < 1 || m < 1) throw DataError("sample_ordering requires n >= 1 and m >= 1");
    // Floyd's subset sampling: uniform m-subset of {1..n+m} in m draws.
    std::vector<std::uint32_t> positions;
    positions.reserve(m);
    for (std::uint64_t j = n + 1; j <= n + m; ++j) {
        const auto t = static_cast<std::uint32_t>(1 + rng.next_below(j));
        if (std::find(positions.begin(), positions.end(), t) != positions.end()) {
            positions.push_back(static_cast<std::uint32_t>(j));
        } else {
            positions.push_back(t);
        }
    }
    std::sort(positions.begin(), positions.end());
    OrderingAssignment out;
    detail::positions_to_intervals(positions, out);
    return out;
}

AggregateBounds aggregate_bounds(const OrderingAssignment& ordering,
                                 const ReturnLadder& ladder) {
    const std::size_t m = ordering.interval_index.size();
    AggregateBounds bounds;
    bounds.lower.resize(m);
    bounds.upper.resize(m);
    double sum_lower = 0.0;
    double sum_upper = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const std::uint32_t j = ordering.interval_index[t];
        if (j < 1 || j > ladder.interval_count()) {
            throw DataError("ordering interval index " + std::to_string(j) +
                            " out of range for ladder with " +
                            std::to_string(ladder.interval_count()) + " intervals");
        }
        sum_lower += ladder.endpoint(j - 1);
        sum_upper += ladder.endpoint(j);
        const double i = static_cast<double>(t + 1);
        bounds.lower[t] = sum_lower / i;
        bounds.upper[t] = sum_upper / i;
    }
    return bounds;
}

void export_orderings_csv(std::size_t n, std::size_t m, std::uint64_t cap, std::ostream& out) {
    enumerate_orderings(n, m, cap, [&](const OrderingAssignment& o) {
        for (std::size_t t = 0; t < o.interval_index.size(); ++t) {
            if (t > 0) out << ',';
            out << o.interval_index[t];
        }
        out << '\n';
    });
}

} // namespace npi
