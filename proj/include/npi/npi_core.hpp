#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "npi/errors.hpp"
#include "npi/market_data.hpp"
#include "npi/parallel.hpp"
#include "npi/rng.hpp"

namespace npi {

using BigInt = boost::multiprecision::cpp_int;

/// One equally likely placement of m future returns among the n+1 ladder
/// intervals. interval_index[t] is the 1-based interval I_j holding future
/// return number t+1; the list is the interleaving read off in rank order,
/// so it is non-decreasing.
struct OrderingAssignment {
    std::vector<std::uint32_t> interval_index;
};

/// Per-horizon bounds on the aggregate compounding return: lower[i-1] and
/// upper[i-1] bracket the mean of the first i future log returns.
struct AggregateBounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

enum class OrderingMode { exact, monte_carlo };

struct OrderingSource {
    OrderingMode mode = OrderingMode::monte_carlo;
    std::uint64_t sample_count = 10000; // monte_carlo only
    std::uint64_t seed = 0;
    std::uint64_t enumeration_cap = 1000000;
};

/// C(n+m, m), exact.
BigInt ordering_count(std::size_t n, std::size_t m);

/// Uniform draw over all C(n+m, m) interleavings: a uniform random m-subset
/// of positions {1..n+m} holds the future values; interval indices are read
/// off the sorted positions.
OrderingAssignment sample_ordering(std::size_t n, std::size_t m, CounterRng& rng);

/// Interval endpoints per future step, averaged into per-horizon bounds.
AggregateBounds aggregate_bounds(const OrderingAssignment& ordering,
                                 const ReturnLadder& ladder);

namespace detail {

// Positions p_1 < ... < p_m in {1..n+m}; interval of p_k is p_k - k + 1.
inline void positions_to_intervals(const std::vector<std::uint32_t>& positions,
                                   OrderingAssignment& out) {
    out.interval_index.resize(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) {
        out.interval_index[k] = positions[k] - static_cast<std::uint32_t>(k);
    }
}

} // namespace detail

/// Visit every ordering exactly once, in lexicographic order of the
/// interleaving positions. Throws CapacityError above the cap.
template <typename Fn>
void enumerate_orderings(std::size_t n, std::size_t m, std::uint64_t cap, Fn&& fn) {
    if (n < 1 || m < 1) throw DataError("enumerate_orderings requires n >= 1 and m >= 1");
    const BigInt total = ordering_count(n, m);
    if (total > cap) {
        throw CapacityError("C(" + std::to_string(n + m) + "," + std::to_string(m) + ") = " +
                            total.str() + " exceeds enumeration cap " + std::to_string(cap) +
                            "; use Monte Carlo mode");
    }
    std::vector<std::uint32_t> positions(m);
    for (std::size_t k = 0; k < m; ++k) positions[k] = static_cast<std::uint32_t>(k + 1);
    OrderingAssignment ordering;
    const auto limit = static_cast<std::uint32_t>(n + m);
    for (;;) {
        detail::positions_to_intervals(positions, ordering);
        fn(ordering);
        // next combination
        std::size_t k = m;
        while (k > 0 && positions[k - 1] == limit - static_cast<std::uint32_t>(m - k)) --k;
        if (k == 0) break;
        ++positions[k - 1];
        for (std::size_t j = k; j < m; ++j) positions[j] = positions[j - 1] + 1;
    }
}

/// Per-ordering driver shared by the pricing and probability estimators.
/// Calls fn(index, bounds) once per ordering with index in [0, N) and
/// returns N. Exact mode runs sequentially in enumeration order; Monte
/// Carlo mode runs in parallel with one RNG stream per sample index, so
/// fn must tolerate concurrent calls with distinct indices (write into
/// index-keyed slots).
template <typename Fn>
std::uint64_t for_each_ordering(const ReturnLadder& ladder, std::size_t m,
                                const OrderingSource& source, Fn&& fn) {
    const std::size_t n = ladder.rung_count();
    if (source.mode == OrderingMode::exact) {
        std::uint64_t index = 0;
        enumerate_orderings(n, m, source.enumeration_cap, [&](const OrderingAssignment& o) {
            fn(index++, aggregate_bounds(o, ladder));
        });
        return index;
    }
    parallel_for(source.sample_count, [&](std::size_t i) {
        CounterRng rng(source.seed, i);
        const OrderingAssignment o = sample_ordering(n, m, rng);
        fn(i, aggregate_bounds(o, ladder));
    });
    return source.sample_count;
}

/// Debug dump: one CSV row of interval indices per ordering.
void export_orderings_csv(std::size_t n, std::size_t m, std::uint64_t cap, std::ostream& out);

} // namespace npi
