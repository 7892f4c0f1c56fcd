#pragma once

// Shared helpers for the test binaries: the reference brute-force pricer
// (written independently of the library's enumeration loop), randomized
// case generation for the property suites, and a CLI process runner.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "npi/asian_pricing.hpp"
#include "npi/market_data.hpp"
#include "npi/payoff_probability.hpp"
#include "npi/rng.hpp"

namespace testsupport {

inline std::string fixture(const std::string& name) {
    return std::string(NPI_FIXTURE_DIR) + "/" + name;
}

// ---------------------------------------------------------------------------
// Reference pricer. Recursively walks the n+m interleaving slots, choosing
// at each slot whether it holds a future value; the interval of a future
// value at slot s with k future values already placed is s - k. This is a
// deliberately different traversal from the library's iterative
// next-combination enumeration.
struct BruteResult {
    double max_buying = 0.0;
    double min_selling = 0.0;
    double prob_lower = 0.0;
    double prob_upper = 0.0;
    std::uint64_t orderings = 0;
};

struct BruteAccum {
    const npi::ReturnLadder* ladder;
    const npi::OptionContract* contract;
    bool include_initial;
    double sum_low = 0.0, sum_high = 0.0;
    std::uint64_t hit_low = 0, hit_high = 0, count = 0;

    void finish(const std::vector<std::uint32_t>& intervals) {
        const double s0 = contract->initial_price;
        const auto m = static_cast<std::size_t>(intervals.size());
        double acc_low = 0.0, acc_high = 0.0, avg_low = 0.0, avg_high = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            acc_low += ladder->endpoint(intervals[i] - 1);
            acc_high += ladder->endpoint(intervals[i]);
            const double steps = static_cast<double>(i + 1);
            avg_low += s0 * std::exp(steps * (acc_low / steps));
            avg_high += s0 * std::exp(steps * (acc_high / steps));
        }
        double divisor = static_cast<double>(m);
        if (include_initial) {
            avg_low += s0;
            avg_high += s0;
            divisor += 1.0;
        }
        avg_low /= divisor;
        avg_high /= divisor;
        const double k = contract->strike;
        if (contract->kind == npi::OptionKind::call) {
            sum_low += std::max(avg_low - k, 0.0);
            sum_high += std::max(avg_high - k, 0.0);
            hit_low += avg_low > k ? 1 : 0;
            hit_high += avg_high > k ? 1 : 0;
        } else {
            sum_low += std::max(k - avg_high, 0.0);
            sum_high += std::max(k - avg_low, 0.0);
            hit_low += avg_high < k ? 1 : 0;
            hit_high += avg_low < k ? 1 : 0;
        }
        ++count;
    }

    void recurse(std::size_t slot, std::size_t total, std::size_t m,
                 std::vector<std::uint32_t>& intervals) {
        if (intervals.size() == m) {
            finish(intervals);
            return;
        }
        if (slot > total) return;
        // slot holds the next future value
        intervals.push_back(static_cast<std::uint32_t>(slot - intervals.size()));
        recurse(slot + 1, total, m, intervals);
        intervals.pop_back();
        // slot holds an observed value; need enough slots left for the rest
        if (total - slot >= m - intervals.size()) {
            recurse(slot + 1, total, m, intervals);
        }
    }
};

inline BruteResult brute_force(const npi::OptionContract& contract,
                               const npi::ReturnLadder& ladder,
                               bool include_initial = false) {
    BruteAccum acc;
    acc.ladder = &ladder;
    acc.contract = &contract;
    acc.include_initial = include_initial;
    std::vector<std::uint32_t> intervals;
    acc.recurse(1, ladder.rung_count() + contract.horizon, contract.horizon, intervals);
    BruteResult out;
    const double nd = static_cast<double>(acc.count);
    const double discount = contract.discount.factor(contract.horizon);
    out.max_buying = discount * acc.sum_low / nd;
    out.min_selling = discount * acc.sum_high / nd;
    out.prob_lower = static_cast<double>(acc.hit_low) / nd;
    out.prob_upper = static_cast<double>(acc.hit_high) / nd;
    out.orderings = acc.count;
    return out;
}

// ---------------------------------------------------------------------------
// Randomized instances for the property suites. Exact mode keeps the cases
// deterministic and fast (n <= 8, m <= 5 means at most C(13,5) orderings).
struct RandomCase {
    npi::ReturnLadder ladder;
    npi::OptionContract contract;
    npi::OrderingSource source;
};

inline RandomCase random_case(npi::CounterRng& rng) {
    const std::size_t n = 1 + rng.next_below(8);
    const std::size_t m = 1 + rng.next_below(5);
    std::vector<double> returns(n);
    for (auto& r : returns) r = -0.2 + 0.4 * rng.next_double();
    std::sort(returns.begin(), returns.end());
    const double lo = returns.front() - 0.2 * rng.next_double();
    const double hi = returns.back() + 0.2 * rng.next_double();

    npi::OptionContract contract;
    contract.kind = rng.next_below(2) == 0 ? npi::OptionKind::call : npi::OptionKind::put;
    contract.initial_price = 1.0 + 199.0 * rng.next_double();
    contract.strike = contract.initial_price * (0.5 + rng.next_double());
    contract.horizon = m;
    contract.discount.rate_per_step = 0.01 * rng.next_double();

    npi::OrderingSource source;
    source.mode = npi::OrderingMode::exact;
    return RandomCase{npi::ReturnLadder(std::move(returns), lo, hi), contract, source};
}

// ---------------------------------------------------------------------------
// CLI runner: captures stdout and the exit status.
struct CliResult {
    int exit_code = -1;
    std::string output;
};

inline CliResult run_shell(const std::string& command) {
    CliResult res;
    const std::string cmd = command + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

inline CliResult run_cli(const std::string& args) {
    return run_shell(std::string(NPI_CLI_PATH) + " " + args);
}

} // namespace testsupport
