#pragma once

#include <iosfwd>
#include <vector>

#include "npi/asian_pricing.hpp"
#include "npi/gbm.hpp"

namespace npi {

/// One simulated path's outcome: the NPI interval from the historical
/// segment against the realized benchmark price from the future segment.
struct StudyRecord {
    PriceInterval npi;
    double benchmark = 0.0;
};

struct StudyMetrics {
    double coverage = 0.0;   // fraction with max_buying <= benchmark <= min_selling
    double accuracy = 0.0;   // mean |interval midpoint - benchmark|
    double precision = 0.0;  // mean interval width
    std::size_t record_count = 0;
};

StudyMetrics compute_metrics(const std::vector<StudyRecord>& records);

/// Volatility sweep over the simulation study design.
struct SweepSpec {
    std::vector<double> volatility_grid;
    std::size_t paths_per_point = 100;
    GbmParams gbm;               // volatility field is overridden per grid point
    OptionKind kind = OptionKind::call;
    double strike = 0.0;
    DiscountSpec discount;
    OrderingSource source;       // seed is re-derived per (sigma, path)
    AveragingConvention convention;
    // Precision regime controls. boundary_override pins r(0)/r(n+1) to
    // fixed returns for every path, which keeps the mean interval width
    // nearly constant across the volatility grid; boundary_scale instead
    // widens the observed return range about its midpoint. Override wins
    // when both are set.
    std::optional<std::pair<double, double>> boundary_override;
    double boundary_scale = 1.0;
    // Emphasis-period control: build the ladder rungs from only the last
    // ladder_tail history returns (0 = all of them). Boundaries still come
    // from the override/scale settings or the full history extremes.
    std::size_t ladder_tail = 0;

    void validate() const;
};

struct SweepRow {
    double volatility = 0.0;
    StudyMetrics metrics;
    std::vector<StudyRecord> records; // one per path, in path order
};

/// Simulate paths_per_point paths per grid sigma, price each history
/// segment with NPI (initial price = last history close) and benchmark
/// against the future segment.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::uint64_t seed);

/// Summary CSV: header sigma,coverage,accuracy,precision,paths.
void export_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Raw records CSV: header sigma,path_id,max_buying,min_selling,benchmark.
void export_records_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Spearman rank correlation; used for the coverage/accuracy trend checks.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

} // namespace npi
