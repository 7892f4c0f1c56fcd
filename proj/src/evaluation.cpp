#include "npi/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "npi/errors.hpp"
#include "npi/parallel.hpp"
#include "npi/rng.hpp"

namespace npi {

StudyMetrics compute_metrics(const std::vector<StudyRecord>& records) {
    if (records.empty()) throw DataError("compute_metrics needs at least one record");
    StudyMetrics out;
    out.record_count = records.size();
    std::size_t covered = 0;
    double abs_gap = 0.0;
    double width = 0.0;
    for (const auto& rec : records) {
        if (rec.npi.max_buying <= rec.benchmark && rec.benchmark <= rec.npi.min_selling) {
            ++covered;
        }
        const double mid = 0.5 * (rec.npi.max_buying + rec.npi.min_selling);
        abs_gap += std::abs(mid - rec.benchmark);
        width += rec.npi.min_selling - rec.npi.max_buying;
    }
    const double nd = static_cast<double>(records.size());
    out.coverage = static_cast<double>(covered) / nd;
    out.accuracy = abs_gap / nd;
    out.precision = width / nd;
    return out;
}

void SweepSpec::validate() const {
    if (volatility_grid.empty()) throw DataError("sweep needs a non-empty volatility grid");
    for (double s : volatility_grid) {
        if (s < 0.0) throw DataError("sweep volatility must be non-negative");
    }
    if (paths_per_point < 1) throw DataError("sweep needs at least one path per grid point");
    if (!(strike > 0.0)) throw DataError("sweep strike must be positive");
    if (boundary_scale < 1.0) throw DataError("boundary_scale must be >= 1");
    GbmParams g = gbm;
    g.volatility = volatility_grid.front();
    g.validate();
}

namespace {

StudyRecord run_path(const SweepSpec& spec, const GbmParams& params, std::uint64_t seed,
                     std::uint64_t tag) {
    const SplitPath path = simulate_path(params, CounterRng::derive(seed, 2 * tag), 0);

    const auto returns = log_returns(path.history);
    const auto [mn, mx] = std::minmax_element(returns.begin(), returns.end());
    double lo = *mn, hi = *mx;
    if (spec.boundary_override) {
        lo = spec.boundary_override->first;
        hi = spec.boundary_override->second;
    } else if (spec.boundary_scale > 1.0) {
        const double mid = 0.5 * (*mn + *mx);
        const double half = 0.5 * (*mx - *mn);
        lo = mid - spec.boundary_scale * half;
        hi = mid + spec.boundary_scale * half;
    }
    std::vector<double> rungs = spec.ladder_tail > 0 && spec.ladder_tail < returns.size()
        ? std::vector<double>(returns.end() - static_cast<std::ptrdiff_t>(spec.ladder_tail),
                              returns.end())
        : returns;
    std::sort(rungs.begin(), rungs.end());
    const ReturnLadder ladder(std::move(rungs), std::min(lo, *mn), std::max(hi, *mx));

    OptionContract contract;
    contract.kind = spec.kind;
    contract.strike = spec.strike;
    contract.horizon = params.future_steps();
    contract.initial_price = path.history.back().price;
    contract.discount = spec.discount;

    OrderingSource source = spec.source;
    source.seed = CounterRng::derive(seed, 2 * tag + 1);

    StudyRecord rec;
    rec.npi = price_interval(contract, ladder, source, spec.convention);
    rec.benchmark = benchmark_price(path.future, contract, spec.convention);
    return rec;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::vector<SweepRow> rows(spec.volatility_grid.size());
    for (std::size_t si = 0; si < spec.volatility_grid.size(); ++si) {
        SweepRow& row = rows[si];
        row.volatility = spec.volatility_grid[si];
        GbmParams params = spec.gbm;
        params.volatility = row.volatility;
        row.records.resize(spec.paths_per_point);
        parallel_for(spec.paths_per_point, [&](std::size_t p) {
            const std::uint64_t tag = si * spec.paths_per_point + p;
            row.records[p] = run_path(spec, params, seed, tag);
        });
        row.metrics = compute_metrics(row.records);
    }
    return rows;
}

void export_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "sigma,coverage,accuracy,precision,paths\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%zu\n", row.volatility,
                      row.metrics.coverage, row.metrics.accuracy, row.metrics.precision,
                      row.metrics.record_count);
        out << buf;
    }
}

void export_records_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "sigma,path_id,max_buying,min_selling,benchmark\n";
    char buf[160];
    for (const auto& row : rows) {
        for (std::size_t p = 0; p < row.records.size(); ++p) {
            const auto& rec = row.records[p];
            std::snprintf(buf, sizeof(buf), "%.9g,%zu,%.9g,%.9g,%.9g\n", row.volatility, p,
                          rec.npi.max_buying, rec.npi.min_selling, rec.benchmark);
            out << buf;
        }
    }
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0; // average rank for ties
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = shared;
        i = j + 1;
    }
    return r;
}

} // namespace

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DataError("spearman_rho needs two equal-length series of size >= 2");
    }
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace npi
