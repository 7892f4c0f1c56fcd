// Command-line front end: price, prob, compare, sweep, simulate.
//
// Every command is a pure function of (input files, flags, seed); re-running
// with the same inputs produces byte-identical output for any NPI_THREADS.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "npi/errors.hpp"
#include "npi/evaluation.hpp"
#include "npi/payoff_probability.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitCapacity = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string g9(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw npi::DataError("cannot open output file: " + path);
    out << content;
}

// Options shared by the price/prob/compare ingestion paths.
struct ContractOptions {
    std::string kind = "call";
    double strike = 0.0;
    double strike_frac = 0.0;
    std::size_t horizon = 1;
    double rate = 0.0;
    std::string s0 = "last-close";
    bool include_initial = false;

    void add_to(CLI::App& cmd, bool need_horizon) {
        cmd.add_option("--kind", kind, "Option kind")
            ->check(CLI::IsMember({"call", "put"}))
            ->capture_default_str();
        auto* strike_opt =
            cmd.add_option("--strike", strike, "Fixed strike K")->check(CLI::PositiveNumber);
        auto* frac_opt = cmd.add_option("--strike-frac", strike_frac, "Strike as fraction of S0")
                             ->check(CLI::PositiveNumber)
                             ->excludes(strike_opt);
        if (need_horizon) {
            cmd.add_option("--horizon", horizon, "Future steps m")
                ->required()
                ->check(CLI::PositiveNumber);
            cmd.add_option("--s0", s0, "Initial price, or 'last-close'")
                ->capture_default_str();
        }
        (void)frac_opt;
        cmd.add_option("--rate", rate, "Discount rate per step (continuous)")
            ->capture_default_str();
        cmd.add_flag("--include-initial", include_initial,
                     "Average over m+1 prices including S0");
    }

    npi::OptionContract build(double last_close) const {
        if (strike <= 0.0 && strike_frac <= 0.0) {
            throw UsageError("one of --strike or --strike-frac is required");
        }
        npi::OptionContract c;
        c.kind = kind == "call" ? npi::OptionKind::call : npi::OptionKind::put;
        c.horizon = horizon;
        c.discount.rate_per_step = rate;
        c.initial_price = s0 == "last-close" ? last_close : std::stod(s0);
        c.strike = strike_frac > 0.0 ? strike_frac * c.initial_price : strike;
        return c;
    }
};

struct WindowOptions {
    std::string sampling_start, sampling_end;
    std::string boundary_start, boundary_end;
    std::vector<double> boundary_override;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--window-start", sampling_start, "Sampling window start (YYYY-MM-DD)");
        cmd.add_option("--window-end", sampling_end, "Sampling window end");
        cmd.add_option("--boundary-start", boundary_start, "Boundary window start");
        cmd.add_option("--boundary-end", boundary_end, "Boundary window end");
        cmd.add_option("--boundary", boundary_override,
                       "Explicit boundary returns r0 rn1")
            ->expected(2);
    }

    npi::WindowPolicy build() const {
        npi::WindowPolicy policy;
        if (!sampling_start.empty() || !sampling_end.empty()) {
            if (sampling_start.empty() || sampling_end.empty()) {
                throw npi::DataError("--window-start and --window-end must be given together");
            }
            policy.sampling_window = npi::DateWindow{npi::Date::parse(sampling_start),
                                                     npi::Date::parse(sampling_end)};
        }
        if (!boundary_start.empty() || !boundary_end.empty()) {
            if (boundary_start.empty() || boundary_end.empty()) {
                throw npi::DataError("--boundary-start and --boundary-end must be given together");
            }
            policy.boundary_window = npi::DateWindow{npi::Date::parse(boundary_start),
                                                     npi::Date::parse(boundary_end)};
        }
        if (!boundary_override.empty()) {
            policy.boundary_override = {boundary_override[0], boundary_override[1]};
        }
        return policy;
    }
};

struct SourceOptions {
    std::string mode = "mc";
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::uint64_t cap = 1000000;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--mode", mode, "Ordering source")
            ->check(CLI::IsMember({"exact", "mc"}))
            ->capture_default_str();
        cmd.add_option("--samples", samples, "Monte Carlo sample count")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd.add_option("--seed", seed, "RNG seed")->capture_default_str();
        cmd.add_option("--cap", cap, "Exact enumeration cap")->capture_default_str();
    }

    npi::OrderingSource build() const {
        npi::OrderingSource src;
        src.mode = mode == "exact" ? npi::OrderingMode::exact : npi::OrderingMode::monte_carlo;
        src.sample_count = samples;
        src.seed = seed;
        src.enumeration_cap = cap;
        return src;
    }
};

struct CsvOptions {
    std::string path;
    npi::ColumnMap columns;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--csv", path, "Input price CSV")->required();
        cmd.add_option("--date-col", columns.date, "Date column name")->capture_default_str();
        cmd.add_option("--price-col", columns.price, "Price column name")
            ->capture_default_str();
    }
};

std::string report_header(const char* command, const npi::OptionContract& contract,
                          const ContractOptions& copts, const npi::ReturnLadder& ladder,
                          const SourceOptions& sopts) {
    std::ostringstream os;
    os << "{\n"
       << "  \"command\": \"" << command << "\",\n"
       << "  \"kind\": \"" << copts.kind << "\",\n"
       << "  \"strike\": " << g9(contract.strike) << ",\n"
       << "  \"horizon\": " << contract.horizon << ",\n"
       << "  \"rate_per_step\": " << g9(contract.discount.rate_per_step) << ",\n"
       << "  \"s0\": " << g9(contract.initial_price) << ",\n"
       << "  \"include_initial\": " << (copts.include_initial ? "true" : "false") << ",\n"
       << "  \"ladder\": {\"n\": " << ladder.rung_count()
       << ", \"r0\": " << g9(ladder.lower_boundary())
       << ", \"rn1\": " << g9(ladder.upper_boundary()) << "},\n"
       << "  \"source\": {\"mode\": \"" << sopts.mode << "\", \"samples\": " << sopts.samples
       << ", \"seed\": " << sopts.seed << "},\n";
    return os.str();
}

struct PriceProbArgs {
    CsvOptions csv;
    ContractOptions contract;
    WindowOptions window;
    SourceOptions source;
    std::string out;
    std::string ladder_out;
};

void add_price_prob_options(CLI::App& cmd, PriceProbArgs& args) {
    args.csv.add_to(cmd);
    args.contract.add_to(cmd, /*need_horizon=*/true);
    args.window.add_to(cmd);
    args.source.add_to(cmd);
    cmd.add_option("--out", args.out, "Output file (default stdout)");
    cmd.add_option("--ladder-out", args.ladder_out, "Write the ladder audit CSV here");
}

int run_price_or_prob(const PriceProbArgs& args, bool price) {
    const npi::PriceSeries series = npi::load_price_series_file(args.csv.path, args.csv.columns);
    const npi::ReturnLadder ladder = npi::build_ladder(series, args.window.build());
    if (!args.ladder_out.empty()) {
        std::ofstream lout(args.ladder_out, std::ios::binary);
        if (!lout) throw npi::DataError("cannot open output file: " + args.ladder_out);
        npi::export_ladder_csv(ladder, lout);
    }
    const npi::OptionContract contract = args.contract.build(series.back().price);
    const npi::AveragingConvention convention{args.contract.include_initial};
    const npi::OrderingSource source = args.source.build();

    std::ostringstream os;
    os << report_header(price ? "price" : "prob", contract, args.contract, ladder, args.source);
    if (price) {
        const npi::PriceInterval result =
            npi::price_interval(contract, ladder, source, convention);
        os << "  \"max_buying\": " << g9(result.max_buying) << ",\n"
           << "  \"min_selling\": " << g9(result.min_selling) << ",\n"
           << "  \"standard_error\": {\"max_buying\": " << g9(result.max_buying_se)
           << ", \"min_selling\": " << g9(result.min_selling_se) << "}\n";
    } else {
        const npi::ProbabilityInterval result =
            npi::payoff_probability(contract, ladder, source, convention);
        os << "  \"lower\": " << g9(result.lower) << ",\n"
           << "  \"upper\": " << g9(result.upper) << ",\n"
           << "  \"standard_error\": {\"lower\": " << g9(result.lower_se)
           << ", \"upper\": " << g9(result.upper_se) << "}\n";
    }
    os << "}\n";
    write_output(args.out, os.str());
    return 0;
}

struct CompareArgs {
    std::string csv_a, csv_b;
    npi::ColumnMap columns;
    std::size_t dates = 1;
    ContractOptions contract;
    SourceOptions source;
    std::string out;
};

int run_compare(const CompareArgs& args) {
    const npi::PriceSeries series_a = npi::load_price_series_file(args.csv_a, args.columns);
    const npi::PriceSeries series_b = npi::load_price_series_file(args.csv_b, args.columns);
    const npi::AveragingConvention convention{args.contract.include_initial};
    const npi::OrderingSource source = args.source.build();

    std::ostringstream os;
    os << "date,horizon,p_lower_a,p_upper_a,p_lower_b,p_upper_b,speculator,hedger\n";
    // Trading dates walk toward the shared expiry (the final CSV row);
    // the horizon is the number of steps left.
    for (std::size_t m = args.dates; m >= 1; --m) {
        auto evaluate = [&](const npi::PriceSeries& series, const char* label) {
            const auto& obs = series.observations();
            if (obs.size() < m + 2) {
                throw npi::DataError(std::string("series ") + label +
                                     " is too short for horizon " + std::to_string(m));
            }
            const std::size_t trade_index = obs.size() - 1 - m;
            std::vector<npi::Observation> history(obs.begin(),
                                                  obs.begin() + trade_index + 1);
            const npi::PriceSeries hist(std::move(history));
            const npi::ReturnLadder ladder = npi::build_ladder(hist);
            ContractOptions copts = args.contract;
            copts.horizon = m;
            const npi::OptionContract contract = copts.build(hist.back().price);
            return std::make_pair(
                npi::payoff_probability(contract, ladder, source, convention),
                obs[trade_index].date);
        };
        const auto [prob_a, date_a] = evaluate(series_a, "A");
        const auto [prob_b, date_b] = evaluate(series_b, "B");
        if (date_a != date_b) {
            throw npi::DataError("trading dates differ between assets: " + date_a.to_string() +
                                 " vs " + date_b.to_string());
        }
        const npi::TradingDecision decision = npi::compare_for_trade(prob_a, prob_b);
        os << date_a.to_string() << ',' << m << ',' << g9(prob_a.lower) << ','
           << g9(prob_a.upper) << ',' << g9(prob_b.lower) << ',' << g9(prob_b.upper) << ','
           << npi::to_string(decision.speculator_choice) << ','
           << npi::to_string(decision.hedger_choice) << '\n';
    }
    write_output(args.out, os.str());
    return 0;
}

struct SweepArgs {
    std::vector<double> sigmas;
    std::size_t paths = 100;
    double mu = 0.02;
    double s0 = 50.0;
    std::size_t steps = 110;
    std::size_t history = 100;
    std::string kind = "call";
    double strike = 0.0; // 0 means ATM at s0
    double rate = 0.0;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    double boundary_scale = 1.0;
    std::vector<double> boundary_override;
    std::size_t ladder_tail = 0;
    bool include_initial = false;
    std::string out;
    std::string records_out;
};

int run_sweep_cmd(const SweepArgs& args) {
    npi::SweepSpec spec;
    spec.volatility_grid = args.sigmas;
    spec.paths_per_point = args.paths;
    spec.gbm.drift = args.mu;
    spec.gbm.initial_price = args.s0;
    spec.gbm.total_steps = args.steps;
    spec.gbm.history_steps = args.history;
    spec.kind = args.kind == "call" ? npi::OptionKind::call : npi::OptionKind::put;
    spec.strike = args.strike > 0.0 ? args.strike : args.s0;
    spec.discount.rate_per_step = args.rate;
    spec.source.mode = npi::OrderingMode::monte_carlo;
    spec.source.sample_count = args.samples;
    spec.convention.include_initial = args.include_initial;
    spec.boundary_scale = args.boundary_scale;
    if (!args.boundary_override.empty()) {
        spec.boundary_override = {args.boundary_override[0], args.boundary_override[1]};
    }
    spec.ladder_tail = args.ladder_tail;

    const auto rows = npi::run_sweep(spec, args.seed);
    std::ostringstream os;
    npi::export_sweep_csv(rows, os);
    write_output(args.out, os.str());
    if (!args.records_out.empty()) {
        std::ostringstream ros;
        npi::export_records_csv(rows, ros);
        write_output(args.records_out, ros.str());
    }
    return 0;
}

struct SimulateArgs {
    std::size_t paths = 1;
    double mu = 0.02;
    double sigma = 0.02;
    double s0 = 50.0;
    std::size_t steps = 110;
    std::size_t history = 100;
    std::uint64_t seed = 0;
    std::string out;
};

int run_simulate(const SimulateArgs& args) {
    npi::GbmParams params;
    params.drift = args.mu;
    params.volatility = args.sigma;
    params.initial_price = args.s0;
    params.total_steps = args.steps;
    params.history_steps = args.history;
    params.validate();

    std::ostringstream os;
    os << "path_id,step,price\n";
    for (std::size_t p = 0; p < args.paths; ++p) {
        const npi::SplitPath path = npi::simulate_path(params, args.seed, p);
        std::size_t step = 0;
        char buf[96];
        for (const auto& obs : path.history.observations()) {
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%.9g\n", p, step++, obs.price);
            os << buf;
        }
        // history ends with the split price; the future segment repeats it
        for (std::size_t i = 1; i < path.future.observations().size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%zu,%.9g\n", p, step++,
                          path.future.observations()[i].price);
            os << buf;
        }
    }
    write_output(args.out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NPI pricing for fixed-strike arithmetic Asian options"};
    app.require_subcommand(1);

    PriceProbArgs price_args;
    auto* price_cmd = app.add_subcommand("price", "Expected NPI option price interval");
    add_price_prob_options(*price_cmd, price_args);

    PriceProbArgs prob_args;
    auto* prob_cmd = app.add_subcommand("prob", "NPI probability of positive payoff");
    add_price_prob_options(*prob_cmd, prob_args);

    CompareArgs compare_args;
    compare_args.contract.strike_frac = 0.95;
    auto* compare_cmd =
        app.add_subcommand("compare", "Pairwise trading comparison of two underlyings");
    compare_cmd->add_option("--csv-a", compare_args.csv_a, "Asset A price CSV")->required();
    compare_cmd->add_option("--csv-b", compare_args.csv_b, "Asset B price CSV")->required();
    compare_cmd->add_option("--date-col", compare_args.columns.date, "Date column name")
        ->capture_default_str();
    compare_cmd->add_option("--price-col", compare_args.columns.price, "Price column name")
        ->capture_default_str();
    compare_cmd->add_option("--dates", compare_args.dates, "Number of trading dates")
        ->required()
        ->check(CLI::PositiveNumber);
    compare_args.contract.add_to(*compare_cmd, /*need_horizon=*/false);
    compare_args.source.add_to(*compare_cmd);
    compare_cmd->add_option("--out", compare_args.out, "Output file (default stdout)");

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Volatility sweep of the simulation study");
    sweep_cmd->add_option("--sigmas", sweep_args.sigmas, "Per-step volatility grid")
        ->required();
    sweep_cmd->add_option("--paths", sweep_args.paths, "Paths per grid point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--mu", sweep_args.mu, "Per-step drift")->capture_default_str();
    sweep_cmd->add_option("--s0", sweep_args.s0, "Initial price")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--steps", sweep_args.steps, "Total steps per path")
        ->capture_default_str();
    sweep_cmd->add_option("--history", sweep_args.history, "History steps per path")
        ->capture_default_str();
    sweep_cmd->add_option("--kind", sweep_args.kind, "Option kind")
        ->check(CLI::IsMember({"call", "put"}))
        ->capture_default_str();
    sweep_cmd->add_option("--strike", sweep_args.strike, "Strike (default: ATM at s0)")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--rate", sweep_args.rate, "Discount rate per step")
        ->capture_default_str();
    sweep_cmd->add_option("--samples", sweep_args.samples, "MC samples per path")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_args.seed, "RNG seed")->capture_default_str();
    sweep_cmd->add_option("--boundary-scale", sweep_args.boundary_scale,
                          "Ladder boundary widening factor (>= 1)")
        ->capture_default_str();
    sweep_cmd->add_option("--boundary", sweep_args.boundary_override,
                          "Fixed boundary returns r0 rn1 for every path")
        ->expected(2);
    sweep_cmd->add_option("--ladder-tail", sweep_args.ladder_tail,
                          "Build ladder rungs from only the last N history returns");
    sweep_cmd->add_flag("--include-initial", sweep_args.include_initial,
                        "Average over m+1 prices including S0");
    sweep_cmd->add_option("--out", sweep_args.out, "Summary CSV (default stdout)");
    sweep_cmd->add_option("--records", sweep_args.records_out, "Raw per-path records CSV");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Dump GBM paths as CSV");
    sim_cmd->add_option("--paths", sim_args.paths, "Number of paths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_cmd->add_option("--mu", sim_args.mu, "Per-step drift")->capture_default_str();
    sim_cmd->add_option("--sigma", sim_args.sigma, "Per-step volatility")
        ->capture_default_str();
    sim_cmd->add_option("--s0", sim_args.s0, "Initial price")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_cmd->add_option("--steps", sim_args.steps, "Total steps")->capture_default_str();
    sim_cmd->add_option("--history", sim_args.history, "History steps")->capture_default_str();
    sim_cmd->add_option("--seed", sim_args.seed, "RNG seed")->capture_default_str();
    sim_cmd->add_option("--out", sim_args.out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*price_cmd) return run_price_or_prob(price_args, true);
        if (*prob_cmd) return run_price_or_prob(prob_args, false);
        if (*compare_cmd) return run_compare(compare_args);
        if (*sweep_cmd) return run_sweep_cmd(sweep_args);
        if (*sim_cmd) return run_simulate(sim_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const npi::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const npi::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
