#include <cmath>

#include "doctest.h"
#include "npi/asian_pricing.hpp"
#include "npi/payoff_probability.hpp"
#include "support.hpp"

using namespace npi;

namespace {

const ReturnLadder& small_ladder() {
    // n = 3 rungs with symmetric boundaries; 10 orderings for m = 2
    static const ReturnLadder ladder({0.00, 0.01, 0.02}, -0.04, 0.04);
    return ladder;
}

OptionContract atm_call() {
    OptionContract c;
    c.kind = OptionKind::call;
    c.strike = 100.0;
    c.horizon = 2;
    c.initial_price = 100.0;
    return c;
}

OrderingSource exact_source() {
    OrderingSource s;
    s.mode = OrderingMode::exact;
    return s;
}

} // namespace

TEST_CASE("contract validation") {
    OptionContract c = atm_call();
    CHECK_NOTHROW(c.validate());
    c.strike = 0.0;
    CHECK_THROWS_AS(c.validate(), DataError);
    c = atm_call();
    c.horizon = 0;
    CHECK_THROWS_AS(c.validate(), DataError);
    c = atm_call();
    c.initial_price = -5.0;
    CHECK_THROWS_AS(c.validate(), DataError);
    c = atm_call();
    c.discount.rate_per_step = -0.1; // factor above 1
    CHECK_THROWS_AS(c.validate(), DataError);
}

TEST_CASE("average price bounds") {
    SUBCASE("zero return, one step") {
        const auto [lo, hi] = average_price_bounds(AggregateBounds{{0.0}, {0.0}}, 100.0);
        CHECK(lo == doctest::Approx(100.0));
        CHECK(hi == doctest::Approx(100.0));
    }
    SUBCASE("two-step reference values") {
        const AggregateBounds b{{-0.05, -0.015}, {0.01, 0.03}};
        const auto [lo, hi] = average_price_bounds(b, 100.0);
        // (100 e^{-0.05} + 100 e^{-0.03}) / 2 and (100 e^{0.01} + 100 e^{0.06}) / 2
        CHECK(lo == doctest::Approx(96.083747902461).epsilon(1e-10));
        CHECK(hi == doctest::Approx(103.594335681476).epsilon(1e-10));
    }
    SUBCASE("include-initial convention") {
        const auto [lo, hi] = average_price_bounds(AggregateBounds{{0.0}, {0.0}}, 100.0,
                                                   AveragingConvention{true});
        CHECK(lo == doctest::Approx(100.0));
        CHECK(hi == doctest::Approx(100.0));
        // with a nonzero return the initial price pulls the average back
        const auto [lo2, hi2] = average_price_bounds(
            AggregateBounds{{0.1}, {0.1}}, 100.0, AveragingConvention{true});
        CHECK(lo2 == doctest::Approx((100.0 + 100.0 * std::exp(0.1)) / 2.0));
        CHECK(hi2 == doctest::Approx(lo2));
    }
}

TEST_CASE("exact pricing matches the reference enumeration") {
    SUBCASE("small ladder, at-the-money call") {
        const OptionContract c = atm_call();
        const PriceInterval p = price_interval(c, small_ladder(), exact_source());
        const auto brute = testsupport::brute_force(c, small_ladder());
        CHECK(brute.orderings == 10);
        CHECK(p.max_buying == doctest::Approx(brute.max_buying).epsilon(1e-12));
        CHECK(p.min_selling == doctest::Approx(brute.min_selling).epsilon(1e-12));
        // frozen values from an independent high-precision script
        CHECK(p.max_buying == doctest::Approx(0.810099147393).epsilon(1e-9));
        CHECK(p.min_selling == doctest::Approx(2.351437977854).epsilon(1e-9));
        CHECK(p.max_buying_se == 0.0);
        CHECK(p.min_selling_se == 0.0);
    }
    SUBCASE("small ladder, at-the-money put") {
        OptionContract c = atm_call();
        c.kind = OptionKind::put;
        const PriceInterval p = price_interval(c, small_ladder(), exact_source());
        const auto brute = testsupport::brute_force(c, small_ladder());
        CHECK(p.max_buying == doctest::Approx(brute.max_buying).epsilon(1e-12));
        CHECK(p.min_selling == doctest::Approx(brute.min_selling).epsilon(1e-12));
        CHECK(p.max_buying == doctest::Approx(0.0));
        CHECK(p.min_selling == doctest::Approx(1.611461254982).epsilon(1e-9));
    }
    SUBCASE("csv-driven ladder, n=4 m=3") {
        const PriceSeries series = load_price_series_file(testsupport::fixture("tiny5.csv"));
        const ReturnLadder ladder = build_ladder(series);
        OptionContract c;
        c.kind = OptionKind::call;
        c.strike = 102.0;
        c.horizon = 3;
        c.initial_price = series.back().price; // 103
        const PriceInterval p = price_interval(c, ladder, exact_source());
        const auto brute = testsupport::brute_force(c, ladder);
        CHECK(brute.orderings == 35);
        CHECK(p.max_buying == doctest::Approx(brute.max_buying).epsilon(1e-12));
        CHECK(p.min_selling == doctest::Approx(brute.min_selling).epsilon(1e-12));
        CHECK(p.max_buying == doctest::Approx(1.390777489815).epsilon(1e-9));
        CHECK(p.min_selling == doctest::Approx(2.797498882108).epsilon(1e-9));
    }
    SUBCASE("include-initial convention agrees with the reference") {
        const OptionContract c = atm_call();
        const AveragingConvention conv{true};
        const PriceInterval p = price_interval(c, small_ladder(), exact_source(), conv);
        const auto brute = testsupport::brute_force(c, small_ladder(), true);
        CHECK(p.max_buying == doctest::Approx(brute.max_buying).epsilon(1e-12));
        CHECK(p.min_selling == doctest::Approx(brute.min_selling).epsilon(1e-12));
    }
}

TEST_CASE("monte carlo pricing agrees with exact enumeration") {
    const OptionContract c = atm_call();
    const PriceInterval exact = price_interval(c, small_ladder(), exact_source());

    OrderingSource mc;
    mc.mode = OrderingMode::monte_carlo;
    mc.sample_count = 100000;
    mc.seed = 17;
    const PriceInterval sampled = price_interval(c, small_ladder(), mc);
    REQUIRE(sampled.max_buying_se > 0.0);
    REQUIRE(sampled.min_selling_se > 0.0);
    CHECK(std::abs(sampled.max_buying - exact.max_buying) < 3.0 * sampled.max_buying_se);
    CHECK(std::abs(sampled.min_selling - exact.min_selling) < 3.0 * sampled.min_selling_se);
}

TEST_CASE("pricing edge cases") {
    SUBCASE("near-zero strike reduces to the expected average price") {
        OptionContract c = atm_call();
        c.strike = 1e-12;
        const PriceInterval p = price_interval(c, small_ladder(), exact_source());

        double lo_sum = 0.0, hi_sum = 0.0;
        std::size_t count = 0;
        enumerate_orderings(3, 2, 100, [&](const OrderingAssignment& o) {
            const auto [lo, hi] =
                average_price_bounds(aggregate_bounds(o, small_ladder()), 100.0);
            lo_sum += lo;
            hi_sum += hi;
            ++count;
        });
        CHECK(p.max_buying == doctest::Approx(lo_sum / count).epsilon(1e-9));
        CHECK(p.min_selling == doctest::Approx(hi_sum / count).epsilon(1e-9));
    }
    SUBCASE("unreachable strike prices to zero") {
        OptionContract c = atm_call();
        c.strike = 100.0 * std::exp(2.0 * 0.04) + 1.0;
        const PriceInterval p = price_interval(c, small_ladder(), exact_source());
        CHECK(p.max_buying == 0.0);
        CHECK(p.min_selling == 0.0);
    }
    SUBCASE("zero-width ladder collapses the interval") {
        const ReturnLadder flat({0.01, 0.01}, 0.01, 0.01);
        OptionContract c = atm_call();
        const PriceInterval p = price_interval(c, flat, exact_source());
        CHECK(p.max_buying == doctest::Approx(p.min_selling));
        CHECK(p.max_buying > 0.0);
    }
    SUBCASE("discounting applies the flat per-step factor") {
        OptionContract c = atm_call();
        const PriceInterval base = price_interval(c, small_ladder(), exact_source());
        c.discount.rate_per_step = 0.01;
        const PriceInterval discounted = price_interval(c, small_ladder(), exact_source());
        const double factor = std::exp(-0.01 * 2.0);
        CHECK(discounted.max_buying == doctest::Approx(base.max_buying * factor));
        CHECK(discounted.min_selling == doctest::Approx(base.min_selling * factor));
    }
    SUBCASE("exact mode refuses above the enumeration cap") {
        OptionContract c = atm_call();
        OrderingSource source = exact_source();
        source.enumeration_cap = 9; // 10 orderings needed
        CHECK_THROWS_AS(price_interval(c, small_ladder(), source), CapacityError);
        CHECK_THROWS_AS(payoff_probability(c, small_ladder(), source), CapacityError);
    }
}

TEST_CASE("payoff probabilities") {
    SUBCASE("small ladder call, exact") {
        const ProbabilityInterval p =
            payoff_probability(atm_call(), small_ladder(), exact_source());
        const auto brute = testsupport::brute_force(atm_call(), small_ladder());
        CHECK(p.lower == doctest::Approx(brute.prob_lower).epsilon(1e-12));
        CHECK(p.upper == doctest::Approx(brute.prob_upper).epsilon(1e-12));
        CHECK(p.lower == doctest::Approx(0.5));  // 5 of 10 orderings
        CHECK(p.upper == doctest::Approx(0.9));  // 9 of 10 orderings
    }
    SUBCASE("small ladder put, exact") {
        OptionContract c = atm_call();
        c.kind = OptionKind::put;
        const ProbabilityInterval p = payoff_probability(c, small_ladder(), exact_source());
        CHECK(p.lower == doctest::Approx(0.0));
        CHECK(p.upper == doctest::Approx(0.4));  // 4 of 10 orderings
    }
    SUBCASE("csv-driven ladder, n=4 m=3") {
        const PriceSeries series = load_price_series_file(testsupport::fixture("tiny5.csv"));
        const ReturnLadder ladder = build_ladder(series);
        OptionContract c;
        c.kind = OptionKind::call;
        c.strike = 102.0;
        c.horizon = 3;
        c.initial_price = 103.0;
        const ProbabilityInterval p = payoff_probability(c, ladder, exact_source());
        CHECK(p.lower == doctest::Approx(22.0 / 35.0).epsilon(1e-12));
        CHECK(p.upper == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    }
    SUBCASE("forced indicators") {
        OptionContract c = atm_call();
        c.strike = 1e-9;
        ProbabilityInterval p = payoff_probability(c, small_ladder(), exact_source());
        CHECK(p.lower == doctest::Approx(1.0));
        CHECK(p.upper == doctest::Approx(1.0));
        c.strike = 1000.0;
        p = payoff_probability(c, small_ladder(), exact_source());
        CHECK(p.lower == doctest::Approx(0.0));
        CHECK(p.upper == doctest::Approx(0.0));
    }
    SUBCASE("monte carlo agrees within three standard errors") {
        OrderingSource mc;
        mc.mode = OrderingMode::monte_carlo;
        mc.sample_count = 100000;
        mc.seed = 23;
        const ProbabilityInterval exact =
            payoff_probability(atm_call(), small_ladder(), exact_source());
        const ProbabilityInterval sampled = payoff_probability(atm_call(), small_ladder(), mc);
        REQUIRE(sampled.lower_se > 0.0);
        CHECK(std::abs(sampled.lower - exact.lower) < 3.0 * sampled.lower_se);
        CHECK(std::abs(sampled.upper - exact.upper) < 3.0 * sampled.upper_se);
    }
}

TEST_CASE("pairwise trading decisions") {
    auto interval = [](double lo, double hi) {
        ProbabilityInterval p;
        p.lower = lo;
        p.upper = hi;
        return p;
    };

    SUBCASE("strict dominance picks the same asset for both traders") {
        const TradingDecision d = compare_for_trade(interval(0.13, 0.15), interval(0.03, 0.04));
        CHECK(d.speculator_choice == AssetChoice::a);
        CHECK(d.hedger_choice == HedgerChoice::a);
    }
    SUBCASE("endpoint advantage without dominance moves only the speculator") {
        const TradingDecision d = compare_for_trade(interval(0.69, 0.70), interval(0.68, 0.69));
        CHECK(d.speculator_choice == AssetChoice::a);
        CHECK(d.hedger_choice == HedgerChoice::abstain);
    }
    SUBCASE("identical intervals give no signal") {
        const TradingDecision d = compare_for_trade(interval(0.69, 0.70), interval(0.69, 0.70));
        CHECK(d.speculator_choice == AssetChoice::indifferent);
        CHECK(d.hedger_choice == HedgerChoice::abstain);
    }
    SUBCASE("conflicting endpoint rules resolve to indifferent") {
        // A has the higher lower bound, B the higher upper bound
        const TradingDecision d = compare_for_trade(interval(0.50, 0.60), interval(0.40, 0.70));
        CHECK(d.speculator_choice == AssetChoice::indifferent);
        CHECK(d.hedger_choice == HedgerChoice::abstain);
    }
    SUBCASE("shared upper bound, lower bound decides") {
        const TradingDecision d = compare_for_trade(interval(0.69, 0.71), interval(0.70, 0.71));
        CHECK(d.speculator_choice == AssetChoice::b);
        CHECK(d.hedger_choice == HedgerChoice::abstain);
    }
    SUBCASE("labels") {
        CHECK(std::string(to_string(AssetChoice::a)) == "A");
        CHECK(std::string(to_string(AssetChoice::indifferent)) == "indifferent");
        CHECK(std::string(to_string(HedgerChoice::b)) == "B");
        CHECK(std::string(to_string(HedgerChoice::abstain)) == "abstain");
    }
}
