#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace npi {

/// Calendar date, ISO-8601 (YYYY-MM-DD) in text form.
struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    static Date parse(const std::string& text); // throws DataError
    std::string to_string() const;
    Date next_day() const;
};

struct Observation {
    Date date;
    double price = 0.0;
};

/// Ordered historical closing prices. Dates strictly increasing, prices
/// strictly positive, at least two observations.
class PriceSeries {
public:
    explicit PriceSeries(std::vector<Observation> observations);

    const std::vector<Observation>& observations() const { return observations_; }
    std::size_t size() const { return observations_.size(); }
    const Observation& front() const { return observations_.front(); }
    const Observation& back() const { return observations_.back(); }

    /// Observations with first.date <= date <= last.date.
    PriceSeries slice(const Date& first, const Date& last) const;

private:
    std::vector<Observation> observations_;
};

struct ColumnMap {
    std::string date = "date";
    std::string price = "close";
};

/// Parse a CSV stream with a header row. Rows are sorted by date; duplicate
/// dates, non-positive prices and unparsable fields are rejected with the
/// offending row number.
PriceSeries load_price_series(std::istream& source, const ColumnMap& columns = {});
PriceSeries load_price_series_file(const std::string& path, const ColumnMap& columns = {});

/// Per-step continuously compounded returns: ln(price[t+1] / price[t]).
std::vector<double> log_returns(const PriceSeries& series);

struct DateWindow {
    Date start;
    Date end;
};

/// Which returns populate the ladder rungs and where the boundary returns
/// r(0), r(n+1) come from. Absent windows mean "the whole series". An
/// explicit boundary_override wins over the boundary window.
struct WindowPolicy {
    std::optional<DateWindow> sampling_window;
    std::optional<DateWindow> boundary_window;
    std::optional<std::pair<double, double>> boundary_override;
};

/// Ranked observed returns r(1) <= ... <= r(n) plus boundary returns
/// r(0) <= r(1) and r(n) <= r(n+1), defining n+1 intervals
/// I_j = [r(j-1), r(j)].
class ReturnLadder {
public:
    ReturnLadder(std::vector<double> sorted_returns, double lower_boundary,
                 double upper_boundary);

    const std::vector<double>& sorted_returns() const { return sorted_returns_; }
    double lower_boundary() const { return lower_boundary_; }
    double upper_boundary() const { return upper_boundary_; }

    std::size_t rung_count() const { return sorted_returns_.size(); }       // n
    std::size_t interval_count() const { return sorted_returns_.size() + 1; } // n+1

    /// Endpoint r(j) for j in [0, n+1].
    double endpoint(std::size_t j) const;

private:
    std::vector<double> sorted_returns_;
    double lower_boundary_;
    double upper_boundary_;
};

/// Sorted returns from the sampling window; boundaries from the min/max
/// return over the boundary window unless overridden.
ReturnLadder build_ladder(const PriceSeries& series, const WindowPolicy& policy = {});

/// Audit dump: one return per row, boundary rows tagged "r0" / "rn1".
void export_ladder_csv(const ReturnLadder& ladder, std::ostream& out);

} // namespace npi
